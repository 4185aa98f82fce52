"""The free abelian case H = Z^n in degrees one and two.

gr^2(J_H) is modelled as gr^2(J_{F_n}) modulo the span of the relations
R_ij(p,q) = sum_k t_{ik,kj}(p,q).  Y is proved independent in the true
quotient and spans the relation quotient, so the two agree; the rank checks
in the test-suite and the commuting-jet evaluation confirm it numerically.

Degree-2 monomials only mix within a fixed pair of generator indices {p, q},
and so do the relations, so the reduction to Y coordinates is done
block by block.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import qlinalg
from .aut_action import TruncAuto, rho_from_linear
from .crossed import Gr12Map, action_matrix, h_add, h_neg, h_zero, _check_token, _tokens, extend_by_recursion, act_on_H, section
from .rep_algebra import AlgebraContext, GradedVec, context
from .trunc_poly import Monomial, TruncPoly, substitute, sum_polys
from .words import AutPair, Word, abelianize, parse_aut


@dataclass(frozen=True, order=True)
class YElement:
    kind: str  # "t", "u" or "v"
    p: int
    q: int
    idx: tuple[int, ...]  # (i, j, h, k) for t/u, (i, j) for v

    def label(self) -> str:
        if self.kind == "v":
            i, j = self.idx
            return f"v({i}{j};{self.p},{self.q})"
        i, j, h, k = self.idx
        return f"{self.kind}({i}{j},{h}{k};{self.p},{self.q})"

    def to_json(self) -> dict:
        return {"kind": self.kind, "indices": list(self.idx), "p": self.p, "q": self.q, "label": self.label()}


def index_set_I(m: int) -> list[tuple[int, int, int, int]]:
    pairs = [(i, j) for i in range(1, m + 1) for j in range(1, m + 1) if (i, j) != (m, m)]
    return [a + b for x, a in enumerate(pairs) for b in pairs[x + 1 :]]


def index_set_J(m: int) -> list[tuple[int, int, int, int]]:
    removed = set()
    for i in range(2, m + 1):
        for j in range(2, m + 1):
            removed.add((1, j, i, 1))
        removed.add((1, 1, i, 1))
        removed.add((1, 1, 1, i))
    return [t for t in index_set_I(m) if t not in removed]


def y_count(m: int, n: int) -> int:
    sym = m * m * (m * m - 1) // 2
    alt = (m * m - 1) * (m * m - 4) // 2
    return sym * n * (n + 1) // 2 + alt * n * (n - 1) // 2


def lambda_multiplicity_counted(m: int) -> Fraction:
    return Fraction((m * m - 1) * (m * m - 4), 2)


def lambda_multiplicity_variant(m: int) -> Fraction:
    """The alternative exponent with (m^2-1) squared, reported next to the counted one."""
    return Fraction((m * m - 1) ** 2 * (m * m - 4), 2)


class HAlgebraContext:
    def __init__(self, m: int, n: int):
        self.m, self.n = m, n
        self.free = context(m, n, 2)
        self.ring = self.free.ring
        self.basis_T2 = self.free.basis_Tk(2)
        self.Y = self._enumerate_Y()
        self.Y_index = {y: k for k, y in enumerate(self.Y)}
        self._blocks: dict[tuple[int, int], "_Block"] = {}

    def __repr__(self):
        return f"HAlgebraContext(m={self.m}, n={self.n})"

    # -- elements ----------------------------------------------------------
    def s(self, i: int, j: int, l: int) -> TruncPoly:
        return self.free.free_s(i, j, l)

    def t(self, i, j, h, k, p, q) -> TruncPoly:
        return (self.s(i, j, p) * self.s(h, k, q) - self.s(i, j, q) * self.s(h, k, p)).graded_part(2)

    def u(self, i, j, h, k, p, q) -> TruncPoly:
        if p == q:  # divided-power convention: the plain product
            return (self.s(i, j, p) * self.s(h, k, p)).graded_part(2)
        return (self.s(i, j, p) * self.s(h, k, q) + self.s(i, j, q) * self.s(h, k, p)).graded_part(2)

    def v(self, i, j, p, q) -> TruncPoly:
        return (self.s(i, j, p) * self.s(i, j, q)).graded_part(2)

    def y_poly(self, y: YElement) -> TruncPoly:
        if y.kind == "t":
            return self.t(*y.idx, y.p, y.q)
        if y.kind == "u":
            return self.u(*y.idx, y.p, y.q)
        return self.v(*y.idx, y.p, y.q)

    def _enumerate_Y(self) -> list[YElement]:
        m, n = self.m, self.n
        out = []
        for p in range(1, n + 1):
            for q in range(p + 1, n + 1):
                out += [YElement("t", p, q, idx) for idx in index_set_J(m)]
        for p in range(1, n + 1):
            for q in range(p, n + 1):
                out += [YElement("u", p, q, idx) for idx in index_set_I(m)]
        pairs = [(i, j) for i in range(1, m + 1) for j in range(1, m + 1) if (i, j) != (m, m)]
        for p in range(1, n + 1):
            for q in range(p, n + 1):
                out += [YElement("v", p, q, ij) for ij in pairs]
        return out

    def relations(self) -> list[tuple[tuple[int, int, int, int], TruncPoly]]:
        """R_ij(p,q) for all 1 <= i,j <= m and p < q, labelled (i, j, p, q)."""
        m, n = self.m, self.n
        out = []
        for p in range(1, n + 1):
            for q in range(p + 1, n + 1):
                for i in range(1, m + 1):
                    for j in range(1, m + 1):
                        r = sum_polys(self.ring, (self.t(i, k, k, j, p, q) for k in range(1, m + 1)))
                        out.append(((i, j, p, q), r))
        return out

    def relation_matrix(self) -> list[list[Fraction]]:
        return [GradedVec(2, dict(r.terms)).vector(self.basis_T2) for _, r in self.relations()]

    # -- reduction ---------------------------------------------------------
    def _pair_of(self, mono: Monomial) -> tuple[int, int]:
        ls = sorted(self.free.var_keys[v][0] for v in mono)
        return (ls[0], ls[1])

    def _block(self, pq: tuple[int, int]) -> "_Block":
        b = self._blocks.get(pq)
        if b is None:
            b = _Block(self, pq)
            self._blocks[pq] = b
        return b

    def reduce_to_Y(self, f: TruncPoly | GradedVec | dict) -> dict[YElement, Fraction]:
        """Y coordinates of the image of a degree-2 element in gr^2(J_H)."""
        if isinstance(f, TruncPoly):
            terms = f.graded_part(2).terms
        elif isinstance(f, GradedVec):
            terms = f.coords
        else:
            terms = f
        by_block: dict[tuple[int, int], dict] = {}
        for mono, c in terms.items():
            if len(mono) != 2:
                raise ValueError("reduce_to_Y expects a homogeneous degree-2 element")
            if c:
                by_block.setdefault(self._pair_of(mono), {})[mono] = c
        out: dict[YElement, Fraction] = {}
        for pq, sub in sorted(by_block.items()):
            for y, c in self._block(pq).reduce(sub).items():
                if c:
                    out[y] = c
        return out

    def y_vector(self, coords: dict[YElement, Fraction]) -> list[Fraction]:
        return [coords.get(y, Fraction(0)) for y in self.Y]

    def gr1H_basis(self) -> list[str]:
        return [f"s({i},{j};xb{l})" for (l, i, j) in self.free.var_keys]


class _Block:
    """Monomials with generator indices {p, q}, the Y elements and relations living there."""

    def __init__(self, H: HAlgebraContext, pq: tuple[int, int]):
        self.H = H
        p, q = pq
        self.monos = [mo for mo in H.basis_T2 if H._pair_of(mo) == pq]
        self.mono_index = {mo: k for k, mo in enumerate(self.monos)}
        self.ys = [y for y in H.Y if (y.p, y.q) == pq]
        rels = [r for (lab, r) in H.relations() if (lab[2], lab[3]) == pq] if p < q else []
        cols = [self._vec(H.y_poly(y)) for y in self.ys]
        rel_vecs = [self._vec(r) for r in rels]
        # keep a maximal independent subset of the relations
        if rel_vecs:
            _, piv = qlinalg.rref(qlinalg.transpose(rel_vecs))
            rel_vecs = [rel_vecs[c] for c in piv]
        self.rel_rank = len(rel_vecs)
        M = qlinalg.transpose(cols + rel_vecs)
        if len(M) != len(cols) + len(rel_vecs):
            raise AssertionError(f"block {pq}: Y plus relations is not square ({len(M)} vs {len(cols) + len(rel_vecs)})")
        try:
            self.inv = qlinalg.inverse(M)
        except qlinalg.SingularMatrix as exc:
            raise AssertionError(f"block {pq}: Y is not complementary to the relation span") from exc

    def _vec(self, f: TruncPoly) -> list[Fraction]:
        v = [Fraction(0)] * len(self.monos)
        for mo, c in f.graded_part(2).terms.items():
            v[self.mono_index[mo]] = c
        return v

    def reduce(self, terms: dict) -> dict[YElement, Fraction]:
        v = [Fraction(0)] * len(self.monos)
        for mo, c in terms.items():
            v[self.mono_index[mo]] += Fraction(c)
        x = qlinalg.matvec(self.inv, v)
        return {y: x[k] for k, y in enumerate(self.ys)}


@lru_cache(maxsize=16)
def h_context(m: int, n: int) -> HAlgebraContext:
    return HAlgebraContext(m, n)


def relations_R(H: HAlgebraContext) -> list[GradedVec]:
    return [GradedVec(2, dict(r.terms)) for _, r in H.relations()]


def basis_Y(H: HAlgebraContext) -> list[YElement]:
    return list(H.Y)


def gr2H_dim(H: HAlgebraContext) -> int:
    return len(H.Y)


def relation_rank(H: HAlgebraContext) -> int:
    return qlinalg.rank(H.relation_matrix())


# --- theta_H ---------------------------------------------------------------------


@dataclass
class HMap:
    """A map gr^1(J_H) -> gr^2(J_H): column per T1-bar generator, Y coordinates."""

    H: HAlgebraContext
    columns: dict[int, dict[YElement, Fraction]]

    def col(self, v: int) -> dict[YElement, Fraction]:
        return {y: c for y, c in self.columns.get(v, {}).items() if c}

    def __eq__(self, other):
        if not isinstance(other, HMap):
            return NotImplemented
        return all(self.col(v) == other.col(v) for v in range(self.H.free.nvars))

    def __add__(self, other):
        out = {}
        for v in range(self.H.free.nvars):
            acc = dict(self.col(v))
            for y, c in other.col(v).items():
                acc[y] = acc.get(y, 0) + c
            out[v] = {y: c for y, c in acc.items() if c}
        return HMap(self.H, out)

    def is_zero(self) -> bool:
        return all(not self.col(v) for v in range(self.H.free.nvars))

    def to_json(self) -> dict:
        names = self.H.gr1H_basis()
        return {
            names[v]: {y.label(): str(c) for y, c in sorted(self.col(v).items())}
            for v in range(self.H.free.nvars)
            if self.col(v)
        }


def canonical_lift(vec: Sequence[int]) -> Word:
    """x_1^{a_1} ... x_n^{a_n}, the chosen free-group representative of an element of H."""
    n = len(vec)
    return Word(n, tuple((l + 1, 1 if a > 0 else -1) for l, a in enumerate(vec) for _ in range(abs(a))))


def rho3_H(H: HAlgebraContext, a: AutPair) -> TruncAuto:
    """Left action on J_H/J_H^3 computed from abelianized images, before reduction mod R."""
    c2 = H.free
    images = {}
    lifts = [canonical_lift(abelianize(w)) for w in a.bwd.images]
    for v, (l, i, j) in enumerate(c2.var_keys):
        images[v] = c2.s_entry(lifts[l - 1], i, j)
    return TruncAuto(c2.ring, images)


def theta_H(H: HAlgebraContext, a: AutPair) -> HMap:
    r3 = rho3_H(H, a)
    beta = r3.linear_matrix()
    comp = r3 @ section(r3.ring, qlinalg.inverse(beta))
    cols = {}
    for v in range(H.free.nvars):
        img = comp.images[v]
        if img.graded_part(1) != H.ring.var(v):
            raise AssertionError("linear part mismatch in theta_H")
        cols[v] = H.reduce_to_Y(img.graded_part(2))
    return HMap(H, cols)


def project_gr12(H: HAlgebraContext, t: Gr12Map) -> HMap:
    """Push a free-group Gr12Map down to gr^2(J_H)."""
    return HMap(H, {v: H.reduce_to_Y(t.col(v)) for v in range(H.free.nvars)})


def act_on_hmap(H: HAlgebraContext, a: AutPair, phi: HMap) -> HMap:
    """(a . phi)(v) = a . phi(a^{-1} . v), using the linear action of a on gr^1 and Y."""
    c2 = H.free
    A = action_matrix(a)  # x_l -> sum_p A[p][l] x_p
    Ainv = qlinalg.as_matrix([[x for x in row] for row in _abelian(a.fwd)])
    ring = c2.ring
    # linear maps on T1 variables induced by A (s_ij(x_l) -> sum_p A[p][l] s_ij(x_p))
    fwd = {v: ring.from_terms({(c2.vid(i, j, p),): A[p - 1][l - 1] for p in range(1, c2.n + 1)})
           for v, (l, i, j) in enumerate(c2.var_keys)}
    ys = {y: H.y_poly(y) for y in H.Y}
    out = {}
    for v, (l, i, j) in enumerate(c2.var_keys):
        acc = ring.zero()
        for p in range(1, c2.n + 1):
            c = Ainv[p - 1][l - 1]
            if c:
                for y, d in phi.col(c2.vid(i, j, p)).items():
                    acc = acc + ys[y].scale(c * d)
        out[v] = H.reduce_to_Y(substitute(acc, fwd).graded_part(2))
    return HMap(H, out)


def _abelian(e):
    from .words import abelian_matrix

    return abelian_matrix(e)


def project_fH(t: HMap, squares: str = "divided") -> tuple[Fraction, ...]:
    H, n = t.H, t.H.n
    out = [Fraction(0)] * n
    for l in range(1, n + 1):
        col = t.col(H.free.vid(1, 1, l))
        for p in range(1, n + 1):
            for q in range(p, n + 1):
                c = col.get(YElement("v", p, q, (1, 1)), Fraction(0))
                if not c:
                    continue
                if p == q:
                    if p == l:
                        out[p - 1] += c * (2 if squares == "doubled" else 1)
                else:
                    if p == l:
                        out[q - 1] += c
                    if q == l:
                        out[p - 1] += c
    return tuple(out)


def fH_generator(H: HAlgebraContext, name: str, squares: str = "divided"):
    _check_token(name)
    return project_fH(theta_H(H, parse_aut(name, H.n)), squares)


def fH_value(H: HAlgebraContext, w, squares: str = "divided"):
    toks = _tokens(w)
    if not toks:
        return h_zero(H.n)
    cache: dict[str, tuple] = {}

    def gv(g):
        if g not in cache:
            cache[g] = fH_generator(H, g, squares)
        return cache[g]

    return extend_by_recursion(toks, H.n, gv, act_on_H, h_add, h_neg)


def theta_H_S_display(H: HAlgebraContext) -> dict[YElement, Fraction]:
    """-v(11;1,1) - sum_{k>=2} u(1k,k1;1,1)."""
    out = {YElement("v", 1, 1, (1, 1)): Fraction(-1)}
    for k in range(2, H.m + 1):
        out[YElement("u", 1, 1, (1, k, k, 1))] = Fraction(-1)
    return out


def rho_linear(H: HAlgebraContext, beta) -> TruncAuto:
    return rho_from_linear(H.ring.with_cap(2), beta)

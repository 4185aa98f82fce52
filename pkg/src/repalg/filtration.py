"""The filtration D(k), the homomorphisms eta_k and the classical tau_1.

Membership is tested on generators only.  That suffices: s_sigma obeys
s_sigma(fg) = s_sigma(f) g^sigma + f s_sigma(g), so if every s_sigma(s_ij(x_l))
lies in J^{k+1} then s_sigma(J) does too.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .aut_action import AlgebraAction
from .rep_algebra import AlgebraContext, GradedVec, context
from .trunc_poly import TruncPoly, sum_polys
from .words import AutPair, Word, abelianize, inv, mul


class NotInFiltration(ValueError):
    pass


def _ctx_for(ctx: AlgebraContext, k: int) -> AlgebraContext:
    if ctx.cap < k + 1:
        raise ValueError(f"need cap >= {k + 1} to test D({k}); context has cap {ctx.cap}")
    return context(ctx.m, ctx.n, k + 1)


def generator_differences(ctx: AlgebraContext, a: AutPair) -> dict[int, TruncPoly]:
    act = AlgebraAction(ctx, a.fwd)
    return {v: act.image(v) - ctx.ring.var(v) for v in range(ctx.nvars)}


def is_in_D(ctx: AlgebraContext, a: AutPair, k: int) -> bool:
    c = _ctx_for(ctx, k)
    act = AlgebraAction(c, a.fwd)
    return all((act.image(v) - c.ring.var(v)).min_degree() >= k + 1 for v in range(c.nvars))


@dataclass
class EtaMatrix:
    """eta_k(a): column for each T_1 generator, rows in T_{k+1}."""

    k: int
    ctx: AlgebraContext
    columns: dict[int, GradedVec]

    @property
    def row_basis(self):
        return self.ctx.basis_Tk(self.k + 1)

    def matrix(self) -> list[list[Fraction]]:
        rows = self.row_basis
        cols = [self.columns[v].vector(rows) for v in range(self.ctx.nvars)]
        return [list(r) for r in zip(*cols)]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.columns.values())

    def __eq__(self, other):
        if not isinstance(other, EtaMatrix):
            return NotImplemented
        return self.k == other.k and all(
            _clean(self.columns[v]) == _clean(other.columns[v]) for v in range(self.ctx.nvars)
        )

    def to_json(self) -> dict:
        ring = self.ctx.ring
        return {
            "k": self.k,
            "columns": {
                ring.names[v]: {ring.mono_str(mo): str(c) for mo, c in sorted(col.coords.items()) if c}
                for v, col in self.columns.items()
            },
        }


def _clean(g: GradedVec) -> dict:
    return {k: v for k, v in g.coords.items() if v}


def eta_k(ctx: AlgebraContext, a: AutPair, k: int) -> EtaMatrix:
    c = _ctx_for(ctx, k)
    diffs = generator_differences(c, a)
    if any(d.min_degree() < k + 1 for d in diffs.values()):
        raise NotInFiltration(f"{a} is not in D({k})")
    cols = {v: GradedVec(k + 1, dict(d.graded_part(k + 1).terms)) for v, d in diffs.items()}
    return EtaMatrix(k, c, cols)


# --- closed forms -------------------------------------------------------------


def bracket_form(ctx: AlgebraContext, i: int, j: int, p: int, q: int) -> TruncPoly:
    """Sum_k s_ik(x_p) s_kj(x_q) - s_ik(x_q) s_kj(x_p), degree-2 part in normal form."""
    c2 = context(ctx.m, ctx.n, 2)
    fs = c2.free_s
    terms = []
    for k in range(1, ctx.m + 1):
        terms.append(fs(i, k, p) * fs(k, j, q))
        terms.append(-(fs(i, k, q) * fs(k, j, p)))
    return sum_polys(c2.ring, terms).graded_part(2)


def eta1_closed_form_Kij(ctx: AlgebraContext, i: int, j: int) -> dict[int, dict]:
    """The expected eta_1(K_ij) columns: s_pq(x_i) -> bracket(p,q; x_i, x_j)."""
    out = {}
    for v, (l, p, q) in enumerate(ctx.var_keys):
        out[v] = dict(bracket_form(ctx, p, q, i, j).terms) if l == i else {}
    return out


def eta1_closed_form_Kijl(ctx: AlgebraContext, i: int, j: int, l_: int) -> dict[int, dict]:
    out = {}
    for v, (l, p, q) in enumerate(ctx.var_keys):
        out[v] = dict(bracket_form(ctx, p, q, j, l_).terms) if l == i else {}
    return out


# --- tau_1 via the Magnus expansion ------------------------------------------


def _nc_mul(a: dict, b: dict, cap: int = 2) -> dict:
    out: dict = {}
    for u, c in a.items():
        for w, d in b.items():
            if len(u) + len(w) <= cap:
                out[u + w] = out.get(u + w, 0) + c * d
    return {k: v for k, v in out.items() if v}


def magnus_expansion(w: Word, cap: int = 2) -> dict[tuple[int, ...], int]:
    """Noncommutative Magnus expansion x -> 1 + X, x^-1 -> 1 - X + X^2 - ..., truncated."""
    out = {(): 1}
    for g, s in w.letters:
        if s == 1:
            f = {(): 1, (g,): 1}
        else:
            f = {(g,) * d: (-1) ** d for d in range(cap + 1)}
        out = _nc_mul(out, f, cap)
    return out


def wedge_pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(1, n + 1), 2))


@dataclass
class Tau1Value:
    n: int
    matrix: list[list[Fraction]]  # rows: wedge pairs (p<q), cols: generators

    def column(self, l: int) -> dict[tuple[int, int], Fraction]:
        return {pq: self.matrix[r][l - 1] for r, pq in enumerate(wedge_pairs(self.n)) if self.matrix[r][l - 1]}

    def is_zero(self) -> bool:
        return all(not x for row in self.matrix for x in row)


def is_IA(a: AutPair) -> bool:
    n = a.n
    return all(abelianize(a.fwd.images[l - 1]) == tuple(int(t == l) for t in range(1, n + 1)) for l in range(1, n + 1))


def tau1(a: AutPair) -> Tau1Value:
    if not is_IA(a):
        raise ValueError(f"{a} is not an IA-automorphism")
    n = a.n
    pairs = wedge_pairs(n)
    M = [[Fraction(0)] * n for _ in pairs]
    for l in range(1, n + 1):
        x = Word(n, ((l, 1),))
        exp = magnus_expansion(mul(inv(x), a.fwd.images[l - 1]))
        for r, (p, q) in enumerate(pairs):
            M[r][l - 1] = Fraction(exp.get((p, q), 0) - exp.get((q, p), 0), 2)
    return Tau1Value(n, M)


def eta1_from_tau1(ctx: AlgebraContext, t: Tau1Value) -> dict[int, dict]:
    """Predicted eta_1 columns from a tau_1 value: s_ij(x_l) -> sum c_pq bracket(i,j; x_p, x_q)."""
    pairs = wedge_pairs(ctx.n)
    out = {}
    for v, (l, i, j) in enumerate(ctx.var_keys):
        acc: dict = {}
        for r, (p, q) in enumerate(pairs):
            c = t.matrix[r][l - 1]
            if c:
                for mo, d in bracket_form(ctx, i, j, p, q).terms.items():
                    acc[mo] = acc.get(mo, 0) + c * d
        out[v] = {k: x for k, x in acc.items() if x}
    return out

"""The crossed homomorphism theta: Aut F_n -> Hom(gr^1, gr^2) and its projections.

theta(a) compares the honest action of a on J/J^3 with the lift of its linear
part through the monomial section.  Everything is in the left convention:
f(st) = f(s) + s . f(t).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import qlinalg
from .aut_action import TruncAuto, left_action_on_hom, rho_from_linear, rho_k
from .filtration import wedge_pairs
from .rep_algebra import AlgebraContext, GradedVec, context
from .trunc_poly import PolyRing, TruncPoly
from .words import AutPair, WordError, abelian_matrix, aut_identity, compose_aut, parse_aut


@dataclass
class Gr12Map:
    """A map gr^1 -> gr^2 stored column-wise as degree-2 polynomials of a cap-2 ring."""

    ctx: AlgebraContext
    columns: dict[int, TruncPoly]

    def __eq__(self, other):
        if not isinstance(other, Gr12Map):
            return NotImplemented
        return all(self.col(v) == other.col(v) for v in range(self.ctx.nvars))

    def col(self, v: int) -> TruncPoly:
        p = self.columns.get(v)
        return p.graded_part(2) if p is not None else self.ctx.ring.zero()

    def __add__(self, other: "Gr12Map") -> "Gr12Map":
        return Gr12Map(self.ctx, {v: self.col(v) + other.col(v) for v in range(self.ctx.nvars)})

    def __neg__(self) -> "Gr12Map":
        return Gr12Map(self.ctx, {v: -self.col(v) for v in range(self.ctx.nvars)})

    def __sub__(self, other: "Gr12Map") -> "Gr12Map":
        return self + (-other)

    def is_zero(self) -> bool:
        return all(self.col(v).is_zero() for v in range(self.ctx.nvars))

    def graded(self) -> dict[int, GradedVec]:
        return {v: GradedVec(2, dict(self.col(v).terms)) for v in range(self.ctx.nvars)}

    def matrix(self) -> list[list[Fraction]]:
        rows = self.ctx.basis_Tk(2)
        cols = [GradedVec(2, dict(self.col(v).terms)).vector(rows) for v in range(self.ctx.nvars)]
        return [list(r) for r in zip(*cols)]

    def to_json(self) -> dict:
        names = self.ctx.ring.names
        return {names[v]: self.col(v).to_text() for v in range(self.ctx.nvars) if not self.col(v).is_zero()}


def zero_map(ctx: AlgebraContext) -> Gr12Map:
    return Gr12Map(ctx, {})


def _ctx2(ctx: AlgebraContext) -> AlgebraContext:
    return context(ctx.m, ctx.n, 2)


# --- section and theta --------------------------------------------------------


def section(ring2: PolyRing, beta: Sequence[Sequence]) -> TruncAuto:
    """Monomial-lift section: generators go to the linear forms of beta, no degree-2 part."""
    beta = qlinalg.as_matrix(beta)
    if qlinalg.rank(beta) != len(beta):
        raise qlinalg.SingularMatrix("section needs an invertible linear part")
    if ring2.cap != 2:
        ring2 = ring2.with_cap(2)
    return rho_from_linear(ring2, beta)


def theta(ctx: AlgebraContext, a: AutPair) -> Gr12Map:
    c2 = _ctx2(ctx)
    r3 = rho_k(c2, a, 3)
    beta = r3.linear_matrix()
    lift_inv = section(r3.ring, qlinalg.inverse(beta))
    comp = r3 @ lift_inv
    cols = {}
    for v in range(c2.nvars):
        img = comp.images[v]
        if img.graded_part(1) != c2.ring.var(v):
            raise AssertionError("linear part of rho_3 composed with the section is not the identity")
        cols[v] = img.graded_part(2)
    return Gr12Map(c2, cols)


def act_on_gr12(ctx: AlgebraContext, a: AutPair, phi: Gr12Map) -> Gr12Map:
    c2 = _ctx2(ctx)
    return Gr12Map(c2, left_action_on_hom(c2, a, {v: phi.col(v) for v in range(c2.nvars)}))


# --- generic cocycle machinery -------------------------------------------------


def verify_cocycle(
    f: Callable[[AutPair], object],
    s: AutPair,
    t: AutPair,
    act: Callable[[AutPair, object], object],
    add: Callable[[object, object], object] = lambda x, y: x + y,
) -> bool:
    """Check f(st) = f(s) + s . f(t), with st meaning s acts first on the right."""
    return f(compose_aut(s, t)) == add(f(s), act(s, f(t)))


def extend_by_recursion(
    tokens: Sequence[str],
    n: int,
    gen_value: Callable[[str], object],
    act: Callable[[AutPair, object], object],
    add: Callable[[object, object], object],
    neg: Callable[[object], object],
):
    """Value of a crossed homomorphism on g_1 ... g_k from its generator values.

    f(g rest) = f(g) + g . f(rest);  f(g^-1) = -(g^-1 . f(g)).
    """
    value = None
    for tok in reversed(tokens):
        g = parse_aut(tok, n)
        base = tok[:-3] if tok.endswith("^-1") else tok
        fg = gen_value(base)
        if tok.endswith("^-1"):
            fg = neg(act(g, fg))
        value = fg if value is None else add(fg, act(g, value))
    return value


# --- H-valued and Lambda-valued data -----------------------------------------


def action_matrix(a: AutPair) -> list[list[Fraction]]:
    """Matrix of a acting on H from the left: x_l -> abelianized x_l^{a^-1}."""
    return qlinalg.as_matrix(abelian_matrix(a.bwd))


def wedge_matrix(A: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(A)
    pairs = wedge_pairs(n)
    return [
        [A[r - 1][p - 1] * A[s - 1][q - 1] - A[s - 1][p - 1] * A[r - 1][q - 1] for (p, q) in pairs]
        for (r, s) in pairs
    ]


def act_on_H(a: AutPair, v: Sequence) -> tuple[Fraction, ...]:
    return tuple(qlinalg.matvec(action_matrix(a), v))


def act_on_lambda(a: AutPair, L: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    """a . L = Lambda^2(A) L A^{-1} for L in Hom(H, Lambda^2 H), A the matrix of a on H."""
    A = action_matrix(a)
    A_inv = qlinalg.as_matrix(abelian_matrix(a.fwd))
    out = qlinalg.matmul(qlinalg.matmul(wedge_matrix(A), qlinalg.as_matrix(L)), A_inv)
    return tuple(tuple(r) for r in out)


def h_zero(n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(0) for _ in range(n))


def lambda_zero(n: int) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(0) for _ in range(n)) for _ in wedge_pairs(n))


def h_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def h_neg(u):
    return tuple(-a for a in u)


def lam_add(L, M):
    return tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(L, M))


def lam_neg(L):
    return tuple(tuple(-a for a in r) for r in L)


# --- projections ---------------------------------------------------------------


def _s11_columns(t: Gr12Map) -> list[TruncPoly]:
    """p_1: the images of s_11(x_l), l = 1..n."""
    return [t.col(t.ctx.vid(1, 1, l)) for l in range(1, t.ctx.n + 1)]


def project_f1(t: Gr12Map) -> tuple[tuple[Fraction, ...], ...]:
    ctx, n = t.ctx, t.ctx.n
    pairs = wedge_pairs(n)
    L = [[Fraction(0)] * n for _ in pairs]
    for l, poly in enumerate(_s11_columns(t)):
        c = {(i, j): poly.coeff((ctx.vid(1, 2, i), ctx.vid(2, 1, j))) for i in range(1, n + 1) for j in range(1, n + 1)}
        for r, (p, q) in enumerate(pairs):
            L[r][l] = c[(p, q)] - c[(q, p)]
    return tuple(tuple(r) for r in L)


def sym_coeffs(t: Gr12Map, l_index: int) -> dict[tuple[int, int], Fraction]:
    """q_2 on column l: coefficient of s_11(x_i)s_11(x_j), i <= j."""
    ctx, n = t.ctx, t.ctx.n
    poly = _s11_columns(t)[l_index]
    return {(i, j): poly.coeff((ctx.vid(1, 1, i), ctx.vid(1, 1, j))) for i in range(1, n + 1) for j in range(i, n + 1)}


def project_f2(t: Gr12Map, squares: str = "divided") -> tuple[Fraction, ...]:
    """q_4 q_3 q_2 p_1.  ``squares='divided'`` sends x_i^2 to x_i (x) x_i; ``'doubled'`` to twice that."""
    if squares not in ("divided", "doubled"):
        raise ValueError("squares must be 'divided' or 'doubled'")
    n = t.ctx.n
    out = [Fraction(0)] * n
    for l in range(n):
        for (i, j), c in sym_coeffs(t, l).items():
            if not c:
                continue
            # tensor x_i (x) x_j (+ x_j (x) x_i), contract first slot with x_{l+1}^*
            if i == j:
                if i == l + 1:
                    out[i - 1] += c * (2 if squares == "doubled" else 1)
            else:
                if i == l + 1:
                    out[j - 1] += c
                if j == l + 1:
                    out[i - 1] += c
    return tuple(out)


# --- generator tables ----------------------------------------------------------

NIELSEN = ("P", "Q", "S", "U")


def _check_token(name: str) -> None:
    if name not in NIELSEN:
        raise WordError(f"unknown Nielsen generator {name!r}")


def fK_generator(name: str, n: int):
    _check_token(name)
    L = [list(r) for r in lambda_zero(n)]
    if name == "U":
        L[wedge_pairs(n).index((1, 2))][0] = Fraction(-1)
    return tuple(tuple(r) for r in L)


def fM_generator(name: str, n: int):
    _check_token(name)
    v = list(h_zero(n))
    if name == "S":
        v[0] = Fraction(-1)
    return tuple(v)


def _tokens(w: str | Sequence[str]) -> list[str]:
    toks = w.split() if isinstance(w, str) else list(w)
    for t in toks:
        _check_token(t[:-3] if t.endswith("^-1") else t)
    return toks


def fK_value(w, n: int):
    toks = _tokens(w)
    if not toks:
        return lambda_zero(n)
    return extend_by_recursion(toks, n, lambda g: fK_generator(g, n), act_on_lambda, lam_add, lam_neg)


def fM_value(w, n: int):
    toks = _tokens(w)
    if not toks:
        return h_zero(n)
    return extend_by_recursion(toks, n, lambda g: fM_generator(g, n), act_on_H, h_add, h_neg)


def delta_x(a: AutPair) -> tuple[Fraction, ...]:
    """a . x - x with x = x_1 + ... + x_n."""
    n = a.n
    x = [Fraction(1)] * n
    return tuple(y - 1 for y in act_on_H(a, x))


def f2_generator(ctx: AlgebraContext, name: str, squares: str = "divided"):
    _check_token(name)
    return project_f2(theta(ctx, parse_aut(name, ctx.n)), squares)


def f2_value(ctx: AlgebraContext, w, squares: str = "divided"):
    """f_2 on a Nielsen word, extended from the projected generator values by the cocycle recursion."""
    toks = _tokens(w)
    if not toks:
        return h_zero(ctx.n)
    cache: dict[str, tuple] = {}

    def gv(g):
        if g not in cache:
            cache[g] = f2_generator(ctx, g, squares)
        return cache[g]

    return extend_by_recursion(toks, ctx.n, gv, act_on_H, h_add, h_neg)


def f1_value(ctx: AlgebraContext, w):
    toks = _tokens(w)
    if not toks:
        return lambda_zero(ctx.n)
    return extend_by_recursion(
        toks, ctx.n, lambda g: project_f1(theta(ctx, parse_aut(g, ctx.n))), act_on_lambda, lam_add, lam_neg
    )


# --- closed forms used by the checks -------------------------------------------


def theta_S_closed_form(ctx: AlgebraContext) -> Gr12Map:
    c2 = _ctx2(ctx)
    fs = c2.free_s
    cols = {}
    for v, (l, i, j) in enumerate(c2.var_keys):
        if l == 1:
            cols[v] = -sum((fs(i, k, 1) * fs(k, j, 1) for k in range(1, c2.m + 1)), c2.ring.zero()).graded_part(2)
    return Gr12Map(c2, cols)


def theta_U_closed_form(ctx: AlgebraContext) -> Gr12Map:
    """theta(U)(s_ij(x_1)) = sum_k s_ik(x_2)s_kj(x_2) - sum_k s_ik(x_1)s_kj(x_2)."""
    c2 = _ctx2(ctx)
    fs = c2.free_s
    cols = {}
    for v, (l, i, j) in enumerate(c2.var_keys):
        if l == 1:
            acc = c2.ring.zero()
            for k in range(1, c2.m + 1):
                acc = acc + fs(i, k, 2) * fs(k, j, 2) - fs(i, k, 1) * fs(k, j, 2)
            cols[v] = acc.graded_part(2)
    return Gr12Map(c2, cols)


def theta_U_variant_form(ctx: AlgebraContext) -> Gr12Map:
    """The alternative sign pattern -sum_k (s_ik(x_2)s_kj(x_2) + s_ik(x_1)s_kj(x_2)); kept for comparison only."""
    c2 = _ctx2(ctx)
    fs = c2.free_s
    cols = {}
    for v, (l, i, j) in enumerate(c2.var_keys):
        if l == 1:
            acc = c2.ring.zero()
            for k in range(1, c2.m + 1):
                acc = acc - fs(i, k, 2) * fs(k, j, 2) - fs(i, k, 1) * fs(k, j, 2)
            cols[v] = acc.graded_part(2)
    return Gr12Map(c2, cols)


def eta_as_gr12(ctx: AlgebraContext, columns: dict[int, dict]) -> Gr12Map:
    c2 = _ctx2(ctx)
    return Gr12Map(c2, {v: c2.ring.from_terms(col) for v, col in columns.items()})


def identity_aut(n: int) -> AutPair:
    return aut_identity(n)

"""Evaluation of algebra elements at SL(m) representations over jet rings.

A jet representation sends each generator x_l to an m x m matrix with entries
in a truncated power-series ring Q[z]/(z)^{cap+1}, congruent to the identity
mod (z) and of determinant exactly 1.  The matrices are built as products of
elementary and diagonal factors, so their inverses are available factor by
factor without any adjugate; this keeps the oracle independent of the
normal-form code it is meant to check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from . import qlinalg
from .rep_algebra import AlgebraContext, PolyMatrix, mat_identity, mat_mul
from .trunc_poly import CapMismatch, PolyRing, TruncPoly, inverse_of_unit, substitute
from .words import Word


def jet_ring(n: int, params_per_generator: int, cap: int) -> PolyRing:
    names = [f"z{l}_{r}" for l in range(1, n + 1) for r in range(1, params_per_generator + 1)]
    return PolyRing(names, cap, "jet")


@dataclass
class JetRep:
    ring: PolyRing
    mats: list[PolyMatrix]  # x_l -> mats[l-1]
    invs: list[PolyMatrix]  # exact inverses, built factor by factor

    @property
    def n(self) -> int:
        return len(self.mats)

    @property
    def m(self) -> int:
        return len(self.mats[0])

    def word_product(self, w: Word) -> PolyMatrix:
        out = mat_identity(self.ring, self.m)
        for g, s in w.letters:
            out = mat_mul(out, self.mats[g - 1] if s == 1 else self.invs[g - 1])
        return out


def _scalar_mat(ring: PolyRing, A: Sequence[Sequence]) -> PolyMatrix:
    return [[ring.const(x) for x in row] for row in A]


def _elementary(ring: PolyRing, m: int, i: int, j: int, z: TruncPoly) -> PolyMatrix:
    M = mat_identity(ring, m)
    M[i][j] = z
    return M


def _diag(ring: PolyRing, entries: Sequence[TruncPoly]) -> PolyMatrix:
    m = len(entries)
    M = [[ring.zero() for _ in range(m)] for _ in range(m)]
    for k, e in enumerate(entries):
        M[k][k] = e
    return M


def _linear_form(ring: PolyRing, params: Sequence[int], rng: random.Random, lo=-5, hi=5) -> TruncPoly:
    return ring.from_terms({(p,): rng.randint(lo, hi) for p in params})


def random_jet_rep(ctx: AlgebraContext, seed: int, params_per_generator: int = 1, cap: int | None = None) -> JetRep:
    """Generic SL(m) jets: prod of (I + F_ij(linear)) over off-diagonal (i,j), times a unit diagonal."""
    cap = ctx.cap if cap is None else cap
    ring = jet_ring(ctx.n, params_per_generator, cap)
    rng = random.Random(seed)
    m = ctx.m
    mats, invs = [], []
    for l in range(ctx.n):
        params = [l * params_per_generator + r for r in range(params_per_generator)]
        factors, inv_factors = [], []
        for i in range(m):
            for j in range(m):
                if i != j:
                    z = _linear_form(ring, params, rng)
                    factors.append(_elementary(ring, m, i, j, z))
                    inv_factors.append(_elementary(ring, m, i, j, -z))
        diag = [1 + _linear_form(ring, params, rng) for _ in range(m - 1)]
        last = ring.one()
        for d in diag:
            last = last * d
        diag.append(inverse_of_unit(last))
        factors.append(_diag(ring, diag))
        inv_factors.append(_diag(ring, [inverse_of_unit(d) for d in diag]))
        M = mat_identity(ring, m)
        for F in factors:
            M = mat_mul(M, F)
        Minv = mat_identity(ring, m)
        for F in reversed(inv_factors):
            Minv = mat_mul(Minv, F)
        mats.append(M)
        invs.append(Minv)
    return JetRep(ring, mats, invs)


def _random_invertible(m: int, rng: random.Random) -> list[list[Fraction]]:
    while True:
        B = [[Fraction(rng.randint(-4, 4)) for _ in range(m)] for _ in range(m)]
        if qlinalg.rank(B) == m:
            return B


def commuting_jet_rep(ctx: AlgebraContext, seed: int, cap: int | None = None) -> JetRep:
    """x_l -> B diag(1+z_l1, ..., 1+z_l,m-1, inverse of their product) B^-1 with one shared B."""
    cap = ctx.cap if cap is None else cap
    m, n = ctx.m, ctx.n
    P = m - 1
    ring = jet_ring(n, P, cap)
    rng = random.Random(seed)
    B = _random_invertible(m, rng)
    Bi = qlinalg.inverse(B)
    Bm, Bim = _scalar_mat(ring, B), _scalar_mat(ring, Bi)
    mats, invs = [], []
    for l in range(n):
        diag = [1 + ring.var(l * P + r) for r in range(P)]
        last = ring.one()
        for d in diag:
            last = last * d
        diag.append(inverse_of_unit(last))
        D = _diag(ring, diag)
        Dinv = _diag(ring, [inverse_of_unit(d) for d in diag])
        mats.append(mat_mul(mat_mul(Bm, D), Bim))
        invs.append(mat_mul(mat_mul(Bm, Dinv), Bim))
    return JetRep(ring, mats, invs)


def trivial_jet_rep(ctx: AlgebraContext) -> JetRep:
    ring = jet_ring(ctx.n, 1, ctx.cap)
    I = mat_identity(ring, ctx.m)
    return JetRep(ring, [I] * ctx.n, [I] * ctx.n)


def _var_images(ctx: AlgebraContext, rho: JetRep, cap: int) -> dict[int, TruncPoly]:
    out = {}
    for v, (l, i, j) in enumerate(ctx.var_keys):
        p = rho.mats[l - 1][i - 1][j - 1] - int(i == j)
        out[v] = p if p.ring.cap == cap else p.with_cap(cap)
    return out


def evaluate(f: TruncPoly, ctx: AlgebraContext, rho: JetRep, _cache: dict | None = None) -> TruncPoly:
    """Ring homomorphism s_ij(x_l) -> rho(x_l)_ij - delta_ij."""
    if rho.ring.cap < f.ring.cap:
        raise CapMismatch(f"jet cap {rho.ring.cap} below polynomial cap {f.ring.cap}")
    target = rho.ring.with_cap(f.ring.cap)
    images = _var_images(ctx, rho, f.ring.cap) if _cache is None else _cache
    return substitute(f, images, target=target)


def mat_entry_minus_delta(M: PolyMatrix, i: int, j: int) -> TruncPoly:
    return M[i - 1][j - 1] - int(i == j)


def det_jet(M: PolyMatrix) -> TruncPoly:
    from .rep_algebra import det

    return det(M)


# --- rank certification ---------------------------------------------------------


def _rows_from(evals: list[TruncPoly], k: int, ring: PolyRing) -> list[list[Fraction]]:
    """One row per degree-k parameter monomial: its coefficient in each evaluated column."""
    monos = sorted({mo for e in evals for mo in e.terms if len(mo) == k})
    return [[e.terms.get(mo, Fraction(0)) for e in evals] for mo in monos]


def independence_rank(
    ctx: AlgebraContext,
    polys: Sequence[TruncPoly],
    k: int,
    reps: Sequence[JetRep],
) -> int:
    """Rank of the degree-k evaluation functionals on span(polys) over the given jets."""
    tracker = qlinalg.ModularRank(len(polys))
    for rho in reps:
        cap_k = rho.ring.with_cap(k)
        images = {v: p.with_cap(k) for v, p in _var_images(ctx, rho, rho.ring.cap).items()}
        evals = [substitute(f.with_cap(k), images, target=cap_k).graded_part(k) for f in polys]
        for row in _rows_from(evals, k, cap_k):
            tracker.add(row)
            if tracker.full():
                return tracker.rank
    return tracker.exact_rank()


def full_rank_with_retry(ctx, polys, k, make_rep, count: int, seed: int, attempts: int = 3) -> tuple[bool, int]:
    """Try up to ``attempts`` fresh seed batches; returns (full, best rank)."""
    best = 0
    for a in range(attempts):
        reps = (make_rep(ctx, seed + 1000 * a + t) for t in range(count))
        r = independence_rank(ctx, polys, k, reps)
        best = max(best, r)
        if r == len(polys):
            return True, r
    return False, best


def monomial_polys(ctx: AlgebraContext, k: int) -> list[TruncPoly]:
    return [ctx.ring.monomial(mo) for mo in ctx.basis_Tk(k)]


def param_monomials(ring: PolyRing, k: int):
    return list(combinations_with_replacement(range(ring.nvars), k))

"""The truncated SL(m)-representation algebra of F_n in normal form.

Free variables are s_ij(x_l) for (i, j) != (m, m); the diagonal corner
s_mm(x_l) is eliminated through the determinant condition.  Variables are
numbered in (l, i, j) lexicographic order.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, prod
from typing import Callable, Sequence

from .trunc_poly import INF_DEGREE, Monomial, PolyRing, TruncPoly, inverse_of_unit, sum_polys
from .words import ContextMismatch, Word, gen

PolyMatrix = list[list[TruncPoly]]


def s_name(i: int, j: int, l: int, bar: bool = False) -> str:
    return f"s({i},{j};{'xb' if bar else 'x'}{l})"


# --- matrices over a truncated ring ----------------------------------------


def mat_identity(ring: PolyRing, m: int) -> PolyMatrix:
    return [[ring.const(int(i == j)) for j in range(m)] for i in range(m)]


def mat_mul(A: PolyMatrix, B: PolyMatrix) -> PolyMatrix:
    m = len(A)
    ring = A[0][0].ring
    return [[sum_polys(ring, (A[i][k] * B[k][j] for k in range(m))) for j in range(m)] for i in range(m)]


def mat_equal(A: PolyMatrix, B: PolyMatrix) -> bool:
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def _minor_table(M: PolyMatrix) -> Callable[[tuple[int, ...], tuple[int, ...]], TruncPoly]:
    """Memoized determinant of the submatrix on the given rows/cols (Laplace on first row)."""
    ring = M[0][0].ring

    @lru_cache(maxsize=None)
    def minor(rows: tuple[int, ...], cols: tuple[int, ...]) -> TruncPoly:
        if not rows:
            return ring.one()
        r0, rest = rows[0], rows[1:]
        terms = []
        for k, c in enumerate(cols):
            a = M[r0][c]
            if a.is_zero():
                continue
            sub = minor(rest, cols[:k] + cols[k + 1 :])
            terms.append(a * sub if k % 2 == 0 else -(a * sub))
        return sum_polys(ring, terms)

    return minor


def det(M: PolyMatrix) -> TruncPoly:
    m = len(M)
    return _minor_table(M)(tuple(range(m)), tuple(range(m)))


def adjugate(M: PolyMatrix) -> PolyMatrix:
    """Transpose of the cofactor matrix, so that M * adj(M) = det(M) * I."""
    m = len(M)
    if m == 1:
        return [[M[0][0].ring.one()]]
    minor = _minor_table(M)
    full = tuple(range(m))
    adj = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            c = minor(full[:i] + full[i + 1 :], full[:j] + full[j + 1 :])
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    return adj


# --- the algebra context ---------------------------------------------------


@dataclass(frozen=True)
class GradedVec:
    """Coordinates of a gr^k element in the monomial basis T_k."""

    degree: int
    coords: dict = field(default_factory=dict)

    def vector(self, basis: Sequence[Monomial]) -> list[Fraction]:
        extra = set(self.coords) - set(basis)
        if extra:
            raise ValueError(f"coordinates outside the basis: {sorted(extra)[:3]}")
        return [self.coords.get(b, Fraction(0)) for b in basis]

    def is_zero(self) -> bool:
        return not any(self.coords.values())


class AlgebraContext:
    """(m, n, cap) plus cached generator matrices and basis enumerations.

    ``eliminate`` picks which diagonal corner is solved for: ``m`` (the normal
    form used everywhere) or ``1`` (the alternate basis T_k').
    """

    def __init__(self, m: int, n: int, cap: int = 3, eliminate: int | None = None):
        if m < 2 or n < 1 or cap < 1:
            raise ValueError(f"need m >= 2, n >= 1, cap >= 1 (got m={m}, n={n}, cap={cap})")
        self.m, self.n, self.cap = m, n, cap
        self.eliminated = m if eliminate is None else eliminate
        if self.eliminated not in (1, m):
            raise ValueError("can only eliminate s_11 or s_mm")
        e = self.eliminated
        self.pairs = [(i, j) for i in range(1, m + 1) for j in range(1, m + 1) if (i, j) != (e, e)]
        self.var_keys = [(l, i, j) for l in range(1, n + 1) for (i, j) in self.pairs]
        self.var_index = {key: k for k, key in enumerate(self.var_keys)}
        self.ring = PolyRing([s_name(i, j, l) for (l, i, j) in self.var_keys], cap, "algebra")
        self._lock = threading.Lock()
        self._gen_mats: dict[tuple[int, int], PolyMatrix] = {}
        self._word_cache: dict[tuple, PolyMatrix] = {}
        # eager: generator matrices and their adjugates
        for l in range(1, n + 1):
            M = self._build_generator_matrix(l)
            self._gen_mats[(l, 1)] = M
            self._gen_mats[(l, -1)] = adjugate(M)

    def __repr__(self):
        return f"AlgebraContext(m={self.m}, n={self.n}, cap={self.cap})"

    @property
    def nvars(self) -> int:
        return len(self.var_keys)

    def with_cap(self, cap: int) -> "AlgebraContext":
        return AlgebraContext(self.m, self.n, cap, self.eliminated)

    def check_word(self, w: Word) -> None:
        if w.n != self.n:
            raise ContextMismatch(f"word over F_{w.n} used in a context with n={self.n}")

    # variables
    def var(self, i: int, j: int, l: int) -> TruncPoly:
        return self.ring.var(self.var_index[(l, i, j)])

    def vid(self, i: int, j: int, l: int) -> int:
        return self.var_index[(l, i, j)]

    def free_s(self, i: int, j: int, l: int) -> TruncPoly:
        """s_ij(x_l) as an element of the algebra, the corner given by its normal form."""
        if (i, j) == (self.eliminated, self.eliminated):
            return self.corner_polynomial(l)
        return self.var(i, j, l)

    # generator matrices
    def _build_generator_matrix(self, l: int) -> PolyMatrix:
        m, ring, e = self.m, self.ring, self.eliminated - 1
        M = [[ring.const(int(i == j)) + (self.var(i + 1, j + 1, l) if (i, j) != (e, e) else 0)
              for j in range(m)] for i in range(m)]
        # det = a_ee * C + D', a_ee = 1 + u
        others = tuple(k for k in range(m) if k != e)
        minor = _minor_table(M)
        C = minor(others, others)
        M[e][e] = ring.zero()
        Dp = det(M)
        u = (1 - Dp) * inverse_of_unit(C) - 1
        M[e][e] = 1 + u
        return M

    def corner_polynomial(self, l: int) -> TruncPoly:
        e = self.eliminated - 1
        return self._gen_mats[(l, 1)][e][e] - 1

    def generator_matrix(self, l: int) -> PolyMatrix:
        return self._gen_mats[(l, 1)]

    def word_matrix(self, w: Word) -> PolyMatrix:
        self.check_word(w)
        key = w.letters
        got = self._word_cache.get(key)
        if got is not None:
            return got
        if not key:
            res = mat_identity(self.ring, self.m)
        elif len(key) == 1:
            res = self._gen_mats[key[0]]
        else:
            half = len(key) // 2
            res = mat_mul(self.word_matrix(Word(self.n, key[:half])), self.word_matrix(Word(self.n, key[half:])))
        with self._lock:
            if len(self._word_cache) > 4096:
                self._word_cache.clear()
            self._word_cache[key] = res
        return res

    def s_entry(self, w: Word, i: int, j: int) -> TruncPoly:
        return self.word_matrix(w)[i - 1][j - 1] - int(i == j)

    # graded bases
    def basis_Tk(self, k: int) -> list[Monomial]:
        if k > self.cap:
            raise ValueError(f"k={k} exceeds cap={self.cap}")
        return _monomials(self.nvars, k)

    def coords(self, f: TruncPoly, k: int) -> GradedVec:
        if f.min_degree() < k:
            raise ValueError(f"element has min degree {f.min_degree()} < {k}; not in J^{k}")
        return GradedVec(k, dict(f.graded_part(k).terms))

    def in_Jk(self, f: TruncPoly, k: int) -> bool:
        return f.min_degree() >= k

    def mono_label(self, mono: Monomial) -> str:
        return self.ring.mono_str(mono)


@lru_cache(maxsize=None)
def _monomials(nvars: int, k: int) -> list[Monomial]:
    return list(combinations_with_replacement(range(nvars), k))


# module-level functional aliases -----------------------------------------


def smm_polynomial(ctx: AlgebraContext, l: int) -> TruncPoly:
    if ctx.eliminated != ctx.m:
        raise ValueError("context does not eliminate s_mm")
    return ctx.corner_polynomial(l)


def generator_matrix(ctx: AlgebraContext, l: int) -> PolyMatrix:
    return ctx.generator_matrix(l)


def word_matrix(ctx: AlgebraContext, w: Word) -> PolyMatrix:
    return ctx.word_matrix(w)


def s_entry(ctx: AlgebraContext, w: Word, i: int, j: int) -> TruncPoly:
    return ctx.s_entry(w, i, j)


def basis_Tk(ctx: AlgebraContext, k: int) -> list[Monomial]:
    return ctx.basis_Tk(k)


def basis_Tk_prime(ctx: AlgebraContext, k: int) -> list[tuple[tuple[int, int, int], ...]]:
    """Degree-k monomials in the s_ij(x_l) with (i, j) != (1, 1), as tuples of (l, i, j) keys."""
    if k > ctx.cap:
        raise ValueError(f"k={k} exceeds cap={ctx.cap}")
    keys = [(l, i, j) for l in range(1, ctx.n + 1) for i in range(1, ctx.m + 1)
            for j in range(1, ctx.m + 1) if (i, j) != (1, 1)]
    return list(combinations_with_replacement(keys, k))


def prime_change_of_basis(ctx: AlgebraContext, k: int) -> list[list[Fraction]]:
    """Columns: T_k' monomials re-expanded in the s_mm-normal form, read in T_k coordinates."""
    basis = ctx.basis_Tk(k)
    cols = []
    for mono in basis_Tk_prime(ctx, k):
        f = prod((ctx.free_s(i, j, l) for (l, i, j) in mono), start=ctx.ring.one())
        cols.append(ctx.coords(f, k).vector(basis))
    return [list(r) for r in zip(*cols)]


def coords(ctx: AlgebraContext, f: TruncPoly, k: int) -> GradedVec:
    return ctx.coords(f, k)


def in_Jk(ctx: AlgebraContext, f: TruncPoly, k: int) -> bool:
    return ctx.in_Jk(f, k)


def dim_grk(m: int, n: int, k: int) -> int:
    return comb((m * m - 1) * n + k - 1, k)


def dim_grk_symmetric_sum(m: int, n: int, k: int) -> int:
    """Dimension of the direct sum over (e_ij), sum e_ij = k, of tensor products of S^{e_ij} H."""
    parts = m * m - 1

    def go(slots: int, left: int) -> int:
        if slots == 1:
            return comb(n + left - 1, left)
        return sum(comb(n + e - 1, e) * go(slots - 1, left - e) for e in range(left + 1))

    return go(parts, k)


__all__ = [
    "AlgebraContext", "GradedVec", "PolyMatrix", "INF_DEGREE", "adjugate", "basis_Tk", "basis_Tk_prime",
    "coords", "det", "dim_grk", "dim_grk_symmetric_sum", "gen", "generator_matrix", "in_Jk", "mat_equal",
    "mat_identity", "mat_mul", "prime_change_of_basis", "s_entry", "smm_polynomial", "word_matrix",
]


@lru_cache(maxsize=64)
def context(m: int, n: int, cap: int) -> AlgebraContext:
    """Shared, cached context; contexts are immutable apart from internal memo tables."""
    return AlgebraContext(m, n, cap)

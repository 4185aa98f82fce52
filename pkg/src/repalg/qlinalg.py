"""Dense exact linear algebra over Q.

Matrices are plain lists of rows of ``Fraction`` (ints are accepted on input).
Rank uses fraction-free Bareiss elimination on an integer matrix obtained by
clearing row denominators; everything else uses normalized Gauss-Jordan.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

QMatrix = list[list[Fraction]]


class SingularMatrix(ArithmeticError):
    pass


def as_matrix(rows: Sequence[Sequence]) -> QMatrix:
    out = [[Fraction(x) for x in r] for r in rows]
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def zeros(r: int, c: int) -> QMatrix:
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n: int) -> QMatrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def ncols(M: QMatrix, default: int = 0) -> int:
    return len(M[0]) if M else default


def transpose(M: QMatrix) -> QMatrix:
    return [list(c) for c in zip(*M)]


def matmul(A: QMatrix, B: QMatrix) -> QMatrix:
    if A and len(A[0]) != len(B):
        raise ValueError("shape mismatch in matmul")
    Bt = transpose(B) if B else []
    return [[sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in Bt] for row in A]


def matvec(A: QMatrix, v: Sequence) -> list[Fraction]:
    return [sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in A]


def rref(M: Sequence[Sequence]) -> tuple[QMatrix, list[int]]:
    """Reduced row echelon form and the (increasing) list of pivot columns."""
    R = as_matrix(M)
    rows, cols = len(R), ncols(R)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        piv = R[r][c]
        if piv != 1:
            R[r] = [x / piv for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def _integer_rows(M: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in M:
        fr = [Fraction(x) for x in row]
        d = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * d) for x in fr])
    return out


def rank(M: Sequence[Sequence]) -> int:
    """Exact rank via Bareiss fraction-free elimination."""
    A = _integer_rows(M)
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    r, prev = 0, 1
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pv = A[r][c]
        for i in range(r + 1, rows):
            a = A[i][c]
            A[i] = [(pv * x - a * y) // prev for x, y in zip(A[i], A[r])]
        prev = pv
        r += 1
    return r


def kernel_basis(M: Sequence[Sequence], cols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right null space, one vector per free column."""
    R, pivots = rref(M)
    n = ncols(R, cols or 0)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(M: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One solution of M x = b, or None when the system is inconsistent."""
    A = as_matrix(M)
    n = ncols(A)
    aug = [row + [Fraction(x)] for row, x in zip(A, b)]
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return x


def inverse(M: Sequence[Sequence]) -> QMatrix:
    A = as_matrix(M)
    n = len(A)
    if any(len(r) != n for r in A):
        raise SingularMatrix("inverse needs a square matrix")
    R, pivots = rref([row + e for row, e in zip(A, identity(n))])
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in R]


def is_zero(M: QMatrix) -> bool:
    return all(not x for row in M for x in row)


class IncrementalRank:
    """Rank of a growing set of row vectors; rows are reduced as they arrive."""

    def __init__(self, cols: int):
        self.cols = cols
        self._rows: dict[int, list[Fraction]] = {}  # pivot col -> normalized row

    @property
    def rank(self) -> int:
        return len(self._rows)

    def full(self) -> bool:
        return self.rank == self.cols

    def add(self, v: Sequence) -> bool:
        """Add a row; return True if it increased the rank."""
        v = [Fraction(x) for x in v]
        for c, row in self._rows.items():
            if v[c]:
                f = v[c]
                v = [a - f * b for a, b in zip(v, row)]
        p = next((c for c, x in enumerate(v) if x), None)
        if p is None:
            return False
        piv = v[p]
        v = [x / piv for x in v]
        for c, row in self._rows.items():
            if row[p]:
                f = row[p]
                self._rows[c] = [a - f * b for a, b in zip(row, v)]
        self._rows[p] = v
        return True


MODULUS = (1 << 61) - 1


class ModularRank:
    """Incremental rank modulo a large prime.

    Full rank mod p certifies full rank over Q (rows are scaled to integers
    first, and reduction mod p can only lose rank).  A deficient result is
    inconclusive; callers fall back to exact arithmetic.
    """

    def __init__(self, cols: int, p: int = MODULUS):
        self.cols, self.p = cols, p
        self._rows: dict[int, list[int]] = {}
        self.exact_rows: list[list[Fraction]] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def full(self) -> bool:
        return self.rank == self.cols

    def add(self, v: Sequence) -> bool:
        p = self.p
        fr = [Fraction(x) for x in v]
        self.exact_rows.append(fr)
        d = lcm(*(x.denominator for x in fr)) if fr else 1
        w = [int(x * d) % p for x in fr]
        for c, row in self._rows.items():
            if w[c]:
                f = w[c]
                w = [(a - f * b) % p for a, b in zip(w, row)]
        piv = next((c for c, x in enumerate(w) if x), None)
        if piv is None:
            return False
        inv = pow(w[piv], p - 2, p)
        self._rows[piv] = [(x * inv) % p for x in w]
        return True

    def exact_rank(self) -> int:
        return rank(self.exact_rows) if self.exact_rows else 0

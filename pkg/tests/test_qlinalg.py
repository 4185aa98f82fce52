from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from repalg import qlinalg as ql

small = st.integers(-4, 4)
mats = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
)


def test_rref_examples():
    R, piv = ql.rref(ql.identity(3))
    assert R == ql.identity(3) and piv == [0, 1, 2]
    assert ql.rref([[1, 1]]) == ([[1, 1]], [0])
    R, piv = ql.rref([[1, 2], [2, 4]])
    assert R == [[1, 2], [0, 0]] and ql.rank([[1, 2], [2, 4]]) == 1


def test_solve_kernel_inverse_examples():
    assert ql.solve([[2]], [1]) == [F(1, 2)]
    assert ql.solve([[1], [1]], [0, 1]) is None
    (k,) = ql.kernel_basis([[1, 1]])
    assert k[0] == -k[1] != 0
    assert ql.inverse([[1, 1], [0, 1]]) == [[1, -1], [0, 1]]
    with pytest.raises(ql.SingularMatrix):
        ql.inverse([[1, 2], [2, 4]])


@settings(max_examples=60)
@given(mats)
def test_rank_nullity(M):
    cols = len(M[0])
    r = ql.rank(M)
    assert r == len(ql.rref(M)[1])
    K = ql.kernel_basis(M)
    assert r + len(K) == cols
    for v in K:
        assert all(x == 0 for x in ql.matvec(ql.as_matrix(M), v))


@settings(max_examples=60)
@given(mats, st.lists(small, min_size=5, max_size=5))
def test_solve_reproduces(M, xs):
    x = xs[: len(M[0])]
    b = ql.matvec(ql.as_matrix(M), x)
    sol = ql.solve(M, b)
    assert sol is not None and ql.matvec(ql.as_matrix(M), sol) == b


@settings(max_examples=60)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse_exact(M):
    if ql.rank(M) < len(M):
        with pytest.raises(ql.SingularMatrix):
            ql.inverse(M)
        return
    assert ql.matmul(ql.as_matrix(M), ql.inverse(M)) == ql.identity(len(M))


@settings(max_examples=40)
@given(mats)
def test_incremental_and_modular_rank_agree(M):
    inc, mod = ql.IncrementalRank(len(M[0])), ql.ModularRank(len(M[0]))
    for row in M:
        inc.add(row)
        mod.add(row)
    assert inc.rank == mod.rank == ql.rank(M)


def test_rank_with_fractions():
    assert ql.rank([[F(1, 2), F(1, 3)], [F(3, 2), 1]]) == 1

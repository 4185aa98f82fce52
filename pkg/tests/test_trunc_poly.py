from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from repalg.trunc_poly import (
    INF_DEGREE, CapMismatch, NotInIdeal, PolyRing, inverse_of_unit, mul, substitute,
)

R2 = PolyRing(["u", "v", "w"], 2)
R4 = PolyRing(["a", "b", "c"], 4)


def polys(ring, min_deg=0):
    mono = st.lists(st.integers(0, ring.nvars - 1), min_size=min_deg, max_size=ring.cap).map(lambda t: tuple(sorted(t)))
    coeff = st.fractions(min_value=-3, max_value=3, max_denominator=4)
    return st.dictionaries(mono, coeff, max_size=5).map(ring.from_terms)


def test_basic_examples():
    u, v, w = (R2.var(i) for i in range(3))
    assert (1 + u) * (1 - u) == 1 - u * u
    assert (u * u) * u == 0
    f = u + v * w
    assert f + f.scale(-1) == 0
    assert str(-u + v * w) == "-1 u + 1 v*w"


def test_cap_mismatch():
    with pytest.raises(CapMismatch):
        R2.var(0) + R2.with_cap(3).var(0)
    with pytest.raises(CapMismatch):
        R2.var(0) * PolyRing(["u", "v", "w"], 2, "jet").var(0)


def test_substitute_examples():
    u, v, w = (R2.var(i) for i in range(3))
    assert substitute(u * u, {0: v + w}) == v * v + 2 * v * w + w * w
    assert substitute(u, {0: R2.zero()}) == 0
    assert substitute(u * v, {0: u + w * w}) == u * v
    with pytest.raises(NotInIdeal):
        substitute(u, {0: 1 + v})


def test_inverse_of_unit_examples():
    u, v, _ = (R2.var(i) for i in range(3))
    assert inverse_of_unit(1 + u) == 1 - u + u * u
    assert inverse_of_unit(R2.const(2)) == F(1, 2)
    R1 = R2.with_cap(1)
    assert inverse_of_unit(1 + R1.var(0) + R1.var(1)) == 1 - R1.var(0) - R1.var(1)
    with pytest.raises(ZeroDivisionError):
        inverse_of_unit(u)


def test_grading():
    u = R2.var(0)
    assert (u + u * u).min_degree() == 1
    assert (u + u * u).graded_part(2) == u * u
    assert R2.zero().graded_part(2) == 0
    assert R2.zero().min_degree() == INF_DEGREE


@settings(max_examples=50)
@given(polys(R4), polys(R4), polys(R4))
def test_ring_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f


@settings(max_examples=50)
@given(polys(R4, 1), polys(R4, 1))
def test_filtration_compatible(f, g):
    d = f.min_degree() + g.min_degree()
    if d <= R4.cap:
        assert mul(f, g).min_degree() >= d


@settings(max_examples=40)
@given(polys(R4), polys(R4), st.lists(polys(R4, 1), min_size=3, max_size=3))
def test_substitute_is_homomorphism(f, g, imgs):
    sub = dict(enumerate(imgs))
    assert substitute(f * g, sub) == substitute(f, sub) * substitute(g, sub)
    assert substitute(f + g, sub) == substitute(f, sub) + substitute(g, sub)


@settings(max_examples=40)
@given(polys(R4))
def test_inverse_roundtrip(f):
    f = f - f.constant_term() + 3
    assert f * inverse_of_unit(f) == 1

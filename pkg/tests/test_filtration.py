import pytest

from repalg.filtration import (
    NotInFiltration, eta1_closed_form_Kij, eta1_closed_form_Kijl, eta1_from_tau1, eta_k, is_IA, is_in_D,
    magnus_expansion, tau1,
)
from repalg.rep_algebra import context
from repalg.words import aut_identity, commutator, compose_aut, gen, magnus_Kij, magnus_Kijl, nielsen


def cols(e):
    return {v: {k: x for k, x in c.coords.items() if x} for v, c in e.columns.items()}


def nz(d):
    return {v: x for v, x in d.items() if x}


@pytest.fixture(scope="module")
def ctx():
    return context(2, 3, 3)


def test_membership(ctx):
    assert is_in_D(ctx, aut_identity(3), 2)
    assert is_in_D(ctx, magnus_Kij(1, 2, 3), 1)
    assert not is_in_D(ctx, magnus_Kij(1, 2, 3), 2)
    assert not is_in_D(ctx, nielsen("U", 3), 1)
    with pytest.raises(NotInFiltration):
        eta_k(ctx, nielsen("S", 3), 1)
    with pytest.raises(ValueError):
        is_in_D(context(2, 3, 2), aut_identity(3), 2)


@pytest.mark.parametrize("i,j", [(1, 2), (2, 1), (3, 1)])
def test_eta1_Kij_closed_form(ctx, i, j):
    assert nz(cols(eta_k(ctx, magnus_Kij(i, j, 3), 1))) == nz(eta1_closed_form_Kij(ctx, i, j))


def test_eta1_Kijl_closed_form(ctx):
    assert nz(cols(eta_k(ctx, magnus_Kijl(1, 2, 3, 3), 1))) == nz(eta1_closed_form_Kijl(ctx, 1, 2, 3))


def test_eta1_additive(ctx):
    a, b = magnus_Kij(1, 2, 3), magnus_Kijl(2, 1, 3, 3)
    ea, eb, eab = (cols(eta_k(ctx, x, 1)) for x in (a, b, compose_aut(a, b)))
    summed = {v: {k: ea[v].get(k, 0) + eb[v].get(k, 0) for k in ea[v].keys() | eb[v].keys()} for v in ea}
    assert nz({v: {k: x for k, x in d.items() if x} for v, d in summed.items()}) == nz(eab)


def test_eta2_of_commutator_of_IA(ctx):
    a = compose_aut(compose_aut(magnus_Kij(1, 2, 3), magnus_Kij(2, 3, 3)),
                    compose_aut(magnus_Kij(1, 2, 3).inverse(), magnus_Kij(2, 3, 3).inverse()))
    assert is_in_D(ctx, a, 2)
    assert eta_k(ctx, a, 2).k == 2


def test_magnus_expansion():
    e = magnus_expansion(commutator(gen(3, 1), gen(3, 2)))
    assert e == {(): 1, (1, 2): 1, (2, 1): -1}
    assert magnus_expansion(gen(3, 1)) == {(): 1, (1,): 1, (1, 1): 0} or magnus_expansion(gen(3, 1))[(1,)] == 1


def test_tau1_examples():
    t = tau1(magnus_Kij(1, 2, 3))
    assert t.column(1) == {(1, 2): 1}
    assert t.column(2) == {}
    assert tau1(magnus_Kijl(1, 2, 3, 3)).column(1) == {(2, 3): 1}
    assert tau1(aut_identity(3)).is_zero()
    assert not is_IA(nielsen("U", 3))
    with pytest.raises(ValueError):
        tau1(nielsen("U", 3))


@pytest.mark.parametrize("a", [magnus_Kij(1, 2, 3), magnus_Kijl(3, 1, 2, 3),
                               compose_aut(magnus_Kij(2, 1, 3), magnus_Kij(3, 2, 3))])
def test_eta1_agrees_with_tau1(ctx, a):
    assert nz(eta1_from_tau1(ctx, tau1(a))) == nz(cols(eta_k(ctx, a, 1)))

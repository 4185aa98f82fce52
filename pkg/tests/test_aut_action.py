import pytest

from repalg.aut_action import (
    AlgebraAction, act_left, act_right, identity_auto, rho_from_linear, rho_k, s_sigma,
)
from repalg.rep_algebra import context
from repalg.trunc_poly import NotInIdeal
from repalg.words import aut_identity, compose_aut, gen, magnus_Kij, mul, nielsen, parse_aut

AUTS = ["P", "Q", "S", "U", "K12", "K123", "U S^-1 K23"]


@pytest.fixture(scope="module")
def ctx():
    return context(2, 3, 3)


def test_identity_acts_trivially(ctx):
    f = ctx.var(1, 2, 1) * ctx.var(2, 1, 3) + ctx.var(1, 1, 2)
    assert act_right(ctx, aut_identity(3), f) == f
    assert rho_k(ctx, aut_identity(3), 3).is_identity()


@pytest.mark.parametrize("name", AUTS)
def test_action_respects_relation(ctx, name):
    a = parse_aut(name, 3)
    for l in (1, 2, 3):
        assert act_right(ctx, a, ctx.corner_polynomial(l)) == ctx.s_entry(a.fwd.images[l - 1], 2, 2)


def test_right_action_composes(ctx):
    a, b = nielsen("P", 3), nielsen("U", 3)
    f = ctx.var(1, 2, 1) * ctx.var(2, 1, 2)
    assert act_right(ctx, b, act_right(ctx, a, f)) == act_right(ctx, compose_aut(a, b), f)


def test_left_action_composes(ctx):
    # the group product ab = compose_aut(a, b) applies a to words first
    a, b = nielsen("P", 3), nielsen("U", 3)
    f = ctx.var(1, 1, 1) + ctx.var(1, 2, 1) * ctx.var(2, 1, 2)
    assert act_left(ctx, a, act_left(ctx, b, f)) == act_left(ctx, compose_aut(a, b), f)
    assert act_left(ctx, a.inverse(), act_left(ctx, a, f)) == f


@pytest.mark.parametrize("pair", [("P", "U"), ("U", "K12"), ("S", "Q")])
def test_rho_is_homomorphism(ctx, pair):
    a, b = (parse_aut(t, 3) for t in pair)
    assert rho_k(ctx, compose_aut(a, b), 3) == rho_k(ctx, a, 3) @ rho_k(ctx, b, 3)
    assert (rho_k(ctx, a, 3) @ rho_k(ctx, a.inverse(), 3)).is_identity()


def test_rho2_is_linear(ctx):
    r = rho_k(ctx, nielsen("U", 3), 2)
    assert rho_from_linear(r.ring, r.linear_matrix()) == r
    assert identity_auto(r.ring).linear_matrix() == [[int(i == j) for j in range(ctx.nvars)] for i in range(ctx.nvars)]


def test_rho_k_bounds(ctx):
    with pytest.raises(ValueError):
        rho_k(ctx, nielsen("U", 3), 1)
    with pytest.raises(ValueError):
        rho_k(ctx, nielsen("U", 3), 5)


def test_s_sigma(ctx):
    a = magnus_Kij(1, 2, 3)
    f, g = ctx.var(1, 2, 1), ctx.var(2, 1, 2)
    lhs = s_sigma(ctx, a, f * g)
    rhs = s_sigma(ctx, a, f) * act_right(ctx, a, g) + f * s_sigma(ctx, a, g)
    assert lhs == rhs
    assert s_sigma(ctx, a, f).min_degree() >= 2
    with pytest.raises(NotInIdeal):
        s_sigma(ctx, a, ctx.ring.one())


def test_action_memo_matches_direct(ctx):
    U = nielsen("U", 3)
    act = AlgebraAction(ctx, U)
    assert act.image(ctx.vid(1, 2, 1)) == ctx.s_entry(mul(gen(3, 1), gen(3, 2)), 1, 2)

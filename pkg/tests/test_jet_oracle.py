import pytest

from repalg.abelian import h_context
from repalg.jet_oracle import (
    commuting_jet_rep, det_jet, evaluate, full_rank_with_retry, independence_rank, mat_entry_minus_delta,
    monomial_polys, random_jet_rep, trivial_jet_rep,
)
from repalg.rep_algebra import context, mat_equal, mat_identity, mat_mul
from repalg.trunc_poly import CapMismatch
from repalg.words import Word, commutator, gen, parse_word

WORDS = ["x1", "x1^-1 x2", "[x1,x2]", "x2 x1 x2^-1 x1^-1 x1"]


@pytest.mark.parametrize("m", [2, 3])
def test_jets_are_special_linear(m):
    ctx = context(m, 2, 3)
    for rho in (random_jet_rep(ctx, 5), commuting_jet_rep(ctx, 5)):
        for M, Mi in zip(rho.mats, rho.invs):
            assert det_jet(M) == 1
            assert mat_equal(mat_mul(M, Mi), mat_identity(rho.ring, m))


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("w", WORDS)
def test_normal_form_matches_jets(m, w):
    ctx = context(m, 2, 3)
    word = parse_word(w, 2)
    rho = random_jet_rep(ctx, 11, params_per_generator=2)
    M = rho.word_product(word)
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            assert evaluate(ctx.s_entry(word, i, j), ctx, rho) == mat_entry_minus_delta(M, i, j)


def test_commuting_jets_kill_commutators():
    ctx = context(2, 2, 3)
    rho = commuting_jet_rep(ctx, 3)
    c = commutator(gen(2, 1), gen(2, 2))
    assert all(evaluate(ctx.s_entry(c, i, j), ctx, rho) == 0 for i in (1, 2) for j in (1, 2))


def test_trivial_rep_kills_ideal():
    ctx = context(2, 2, 2)
    assert evaluate(ctx.var(1, 2, 1) + ctx.var(2, 1, 2), ctx, trivial_jet_rep(ctx)) == 0


def test_cap_check():
    ctx = context(2, 2, 3)
    rho = random_jet_rep(context(2, 2, 2), 0)
    with pytest.raises(CapMismatch):
        evaluate(ctx.var(1, 1, 1), ctx, rho)


@pytest.mark.parametrize("m,n,k", [(2, 1, 2), (2, 2, 2), (2, 1, 3), (3, 1, 2)])
def test_monomials_independent_on_jets(m, n, k):
    ctx = context(m, n, k)
    polys = monomial_polys(ctx, k)
    full, r = full_rank_with_retry(ctx, polys, k, lambda c, s: random_jet_rep(c, s, params_per_generator=m * m),
                                   count=4, seed=0)
    assert full and r == len(polys)


def test_dependent_family_detected():
    ctx = context(2, 1, 2)
    p = monomial_polys(ctx, 2)
    reps = [random_jet_rep(ctx, s, params_per_generator=4) for s in range(3)]
    assert independence_rank(ctx, [p[0], p[1], p[0] + p[1]], 2, reps) == 2


def test_Y_independent_under_commuting_jets():
    H = h_context(2, 2)
    polys = [H.y_poly(y) for y in H.Y]
    full, r = full_rank_with_retry(H.free, polys, 2, commuting_jet_rep, count=6, seed=1)
    assert full, r


def test_relations_vanish_on_commuting_jets():
    H = h_context(3, 2)
    rho = commuting_jet_rep(H.free, 2)
    assert all(evaluate(r, H.free, rho).graded_part(2) == 0 for _, r in H.relations())


def test_word_product_identity():
    ctx = context(2, 2, 2)
    rho = random_jet_rep(ctx, 1)
    assert mat_equal(rho.word_product(Word(2, ())), mat_identity(rho.ring, 2))

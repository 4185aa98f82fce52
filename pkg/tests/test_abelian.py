import pytest

from repalg.abelian import (
    HMap, YElement, act_on_hmap, basis_Y, canonical_lift, fH_generator, fH_value, gr2H_dim, h_context,
    index_set_I, index_set_J, lambda_multiplicity_counted, lambda_multiplicity_variant, project_gr12, relation_rank,
    relations_R, theta_H, theta_H_S_display, y_count,
)
from repalg.crossed import delta_x, theta
from repalg.rep_algebra import context, dim_grk
from repalg.words import Word, compose_aut, nielsen, parse_aut


@pytest.fixture(scope="module")
def H():
    return h_context(2, 3)


@pytest.mark.parametrize("m,n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
def test_Y_counts(m, n):
    H = h_context(m, n)
    assert len(basis_Y(H)) == y_count(m, n) == gr2H_dim(H)
    assert y_count(m, n) == dim_grk(m, n, 2) - relation_rank(H)


def test_index_sets():
    assert len(index_set_I(2)) == 3
    assert index_set_J(2) == []
    assert len(index_set_J(3)) == (9 - 1) * (9 - 4) // 2
    assert lambda_multiplicity_counted(3) == 20
    assert lambda_multiplicity_variant(3) == 160


def test_relations_are_antisymmetric_forms(H):
    rels = relations_R(H)
    assert len(rels) == 4 * 3
    for r in rels:
        assert H.reduce_to_Y(r) == {}


def test_Y_elements_reduce_to_themselves(H):
    for y in H.Y:
        assert H.reduce_to_Y(H.y_poly(y)) == {y: 1}


def test_labels():
    assert YElement("u", 1, 2, (1, 2, 2, 1)).label() == "u(12,21;1,2)"
    assert YElement("v", 1, 1, (1, 1)).label() == "v(11;1,1)"
    assert YElement("t", 1, 2, (1, 2, 2, 1)).to_json()["kind"] == "t"


def test_canonical_lift():
    assert canonical_lift((2, 0, -1)) == Word(3, ((1, 1), (1, 1), (3, -1)))
    assert canonical_lift((0, 0)).is_identity()


@pytest.mark.parametrize("name", ["P", "Q", "S", "U", "K12", "K123", "U S^-1 P"])
def test_free_theta_descends(H, name):
    a = parse_aut(name, 3)
    assert project_gr12(H, theta(context(2, 3, 3), a)) == theta_H(H, a)


def test_theta_H_S_display(H):
    assert theta_H(H, nielsen("S", 3)).col(H.free.vid(1, 1, 1)) == theta_H_S_display(H)


def test_theta_H_S_display_m3():
    H3 = h_context(3, 2)
    assert theta_H(H3, nielsen("S", 2)).col(H3.free.vid(1, 1, 1)) == theta_H_S_display(H3)


@pytest.mark.parametrize("pair", [("U", "S"), ("P", "U^-1"), ("S Q", "U")])
def test_theta_H_cocycle(H, pair):
    s, t = (parse_aut(x, 3) for x in pair)
    assert theta_H(H, compose_aut(s, t)) == theta_H(H, s) + act_on_hmap(H, s, theta_H(H, t))


def test_fH_table(H):
    assert [fH_generator(H, g) for g in "PQSU"] == [(0, 0, 0), (0, 0, 0), (-1, 0, 0), (0, -1, 0)]


def test_fH_doubled_is_delta(H):
    for w in ["U S", "S^-1 U P", "Q U^-1 S"]:
        assert fH_value(H, w, "doubled") == delta_x(parse_aut(w, 3))


def test_hmap_json(H):
    t = theta_H(H, nielsen("S", 3))
    js = t.to_json()
    assert js["s(1,1;xb1)"] == {"u(12,21;1,1)": "-1", "v(11;1,1)": "-1"}
    assert (t + t).col(H.free.vid(1, 1, 1))[YElement("v", 1, 1, (1, 1))] == -2
    assert HMap(H, {}).is_zero()

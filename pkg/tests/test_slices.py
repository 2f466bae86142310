from __future__ import annotations

import pytest
import sympy

from occ.clans import flag_dimension, orbit_dimension, parse_clan
from occ.groebner import (Ideal, apply_map, ideal_contains, ideal_dimension, ideal_equal, ideal_member,
                          jacobian)
from occ.polycore import PolyMatrix
from occ.slices import (MAIN_CLAN, MAIN_PAIRS, RankCondition, ideal_J1, ideal_Y, ideal_Y_alternate,
                        ideal_Z, ideal_ZKS, ideal_ZKS_literal, ks_embedding_check, ks_embedding_map,
                        phi_map, rank_condition_matrix, slice_chart, main_conditions,
                        wyser_yong_ideal, y_matrices)
from occ.braden import v_eps

from oracles import GOLDEN


@pytest.fixture(scope="module")
def chart():
    return slice_chart(MAIN_CLAN, 101)


def test_slice_matrix_is_golden(chart):
    assert chart.coordinates == ("x_1", "x_2", "x_3", "x_4", "y_1", "y_2", "y_3", "y_4")
    assert chart.matrix == PolyMatrix.parse(chart.ring, GOLDEN["SLICE"])
    assert chart.at_origin() == chart.representative


@pytest.mark.parametrize("i, j", MAIN_PAIRS)
def test_pair_matrices_are_golden(chart, i, j):
    m = rank_condition_matrix(chart, RankCondition("pair", i, j))
    assert m == PolyMatrix.parse(chart.ring, GOLDEN[f"M{i}{j}"])
    assert RankCondition("pair", i, j).minor_size(8) == min(8, i + j)


def to_sympy_matrix(m: PolyMatrix):
    return sympy.Matrix([[sympy.sympify(str(e.format()).replace("^", "**")) for e in r] for r in m.rows])


def test_corner_determinants_against_sympy():
    ch = slice_chart(MAIN_CLAN, 0)
    x1, x2, x3, x4, y1, y2, y3, y4 = sympy.symbols("x_1 x_2 x_3 x_4 y_1 y_2 y_3 y_4")
    full = to_sympy_matrix(ch.matrix)
    nw = rank_condition_matrix(ch, RankCondition("corner-NW")).determinant()
    sw = rank_condition_matrix(ch, RankCondition("corner-SW")).determinant()
    assert sympy.expand(sympy.sympify(nw.format().replace("^", "**")) - full[:4, :4].det()) == 0
    assert sympy.expand(sympy.sympify(sw.format().replace("^", "**")) - full[4:, :4].det()) == 0
    assert sympy.expand(full[:4, :4].det() - 4 * (x1 * x4 - x2 * x3)) == 0
    assert sympy.expand(full[4:, :4].det() + 4 * (y1 * y4 - y2 * y3)) == 0


@pytest.mark.parametrize("char", [101, 0])
def test_full_preset_equals_Y(char):
    j1 = ideal_J1(char)
    assert len(main_conditions()) == 10
    assert ideal_equal(j1, ideal_Y(char))


def test_Y_from_golden_A_matrices():
    y = ideal_Y(101)
    a1 = PolyMatrix.parse(y.ring, GOLDEN["A1"])
    a2 = PolyMatrix.parse(y.ring, GOLDEN["A2"])
    assert (a1, a2) == y_matrices(y.ring)
    assert ideal_equal(y, Ideal(y.ring, a1.minors(2) + a2.minors(2)))
    assert len(y.generators) == 12


def test_corners_and_first_pair_give_minors_of_A1(chart):
    conds = [RankCondition("corner-NW"), RankCondition("corner-SW"), RankCondition("pair", 2, 4)]
    a1, _ = y_matrices(chart.ring)
    assert ideal_equal(wyser_yong_ideal(chart, conds), Ideal(chart.ring, a1.minors(2)))


def test_pair_45_is_implied(chart):
    base = [RankCondition("corner-NW"), RankCondition("corner-SW"), RankCondition("pair", 2, 4),
            RankCondition("pair", 3, 6)]
    p45 = wyser_yong_ideal(chart, [RankCondition("pair", 4, 5)])
    assert ideal_contains(wyser_yong_ideal(chart, base), p45)
    # pair(3,6) alone is not enough
    assert not ideal_contains(wyser_yong_ideal(chart, [RankCondition("pair", 3, 6)]), p45)


def test_Y_properties():
    y = ideal_Y()
    assert ideal_dimension(y) == 4
    assert ideal_member("x_1*x_4 - x_2*x_3", y)
    assert ideal_member("y_1*y_4 - y_2*y_3", y)
    assert ideal_equal(y, ideal_Y_alternate())
    jac = jacobian(y.generators)
    assert all(e.evaluate([0] * 8) == 0 for e in jac.entries())


def test_phi_carries_Z_to_Y():
    assert ideal_equal(apply_map(phi_map(), ideal_Z()), ideal_Y())


@pytest.mark.parametrize("eps", [1, 2, -3])
def test_v_eps_and_origin_lie_on_Z(eps):
    z = ideal_Z()
    for g in z.generators:
        assert g.evaluate(v_eps(eps)) == 0
        assert g.evaluate([0] * 8) == 0


def test_ZKS():
    zks = ideal_ZKS()
    assert zks.ring.nvars == 16
    assert ideal_dimension(zks) == 8
    assert all(g.evaluate([0] * 16) == 0 for g in zks.generators)
    literal = ideal_ZKS_literal()
    assert len(literal.generators) == 8
    assert ideal_contains(zks, literal)
    assert ks_embedding_check()
    assert ks_embedding_check(literal=True)


def test_ks_pullback_against_sympy():
    """det(A_0 A_1) pulled back is det(B_1)^2."""
    psi = ks_embedding_map()
    a = sympy.Matrix(2, 2, sympy.symbols("a_1:5"))
    j = sympy.Matrix([[0, -1], [1, 0]])
    assert sympy.expand((j * a.T * j * a).det() - a.det() ** 2) == 0
    lit = ideal_ZKS_literal()
    pulled = psi(lit.generators[4])
    expected = sympy.expand(a.det() ** 2)
    assert sympy.expand(sympy.sympify(pulled.format().replace("^", "**")) - expected) == 0
    assert ideal_member(pulled, ideal_Z())


def test_chart_sizes():
    closed = slice_chart("++++----")
    assert len(closed.coordinates) == 16
    assert len(closed.coordinates) == flag_dimension(8) - orbit_dimension(parse_clan("++++----"))
    open_chart = slice_chart("(11)")
    assert open_chart.directions == ()
    assert open_chart.matrix.rows == PolyMatrix(open_chart.ring, [[1, -1], [1, 1]]).rows
    other = slice_chart("(12324341)")
    assert len(other.coordinates) == flag_dimension(8) - 24


def test_empty_conditions_give_zero_ideal(chart):
    assert wyser_yong_ideal(chart, []).is_zero()


def test_condition_validation(chart):
    with pytest.raises(ValueError):
        RankCondition("diagonal")
    with pytest.raises(ValueError):
        rank_condition_matrix(chart, RankCondition("pair", 2, 9))

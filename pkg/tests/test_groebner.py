from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from occ.groebner import (Ideal, RingMap, apply_map, eliminate, format_ideal, groebner_basis,
                          ideal_contains, ideal_dimension, ideal_equal, ideal_member, jacobian,
                          normal_form, read_ideal, s_polynomial_certificate, saturate)
from occ.polycore import GREVLEX, LEX, Polynomial, Ring

NAMES = ("x_1", "x_2", "x_3")
SYMS = sympy.symbols(NAMES)


def to_sympy(f: Polynomial):
    out = sympy.Integer(0)
    for m, c in f.terms.items():
        coeff = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        out += coeff * sympy.Mul(*[s ** e for s, e in zip(SYMS, m)])
    return out


def sympy_basis(ideal: Ideal, order: str):
    gens = [to_sympy(g) for g in ideal.generators]
    p = ideal.ring.characteristic
    kw = {"modulus": p} if p else {"domain": sympy.QQ}
    gb = sympy.groebner(gens, *SYMS[: ideal.ring.nvars], order=order, **kw)
    return [sympy.Poly(g, *SYMS[: ideal.ring.nvars], **kw) for g in gb.exprs], kw


def same_basis(ideal: Ideal, order: str) -> bool:
    ours = groebner_basis(ideal, GREVLEX if order == "grevlex" else LEX)
    theirs, kw = sympy_basis(ideal, order)
    mine = [sympy.Poly(to_sympy(g), *SYMS[: ideal.ring.nvars], **kw) for g in ours]
    if not theirs:
        return not mine
    # Poly.monic scales by the lex leading coefficient, so normalize both sides
    theirs = [t.monic() for t in theirs]
    mine = [m.monic() for m in mine]
    return len(mine) == len(theirs) and all(m in theirs for m in mine)


EXAMPLES = [
    ["x_1^2 - x_2", "x_1*x_2 - x_1", "x_2*x_3^2 - x_1 + 3"],
    ["x_1^3 - 2*x_1*x_2", "x_1^2*x_2 - 2*x_2^2 + x_1"],
    ["x_1*x_2 - x_3", "x_2*x_3 - x_1", "x_3*x_1 - x_2"],
    ["x_1 + x_2 + x_3", "x_1*x_2 + x_2*x_3 + x_3*x_1", "x_1*x_2*x_3 - 1"],
]


@pytest.mark.parametrize("gens", EXAMPLES)
@pytest.mark.parametrize("char", [0, 101])
@pytest.mark.parametrize("order", ["grevlex", "lex"])
def test_reduced_basis_matches_sympy(gens, char, order):
    ideal = Ideal(Ring.make(NAMES, char), gens)
    assert same_basis(ideal, order)
    assert s_polynomial_certificate(ideal, GREVLEX if order == "grevlex" else LEX) == []


small_polys = st.lists(
    st.tuples(st.tuples(*[st.integers(0, 2)] * 3), st.integers(-3, 3).filter(bool)),
    min_size=1, max_size=3)


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.lists(small_polys, min_size=1, max_size=3), st.sampled_from([0, 7, 101]))
def test_random_ideals_against_sympy(gen_terms, char):
    ring = Ring.make(NAMES, char)
    gens = [Polynomial(ring, dict(terms)) for terms in gen_terms]
    ideal = Ideal(ring, gens)
    assert same_basis(ideal, "grevlex")
    basis = groebner_basis(ideal)
    assert s_polynomial_certificate(ideal) == []
    for g in ideal.generators:
        assert ideal_member(g, ideal)
    # reducedness: no term of one element is divisible by another leading monomial
    lms = [g.leading_term()[0] for g in basis]
    for i, g in enumerate(basis):
        assert g.leading_term()[1] == ring.field(1)
        for m in g.terms:
            for j, lm in enumerate(lms):
                if j != i:
                    assert not all(a >= b for a, b in zip(m, lm))


def test_membership_and_normal_form():
    ring = Ring.make(NAMES)
    ideal = Ideal(ring, ["x_1^2 - x_2", "x_2^2 - x_3"])
    assert ideal_member("x_1^4 - x_3", ideal)
    assert not ideal_member("x_1 - x_3", ideal)
    assert normal_form(ring("x_1^4"), ideal) == ring("x_3")
    assert ideal.contains("x_2*x_1^2 - x_3")


def test_dimension_examples():
    ring = Ring.make(NAMES)
    assert ideal_dimension(Ideal(ring, ["x_1"])) == 2
    assert ideal_dimension(Ideal(ring, ["x_1*x_2", "x_1*x_3"])) == 2
    assert ideal_dimension(Ideal(ring, ["x_1 - 1", "x_2", "x_3^2"])) == 0
    assert ideal_dimension(Ideal(ring, ["x_1", "x_1 - 1"])) == -1
    assert ideal_dimension(Ideal(ring, [])) == 3
    assert Ideal(ring, ["x_1", "x_1 - 1"]).is_unit()
    # twisted cubic
    cubic = Ideal(ring, ["x_2 - x_1^2", "x_3 - x_1^3"])
    assert ideal_dimension(cubic) == 1


def test_equality_and_containment():
    ring = Ring.make(NAMES, 101)
    a = Ideal(ring, ["x_1*x_2", "x_1 + x_2"])
    b = Ideal(ring, ["x_1^2", "x_1 + x_2"])
    assert ideal_equal(a, b)
    assert ideal_contains(a, Ideal(ring, ["x_2^2"]))
    assert not ideal_contains(Ideal(ring, ["x_2^2"]), a)


def test_elimination_twisted_cubic():
    ring = Ring.make("t_1,x_1,x_2,x_3")
    ideal = Ideal(ring, ["x_1 - t_1", "x_2 - t_1^2", "x_3 - t_1^3"])
    elim = eliminate(ideal, ["t_1"])
    assert elim.ring.variables == ("x_1", "x_2", "x_3")
    expected = Ideal(elim.ring, ["x_2 - x_1^2", "x_3 - x_1*x_2", "x_1*x_3 - x_2^2"])
    assert ideal_equal(elim, expected)


def test_saturation():
    ring = Ring.make("x_1,y_1")
    assert ideal_equal(saturate(Ideal(ring, ["x_1*y_1"]), "x_1"), Ideal(ring, ["y_1"]))
    assert saturate(Ideal(ring, ["x_1^2"]), "x_1").is_unit()
    # the embedded point at the origin disappears, the line stays
    mixed = Ideal(ring, ["x_1^2", "x_1*y_1"])
    assert ideal_equal(saturate(mixed, "y_1"), Ideal(ring, ["x_1"]))


def test_ring_map_and_jacobian():
    src = Ring.make("a_1,a_2")
    dst = Ring.make("b_1,b_2")
    swap = RingMap(src, dst, (dst("b_2"), dst("-b_1")))
    ideal = Ideal(src, ["a_1^2 - a_2"])
    assert ideal_equal(apply_map(swap, ideal), Ideal(dst, ["b_2^2 + b_1"]))
    assert RingMap.identity(src)(src("a_1*a_2")) == src("a_1*a_2")
    jac = jacobian([src("a_1^2*a_2")])
    assert jac.rows[0] == (src("2*a_1*a_2"), src("a_1^2"))


def test_ideal_file_roundtrip(tmp_path):
    ring = Ring.make("x_1,x_2", 101)
    ideal = Ideal(ring, ["x_1^2 - 3*x_2", "x_1*x_2"])
    text = format_ideal(ideal, comment="two generators")
    path = tmp_path / "i.ideal"
    path.write_text(text)
    back = read_ideal(path)
    assert back.ring == ring
    assert back.generators == ideal.generators
    with pytest.raises(ValueError):
        read_ideal("x_1\n")
    with pytest.raises(ValueError, match="line 2"):
        read_ideal("ring: char=0 vars=x_1\nx_1 + q_2\n")


def test_mismatched_rings_rejected():
    a = Ideal(Ring.make("x_1"), ["x_1"])
    b = Ideal(Ring.make("x_1", 101), ["x_1"])
    with pytest.raises(ValueError):
        ideal_equal(a, b)

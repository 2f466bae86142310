from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import occ.nilorbit as nil
from occ.clans import enumerate_clans, flag_dimension, induce_clan, orbit_dimension, parse_clan
from occ.linalg import ExactMatrix
from occ.nilorbit import (GenericityError, NotNilpotentError, SignedTableau, conormal_fiber_basis, dominates,
                          graded_jordan_chains, moment_map_image, sample_tableaux, signed_tableau_from_ranks,
                          signed_tableau_of)

from oracles import all_tableaux, model_nilpotent, random_k

A = parse_clan("(12324341)")
B = parse_clan("(12213443)")


# -- tableau values -----------------------------------------------------------

def test_tableau_text_forms():
    t = SignedTableau.parse("1- 3+ 1+ 3-")
    assert t.format() == "3+ 3- 1+ 1-"
    assert t.shape == (3, 3, 1, 1)
    assert t.signature == (4, 4)
    assert t.row_strings() == ["+-+", "-+-", "+", "-"]
    assert t.as_dict() == {"rows": [{"len": 3, "sign": "+"}, {"len": 3, "sign": "-"},
                                    {"len": 1, "sign": "+"}, {"len": 1, "sign": "-"}]}
    with pytest.raises(ValueError):
        SignedTableau(((0, "+"),))
    with pytest.raises(ValueError):
        SignedTableau(((2, "*"),))


def test_dominance():
    assert dominates((3, 3, 1, 1), (2, 2, 2, 2))
    assert not dominates((2, 2, 2, 2), (3, 3, 1, 1))
    assert dominates((2, 2), (2, 1, 1))
    assert not dominates((3, 1, 1, 1), (2, 2, 2))


# -- single elements ----------------------------------------------------------

def unit(n, i, j):
    return ExactMatrix.unit(n, i, j)


def test_small_examples():
    e = unit(2, 0, 1)  # e_2 -> e_1, so the kernel end e_1 is in V+
    assert signed_tableau_of(e, 1).format() == "2+"
    assert signed_tableau_of(e, 1, convention="head").format() == "2-"
    zero = ExactMatrix.zeros(8)
    assert signed_tableau_of(zero, 4).format() == "1+ 1+ 1+ 1+ 1- 1- 1- 1-"


def test_errors():
    with pytest.raises(NotNilpotentError):
        signed_tableau_of(unit(2, 0, 1) + unit(2, 1, 0), 1)
    with pytest.raises(ValueError):
        signed_tableau_of(unit(2, 0, 0), 1)
    with pytest.raises(ValueError):
        sample_tableaux(A, 0, 0)


# -- random nilpotents with a known answer ------------------------------------

@pytest.mark.parametrize("p, q", [(2, 2), (3, 3)])
def test_hundred_random_nilpotents(p, q):
    """Shape, sign counts and the rank oracle on 100 conjugated model nilpotents."""
    rng = random.Random(1000 * p + q)
    tableaux = all_tableaux(p, q)
    for _ in range(100):
        t = rng.choice(tableaux)
        k = random_k(p, q, rng)
        e = k @ model_nilpotent(t, p) @ k.inverse()
        got = signed_tableau_of(e, p)
        assert got == t
        assert got.size == p + q and got.signature == (p, q)
        assert signed_tableau_from_ranks(e, p) == got
        assert signed_tableau_from_ranks(e, p, "head") == signed_tableau_of(e, p, "head")
        for sign, chain in graded_jordan_chains(e, p):
            assert e.apply(chain[-1]) == [0] * (p + q)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(all_tableaux(3, 2)), st.integers(0, 10 ** 6))
def test_model_nilpotents_roundtrip(t, seed):
    k = random_k(3, 2, random.Random(seed))
    e = k @ model_nilpotent(t, 3) @ k.inverse()
    assert signed_tableau_of(e, 3) == t


# -- conormal fibers and moment maps ------------------------------------------

@pytest.mark.parametrize("text, dim", [
    ("(12324341)", 4), ("(12213443)", 8), ("++++----", 16),
    ("1^+2^+(34546563)7^-8^-", 24), ("1^+2^+(34435665)7^-8^-", 28)])
def test_fiber_dimension_is_codimension(text, dim):
    c = parse_clan(text)
    basis = conormal_fiber_basis(c)
    assert len(basis) == dim == flag_dimension(c.n) - orbit_dimension(c)


def test_open_orbit_fiber_is_empty():
    for c in enumerate_clans(2, 2):
        if orbit_dimension(c) == flag_dimension(4):
            assert conormal_fiber_basis(c) == []
            assert moment_map_image(c, trials=2, seed=0).shape == (1, 1, 1, 1)


def test_fiber_elements_are_nilpotent_in_p():
    rng = random.Random(5)
    for c in enumerate_clans(2, 2):
        basis = conormal_fiber_basis(c)
        if basis:
            e = nil.random_fiber_element(basis, rng)
            assert e.power(c.n).is_zero()


def test_published_moment_maps():
    ta = moment_map_image(A, trials=8, seed=0)
    tb = moment_map_image(B, trials=8, seed=0)
    assert ta.format() == "3+ 3- 1+ 1-"
    assert tb.format() == "2+ 2+ 2- 2-"
    assert ta != tb and dominates(ta.shape, tb.shape) and ta.shape != tb.shape


def test_induced_moment_maps_agree():
    a6 = induce_clan(2, A, 2)
    b6 = induce_clan(2, B, 2)
    ta = moment_map_image(a6, trials=8, seed=0)
    tb = moment_map_image(b6, trials=8, seed=0)
    assert ta == tb
    assert ta.format() == "4+ 4+ 2+ 2+"
    # the other end of the chains would give the opposite signs
    assert moment_map_image(a6, trials=8, seed=0, convention="head").format() == "4- 4- 2- 2-"


def test_all_trials_agree_and_are_deterministic():
    first = sample_tableaux(A, 8, 42)
    assert len(set(first)) == 1
    assert sample_tableaux(A, 8, 42) == first


def test_genericity_failure(monkeypatch):
    # two maximal shapes that disagree in sign
    fake = [SignedTableau.parse("2+ 2-"), SignedTableau.parse("2+ 2+"), SignedTableau.parse("2+ 1+ 1-")]
    monkeypatch.setattr(nil, "sample_tableaux", lambda *a, **k: fake)
    with pytest.raises(GenericityError, match="increase trials"):
        moment_map_image(A)

from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from occ.clans import (Clan, ClanError, clan_representative, clan_to_involution, closed_orbit_dimension,
                       count_clans, enumerate_clans, flag_dimension, format_clan, induce_clan,
                       is_theta_stable_cartan, orbit_dimension, parse_clan)
from occ.linalg import ExactMatrix

from oracles import GOLDEN_G, gf3_orbits_match_clans

MAIN = "(12213443)"
OTHER = "(12324341)"


# -- parsing ------------------------------------------------------------------

def test_parse_examples():
    assert parse_clan(OTHER, 4, 4).pairs == [(1, 8), (2, 4), (3, 6), (5, 7)]
    pm = parse_clan("+-", 1, 1)
    assert pm.pairs == [] and pm.signs == {1: "+", 2: "-"}
    big = parse_clan("1^+2^+(34546563)7^-8^-", 6, 6)
    assert big.signs == {1: "+", 2: "+", 11: "-", 12: "-"}
    assert big.pairs == [(3, 10), (4, 6), (5, 8), (7, 9)]


@pytest.mark.parametrize("text, p, q, position", [
    ("(1213)", 2, 2, 2),   # label 2 appears once
    ("(1111)", 2, 2, 1),
    ("(12213443)", 3, 4, None),
    ("(12", None, None, 3),
    ("1^*", None, None, 2),
    ("(12x21)", None, None, 4),
])
def test_parse_errors(text, p, q, position):
    with pytest.raises(ClanError) as info:
        parse_clan(text, p, q)
    if position is not None:
        assert info.value.position == position - 1


def test_labels_are_normalized():
    assert parse_clan("(3443)") == parse_clan("(1221)")
    assert parse_clan("−+") == parse_clan("-+")


@pytest.mark.parametrize("p, q", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)])
def test_format_parse_roundtrip(p, q):
    for c in enumerate_clans(p, q):
        for style in ("compact", "signed"):
            assert parse_clan(format_clan(c, style), p, q) == c


def test_printed_forms():
    assert format_clan(induce_clan(2, parse_clan(OTHER), 2), "signed") == "1^+2^+(34546563)7^-8^-"
    assert format_clan(induce_clan(2, parse_clan(MAIN), 2), "signed") == "1^+2^+(34435665)7^-8^-"
    assert format_clan(parse_clan("+-")) == "+-"
    assert format_clan(parse_clan(MAIN)) == MAIN


def test_induce_identity_and_errors():
    c = parse_clan(MAIN)
    assert induce_clan(0, c, 0) == c
    with pytest.raises(ValueError):
        induce_clan(-1, c, 0)


# -- involutions --------------------------------------------------------------

def test_involutions():
    assert clan_to_involution(parse_clan(OTHER)).format() == "(18)(24)(36)(57)"
    assert set(clan_to_involution(parse_clan(MAIN)).transpositions) == {(2, 3), (1, 4), (6, 7), (5, 8)}
    trivial = clan_to_involution(parse_clan("+-"))
    assert trivial.perm == (1, 2) and trivial.signs == ((1, "+"), (2, "-"))
    wide = clan_to_involution(parse_clan("1^+2^+(34546563)7^-8^-"))
    assert "(3 10)" in wide.format()
    assert wide.format(with_signs=True).startswith("(1^+)(2^+)(3 10)")


@pytest.mark.parametrize("p, q", [(1, 1), (2, 2), (3, 2), (3, 3)])
def test_involution_is_injective(p, q):
    clans = list(enumerate_clans(p, q))
    invs = {clan_to_involution(c) for c in clans}
    assert len(invs) == len(clans) == count_clans(p, q)
    assert all(i.is_involution() for i in invs)


# -- representatives ----------------------------------------------------------

def test_golden_representative():
    assert clan_representative(parse_clan(MAIN)) == GOLDEN_G


def test_small_representatives():
    assert clan_representative(parse_clan("+-")) == ExactMatrix.identity(2)
    assert clan_representative(parse_clan("(11)")) == ExactMatrix([[1, -1], [1, 1]])


@pytest.mark.parametrize("p, q", [(1, 1), (2, 1), (2, 2), (3, 2), (2, 3)])
def test_representatives_are_theta_stable(p, q):
    for c in enumerate_clans(p, q):
        g = clan_representative(c)
        d = g.det()
        assert abs(d) == 2 ** len(c.pairs)
        assert is_theta_stable_cartan(c, g)


def test_pair_target_override_is_validated():
    c = parse_clan(MAIN)
    with pytest.raises(ValueError):
        clan_representative(c, (5, 5, 6, 7))
    # the default allocation and the pinned one give the same orbit dimension
    assert orbit_dimension(c, clan_representative(c, (5, 6, 7, 8))) == 20


# -- dimensions ---------------------------------------------------------------

def test_published_dimensions():
    assert orbit_dimension(parse_clan(OTHER)) == 24
    assert orbit_dimension(parse_clan(MAIN)) == 20
    assert orbit_dimension(parse_clan("1^+2^+(34546563)7^-8^-")) == 42
    assert orbit_dimension(parse_clan("1^+2^+(34435665)7^-8^-")) == 38


def test_closed_orbit_dimension():
    assert orbit_dimension(parse_clan("++++----")) == closed_orbit_dimension(4, 4) == 12


def length_formula(c: Clan) -> int:
    """Dimension from the pair-crossing count (independent of any matrices)."""
    pairs = c.pairs
    ell = sum(j - i - sum(1 for s, t in pairs if s < i < t < j) for i, j in pairs)
    return closed_orbit_dimension(c.p, c.q) + ell


@pytest.mark.parametrize("p, q", [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (4, 2)])
def test_dimension_matches_length_formula(p, q):
    lo, hi = closed_orbit_dimension(p, q), flag_dimension(p + q)
    top = 0
    for c in enumerate_clans(p, q):
        d = orbit_dimension(c)
        assert lo <= d <= hi
        assert d == length_formula(c)
        top += d == hi
    assert top == 1  # a unique open orbit


@given(st.sampled_from(list(enumerate_clans(2, 2))), st.integers(0, 2), st.integers(0, 2))
def test_induction_adds_closed_increment(c, a, b):
    big = induce_clan(a, c, b)
    inc = closed_orbit_dimension(c.p + a, c.q + b) - closed_orbit_dimension(c.p, c.q)
    assert orbit_dimension(big) == orbit_dimension(c) + inc


# -- brute force over GF(3) ---------------------------------------------------

@pytest.mark.parametrize("p, q", [(1, 1), (2, 0), (2, 1), (1, 2), (3, 1), (2, 2), (1, 3)])
def test_orbits_over_gf3_match_clans(p, q):
    assert gf3_orbits_match_clans(p, q)


def test_clan_counts():
    assert [count_clans(p, q) for p, q in [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)]] == [3, 6, 21, 55, 215]
    for p, q in itertools.product(range(4), repeat=2):
        if p + q:
            assert sum(1 for _ in enumerate_clans(p, q)) == count_clans(p, q)

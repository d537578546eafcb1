import random
from fractions import Fraction

import pytest

from generators import random_disk_chart, random_strip_chart
from transverse_forcing.chords import (
    Inclusion,
    Model,
    Side,
    build_chart,
    comparable,
    deck_shift,
    separates,
    side_of,
)
from transverse_forcing.errors import (
    DuplicateEndpoint,
    DuplicateId,
    InterleavingChords,
    NotDisjoint,
    WrongModel,
)
from transverse_forcing.oracle import oracle_separates, oracle_side, realize


def test_nested_disk_chords_build():
    chart = build_chart([("a", "0", "1/2"), ("b", "1/8", "3/8")])
    assert chart.names() == ["a", "b"]


def test_interleaving_chords_rejected():
    with pytest.raises(InterleavingChords):
        build_chart([("a", "0", "1/2"), ("b", "1/4", "3/4")])


def test_duplicate_endpoint_and_id():
    with pytest.raises(DuplicateEndpoint):
        build_chart([("a", "0", "1/2"), ("b", "1/2", "3/4")])
    with pytest.raises(DuplicateId):
        build_chart([("a", "0", "1/2"), ("a", "1/8", "3/8")])


def test_strip_vertical_and_translates():
    chart = build_chart([("c", "B:0", "T:0")], Model.ANNULUS)
    c = chart.chord("c")
    assert side_of(c, deck_shift(c, 1)) is side_of(c, deck_shift(c, 5))
    assert side_of(c, deck_shift(c, -1)) is side_of(c, deck_shift(c, -4))
    assert side_of(c, deck_shift(c, 1)) is not side_of(c, deck_shift(c, -1))


def test_deck_shift_group_law():
    chart = build_chart([("c", "B:1/3", "T:2/3")], Model.ANNULUS)
    c = chart.chord("c")
    assert deck_shift(c, 0) == c
    assert deck_shift(deck_shift(c, 1), -1) == c
    assert deck_shift(c, 3).tail.value == c.tail.value + 3
    assert chart.chord("c@3") == deck_shift(c, 3)


def test_deck_shift_needs_strip():
    chart = build_chart([("a", "0", "1/2")])
    with pytest.raises(WrongModel):
        deck_shift(chart.chord("a"), 1)


def test_side_of_examples():
    lam = build_chart([("l", "0", "1/2")]).chord("l")
    mu = build_chart([("m", "1/8", "3/8")]).chord("m")
    assert side_of(lam, mu) is Side.RIGHT
    assert side_of(lam, mu.reversed()) is Side.RIGHT
    assert side_of(lam.reversed(), mu) is Side.LEFT
    left = build_chart([("m", "5/8", "7/8")]).chord("m")
    assert side_of(lam, left.reversed()) is Side.LEFT


def test_side_of_crossing_chords():
    a = build_chart([("a", "0", "1/2")]).chord("a")
    b = build_chart([("b", "1/4", "3/4")]).chord("b")
    with pytest.raises(NotDisjoint):
        side_of(a, b)
    with pytest.raises(NotDisjoint):
        side_of(a, a)


def test_comparable_cases():
    chart = build_chart([("a", "1/8", "3/8"), ("b", "0", "1/2"), ("c", "5/8", "7/8")])
    a, b, c = (chart.chord(x) for x in "abc")
    # R(a) is the small cap inside R(b)
    assert comparable(a, b) is Inclusion.R_IN_R_MU
    assert comparable(b, a) is Inclusion.R_MU_IN_R
    # reversing a puts each chord in the right region of the other
    assert comparable(a.reversed(), b) is Inclusion.NOT_COMPARABLE
    assert comparable(a, c) is Inclusion.NOT_COMPARABLE
    x = build_chart([("x", "0", "1/4"), ("y", "1/2", "3/4")])
    assert comparable(x.chord("x"), x.chord("y")) is Inclusion.NOT_COMPARABLE


def test_nested_same_orientation_is_an_inclusion():
    chart = build_chart([("a", "0", "1/2"), ("b", "7/8", "5/8")])
    assert comparable(chart.chord("a"), chart.chord("b")) is not Inclusion.NOT_COMPARABLE


def test_separates_parallel_chords():
    chart = build_chart([("a", "1/16", "7/16"), ("b", "0", "1/2"), ("c", "15/16", "9/16")])
    a, b, c = (chart.chord(x) for x in "abc")
    assert separates(b, a, c) and separates(b, c, a)
    assert not separates(a, b, c)
    assert not separates(c, a, b)


@pytest.mark.parametrize("seed", range(6))
def test_predicates_match_oracle(seed):
    rng = random.Random(seed)
    if seed % 2:
        chart = random_strip_chart(rng, rng.randint(1, 3), rng.randint(0, 5), window=2)
        real = realize(chart, 2)
        chords = [deck_shift(c, k) for c in chart.chords for k in (-1, 0, 1)]
    else:
        chart = random_disk_chart(rng, 10)
        real = realize(chart)
        chords = list(chart.chords)
    for lam in chords:
        for mu in chords:
            if lam.ref == mu.ref:
                continue
            assert side_of(lam, mu) is oracle_side(lam, mu, real)
    triples = [(rng.choice(chords), rng.choice(chords), rng.choice(chords)) for _ in range(200)]
    for psi, lam, mu in triples:
        if len({psi.ref, lam.ref, mu.ref}) < 3:
            continue
        assert separates(psi, lam, mu) == oracle_separates(psi, lam, mu, real)
        assert separates(psi, lam, mu) == separates(psi, mu, lam)


def test_at_most_one_separator_in_a_triple():
    rng = random.Random(3)
    chart = random_disk_chart(rng, 12)
    cs = list(chart.chords)
    for _ in range(300):
        a, b, c = rng.sample(cs, 3)
        assert separates(a, b, c) + separates(b, a, c) + separates(c, a, b) <= 1


def test_coordinates_are_exact():
    chart = build_chart([("a", "1/3", "2/3")])
    assert chart.chord("a").tail.value == Fraction(1, 3)
    assert build_chart([("a", "1/3", "2/3")]) == chart

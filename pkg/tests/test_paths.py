import pytest

from transverse_forcing import fixtures
from transverse_forcing.chords import LeafRef, build_chart
from transverse_forcing.errors import (
    ChartMismatch,
    InvalidPath,
    MissingForcedCrossing,
    NotALine,
    NotIncreasing,
    Unrealizable,
)
from transverse_forcing.paths import (
    ComplementSide,
    complement_side,
    equivalent,
    has_leaf_on_left,
    has_leaf_on_right,
    is_subpath_equiv,
    periodic_path,
    validate_path,
)

NESTED = [("p0", "1/8", "3/8"), ("p1", "1/16", "7/16"), ("p2", "0", "1/2")]


def nested(extra=()):
    return build_chart(NESTED + list(extra))


def test_single_leaf_is_valid():
    p = validate_path(nested(), ["p1"])
    assert p.leaves == (LeafRef("p1"),)


def test_empty_path_rejected():
    with pytest.raises(InvalidPath):
        validate_path(nested(), [])


def test_full_nested_chain_is_valid():
    assert len(validate_path(nested(), ["p0", "p1", "p2"])) == 3


def test_gap_reports_missing_crossing():
    with pytest.raises(MissingForcedCrossing, match="p1"):
        validate_path(nested(), ["p0", "p2"])


def test_reversed_separator_is_unrealizable():
    chart = build_chart([NESTED[0], ("p1", "7/16", "1/16"), NESTED[2]])
    with pytest.raises(Unrealizable, match="p1"):
        validate_path(chart, ["p0", "p2"])


def test_backwards_chain_rejected():
    with pytest.raises(NotIncreasing):
        validate_path(nested(), ["p2", "p1"])
    with pytest.raises(NotIncreasing):
        validate_path(nested(), ["p1", "p1"])


def test_equivalence_and_subpaths():
    chart = nested()
    p = validate_path(chart, ["p0", "p1", "p2"])
    q = validate_path(chart, ["p0", "p1"])
    assert equivalent(p, p)
    assert not equivalent(p, q)
    assert is_subpath_equiv(p, p) == 0
    assert is_subpath_equiv(q, p) == 0
    assert is_subpath_equiv(validate_path(chart, ["p1", "p2"]), p) == 1
    assert is_subpath_equiv(p, q) is None
    with pytest.raises(ChartMismatch):
        equivalent(p, validate_path(build_chart(NESTED[:1]), ["p0"]))


def test_subpath_in_unrolled_periodic_path():
    chart = fixtures.strip_demo_chart()
    line = periodic_path(chart, ["v"], 1)
    long = line.unrolled_path(1, 2)
    mid = validate_path(chart, ["v", "v@1"])
    assert is_subpath_equiv(mid, long) == 1
    # deck-translated periodic chains are different chains
    assert not equivalent(line.unrolled_path(1, 1), line.shifted(1).unrolled_path(1, 1))


def test_side_leaves():
    chart = nested()
    p = validate_path(chart, ["p0", "p1", "p2"])
    assert has_leaf_on_right(p) is None and has_leaf_on_left(p) is None
    chart = build_chart([NESTED[0], NESTED[2], ("r", "7/16", "15/32"), ("l", "1/32", "1/16")])
    p = validate_path(chart, ["p0", "p2"])
    assert has_leaf_on_right(p) == LeafRef("r")
    assert has_leaf_on_left(p) == LeafRef("l")


def test_mirror_chart_swaps_side():
    def mirror(x):
        from fractions import Fraction
        return str((1 - Fraction(x)) % 1)

    recs = [NESTED[0], NESTED[2], ("r", "7/16", "15/32")]
    mirrored = build_chart([(n, mirror(h), mirror(t)) for n, t, h in recs])
    p = validate_path(mirrored, ["p0", "p2"])
    assert has_leaf_on_right(p) is None
    assert has_leaf_on_left(p) == LeafRef("r")


def test_complement_side_of_finite_line():
    chart = build_chart([NESTED[0], NESTED[2], ("r", "7/16", "15/32"), ("l", "1/32", "1/16")])
    line = validate_path(chart, ["p0", "p2"])
    assert complement_side(line, "p0") is ComplementSide.MET
    assert complement_side(line, "r") is ComplementSide.RIGHT
    assert complement_side(line, "l") is ComplementSide.LEFT


def test_partial_chain_is_not_a_line():
    chart = nested([("r", "15/32", "31/64")])
    with pytest.raises(NotALine):
        complement_side(validate_path(chart, ["p0"]), "r")


def test_complement_side_of_periodic_line():
    chart = fixtures.strip_demo_chart()
    line = periodic_path(chart, ["v"], 1)
    assert complement_side(line, "v@7") is ComplementSide.MET
    bottom = {complement_side(line, r) for r in ("bs", "be@3", "bs@-2")}
    top = {complement_side(line, r) for r in ("ts", "te@-1", "ts@4")}
    assert len(bottom) == 1 and len(top) == 1
    assert bottom | top == {ComplementSide.RIGHT, ComplementSide.LEFT}


def test_periodic_path_checks():
    chart = fixtures.strip_demo_chart()
    with pytest.raises(InvalidPath):
        periodic_path(chart, ["v"], 0)
    with pytest.raises(InvalidPath):
        periodic_path(nested(), ["p0"], 1)
    with pytest.raises(NotIncreasing):
        periodic_path(chart, ["v"], -1)
    p = periodic_path(chart, ["v", "v@1"], 2)
    assert p.leaf(5) == LeafRef("v", 5)
    assert p.occurs("v@9") == 9

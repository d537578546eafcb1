import random
from dataclasses import replace

import pytest

from generators import FaceGraph, crossing_pair, forcing_cases, maximal_path, random_disk_chart, random_path
from transverse_forcing import fixtures
from transverse_forcing.chords import build_chart
from transverse_forcing.errors import ChartMismatch, SeparationViolation, WindowExceeded
from transverse_forcing.oracle import oracle_relative_order
from transverse_forcing.paths import periodic_path, validate_path
from transverse_forcing.transversality import (
    RelOrder,
    Sign,
    brute_force_witnesses,
    crosses_transversally,
    face_crossings,
    has_F_transverse_self_intersection,
    path_self_witnesses,
    relative_order,
    self_transverse,
    verify_witness,
)


def triple(l0=("l0", "0", "1/2"), l1=("l1", "1/16", "3/16"), l2=("l2", "5/16", "7/16")):
    chart = build_chart([l0, l1, l2])
    return [chart.chord(n) for n in ("l0", "l1", "l2")]


def test_relative_order_right_side_caps():
    l0, l1, l2 = triple()
    got = relative_order(l0, l1, l2)
    assert got is oracle_relative_order(None, l0, l1, l2)
    assert relative_order(l0, l2, l1) is got.flipped()
    assert relative_order(l0.reversed(), l1, l2) is got.flipped()


def test_relative_order_ignores_orientation_of_the_others():
    l0, l1, l2 = triple()
    assert relative_order(l0, l1.reversed(), l2) is relative_order(l0, l1, l2)


def test_leaves_on_opposite_sides_are_separated_by_the_reference():
    l0, l1, l2 = triple(l2=("l2", "9/16", "11/16"))
    with pytest.raises(SeparationViolation):
        relative_order(l0, l1, l2)


def test_relative_order_rejects_separated_triples():
    l0, l1, l2 = triple(l1=("l1", "1/16", "7/16"), l2=("l2", "1/8", "3/8"))
    with pytest.raises(SeparationViolation):
        relative_order(l0, l1, l2)


def test_demo_pair_crosses_positively():
    p1, p2 = fixtures.demo_crossing_pair()
    w = crosses_transversally(p1, p2)
    assert w is not None and w.sign is Sign.POSITIVE
    assert str(w.phi) == "v@1" and (w.a1, w.t1, w.b1) == (0, 1, 3)
    assert verify_witness(p1, p2, w)
    back = crosses_transversally(p2, p1)
    assert back.sign is Sign.NEGATIVE and back.phi == w.phi


def test_identical_paths_do_not_cross():
    p1, _ = fixtures.demo_crossing_pair()
    assert crosses_transversally(p1, p1) is None
    assert face_crossings(p1, p1) == []


def test_chart_mismatch():
    p1, _ = fixtures.demo_crossing_pair()
    other = validate_path(build_chart([("a", "0", "1/2")]), ["a"])
    with pytest.raises(ChartMismatch):
        crosses_transversally(p1, other)
    with pytest.raises(ChartMismatch):
        face_crossings(p1, other)


def test_canonical_witness_agrees_with_brute_force():
    rng = random.Random(11)
    checked = 0
    for p1, p2, w in forcing_cases(rng, 60, max_chords=14, max_len=7):
        brute = brute_force_witnesses(p1, p2)
        assert w in brute
        assert min(brute, key=lambda x: (x.t1, x.t2)).t1 == w.t1
        assert all(x.sign is brute[0].sign for x in brute if x.phi == w.phi)
        checked += 1
    assert checked == 60


def test_no_witness_means_none_by_brute_force():
    rng = random.Random(12)
    seen = 0
    while seen < 40:
        g = FaceGraph(random_disk_chart(rng, rng.randint(4, 12)))
        p1, p2 = crossing_pair(rng, g, 7)
        if crosses_transversally(p1, p2) is None:
            assert brute_force_witnesses(p1, p2) == []
            seen += 1


def test_witness_survives_widening():
    p1, p2 = fixtures.demo_crossing_pair()
    w = crosses_transversally(p1, p2)
    for a1 in range(w.a1 + 1):
        for a2 in range(w.a2 + 1):
            for b1 in range(w.b1, len(p1)):
                for b2 in range(w.b2, len(p2)):
                    assert verify_witness(p1, p2, replace(w, a1=a1, a2=a2, b1=b1, b2=b2))


def test_trivial_loop_has_no_self_intersection():
    chart = fixtures.strip_demo_chart()
    line = periodic_path(chart, ["v"], 1)
    assert self_transverse(line, 4) == []
    assert not has_F_transverse_self_intersection(line)
    with pytest.raises(WindowExceeded):
        self_transverse(line, chart.window + 1)


def test_finite_path_self_crossing():
    p = fixtures.demo_self_crossing_path()
    ws = path_self_witnesses(p)
    assert ws and all(w.deck_power for w in ws)
    assert has_F_transverse_self_intersection(p)
    disk = validate_path(build_chart([("a", "1/8", "3/8"), ("b", "0", "1/2")]), ["a", "b"])
    assert not has_F_transverse_self_intersection(disk)


def test_face_crossings_are_symmetric():
    rng = random.Random(13)
    found = 0
    for _ in range(400):
        g = FaceGraph(random_disk_chart(rng, rng.randint(4, 14)))
        p1, p2 = maximal_path(rng, g), random_path(rng, g)
        fc = face_crossings(p1, p2)
        assert sorted((j, i) for i, j in fc) == sorted(face_crossings(p2, p1))
        found += bool(fc)
    assert found > 0

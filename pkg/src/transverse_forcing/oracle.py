"""Straight-chord realizations used as an independent check.

Boundary points are placed on the unit circle at exact rational points, chords
become straight segments, and sides, faces and connector orders are decided
with exact orientation tests.  Nothing outside the tests and the
``oracle-sweep`` command calls into this module.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .chords import (
    Chord,
    CircleCoord,
    FoliationChart,
    LeafRef,
    Line,
    Model,
    Side,
    deck_shift,
)
from .errors import NotDisjoint, SeparationViolation, WindowExceeded
from .transversality import RelOrder, relative_order

Point = Tuple[Fraction, Fraction]

HALF = Fraction(1, 2)


def circle_parameter(c: CircleCoord) -> Fraction:
    """Monotone map of boundary coordinates into [0, 1), counterclockwise."""
    if c.line is None:
        return c.value
    x = c.value
    squash = x / (4 * (1 + abs(x)))
    if c.line is Line.BOTTOM:
        return Fraction(1, 4) + squash
    return Fraction(3, 4) - squash


def circle_point(u: Fraction) -> Point:
    """Rational point of the unit circle; angle increases with u, u=0 at (-1, 0)."""
    u = Fraction(u) % 1
    if u == 0:
        return (Fraction(-1), Fraction(0))
    t = (u - HALF) / (u * (1 - u))
    d = 1 + t * t
    return ((1 - t * t) / d, 2 * t / d)


def cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(p: Point, q: Point, r: Point) -> bool:
    return min(p[0], r[0]) <= q[0] <= max(p[0], r[0]) and min(p[1], r[1]) <= q[1] <= max(p[1], r[1])


def segments_meet(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """Closed segments p1p2 and q1q2 share a point."""
    d1 = cross(q1, q2, p1)
    d2 = cross(q1, q2, p2)
    d3 = cross(p1, p2, q1)
    d4 = cross(p1, p2, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    if d1 == 0 and _on_segment(q1, p1, q2):
        return True
    if d2 == 0 and _on_segment(q1, p2, q2):
        return True
    if d3 == 0 and _on_segment(p1, q1, p2):
        return True
    if d4 == 0 and _on_segment(p1, q2, p2):
        return True
    return False


def _mid(a: Point, b: Point) -> Point:
    return ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)


def _lerp(a: Point, b: Point, s: Fraction) -> Point:
    return (a[0] + (b[0] - a[0]) * s, a[1] + (b[1] - a[1]) * s)


@dataclass
class Realization:
    """Straight segments for a set of chords plus the face structure they cut out."""

    chart: Optional[FoliationChart]
    segments: Dict[LeafRef, Tuple[Point, Point]]
    faces: List[tuple] = field(default_factory=list)
    adjacency: List[tuple] = field(default_factory=list)
    order: List[LeafRef] = field(default_factory=list)

    def segment(self, c) -> Tuple[Point, Point]:
        ref = c.ref if isinstance(c, Chord) else LeafRef.parse(c)
        return self.segments[ref]


def _point_side(seg: Tuple[Point, Point], p: Point) -> Side:
    v = cross(seg[0], seg[1], p)
    if v == 0:
        raise NotDisjoint("point on chord line")
    return Side.RIGHT if v < 0 else Side.LEFT


def realize_chords(chords: List[Chord], chart: Optional[FoliationChart] = None) -> Realization:
    params = {}
    segs = {}
    for c in chords:
        ut, uh = circle_parameter(c.tail), circle_parameter(c.head)
        params[c.ref] = (ut, uh)
        segs[c.ref] = (circle_point(ut), circle_point(uh))
    used = sorted({u for pair in params.values() for u in pair} | {Fraction(0), Fraction(1, 4), HALF, Fraction(3, 4)})
    # put an extra vertex between any two consecutive ones so no chord is a polygon edge
    verts = []
    for i, u in enumerate(used):
        nxt = used[i + 1] if i + 1 < len(used) else used[0] + 1
        verts.extend([u, (u + nxt) / 2])
    pts = [circle_point(u) for u in verts]
    order = [c.ref for c in chords]
    faces = []
    for i in range(len(pts)):
        m = _mid(pts[i], pts[(i + 1) % len(pts)])
        sig = tuple(_point_side(segs[r], m) for r in order)
        if sig not in faces:
            faces.append(sig)
    adjacency = []
    for i, f in enumerate(faces):
        for j in range(i + 1, len(faces)):
            diff = [k for k in range(len(order)) if f[k] is not faces[j][k]]
            if len(diff) == 1:
                adjacency.append((i, j, order[diff[0]]))
    return Realization(chart, segs, faces, adjacency, order)


def realize(chart: FoliationChart, window: Optional[int] = None) -> Realization:
    """Realize every chord of a chart; strip charts use deck powers within the window."""
    if chart.model is Model.DISK:
        return realize_chords(list(chart.chords), chart)
    w = chart.window if window is None else window
    if w > chart.window:
        raise WindowExceeded(f"window {w} exceeds chart window {chart.window}")
    chords = [deck_shift(c, k) for c in chart.chords for k in range(-w, w + 1)]
    return realize_chords(chords, chart)


def _segments_for(real: Optional[Realization], *chords: Chord):
    if real is None:
        real = realize_chords(list(chords))
    out = []
    for c in chords:
        if c.ref in real.segments:
            out.append(real.segments[c.ref])
        else:
            out.append(realize_chords([c]).segments[c.ref])
    return out


def oracle_side(lam: Chord, mu: Chord, real: Optional[Realization] = None) -> Side:
    """Side of lam's segment holding mu's segment, by orientation tests."""
    sl, sm = _segments_for(real, lam, mu)
    if segments_meet(sl[0], sl[1], sm[0], sm[1]):
        raise NotDisjoint(f"{lam.ref} and {mu.ref} meet")
    return _point_side(sl, _mid(sm[0], sm[1]))


def oracle_separates(psi: Chord, lam: Chord, mu: Chord, real: Optional[Realization] = None) -> bool:
    return oracle_side(psi, lam, real) is not oracle_side(psi, mu, real)


def oracle_relative_order(real: Optional[Realization], lam0: Chord, lam1: Chord, lam2: Chord) -> RelOrder:
    """Relative order decided by straight connectors inside the common face.

    The face bordered by all three chords is convex, so a straight segment from
    a point of lam0 to the midpoint of lam_i stays inside it.  Feet are placed
    at one third and two thirds of lam0, tail to head.  Exactly one of the two
    assignments of feet to targets gives disjoint connectors; lam2 is above
    lam1 when that assignment sends the foot nearer the head to lam2.
    """
    s0, s1, s2 = _segments_for(real, lam0, lam1, lam2)
    segs = {0: s0, 1: s1, 2: s2}
    names = {0: lam0.ref, 1: lam1.ref, 2: lam2.ref}
    for i, j in ((0, 1), (0, 2), (1, 2)):
        if segments_meet(*segs[i], *segs[j]):
            raise NotDisjoint(f"{names[i]} and {names[j]} meet")
    for i, j, k in ((0, 1, 2), (1, 0, 2), (2, 0, 1)):
        if _point_side(segs[i], _mid(*segs[j])) is not _point_side(segs[i], _mid(*segs[k])):
            raise SeparationViolation(f"{names[i]} separates {names[j]} and {names[k]}")
    near_tail = _lerp(s0[0], s0[1], Fraction(1, 3))
    near_head = _lerp(s0[0], s0[1], Fraction(2, 3))
    m1, m2 = _mid(*s1), _mid(*s2)
    # lam1 from the foot near the tail, lam2 from the foot near the head
    straight = not segments_meet(near_tail, m1, near_head, m2)
    swapped = not segments_meet(near_tail, m2, near_head, m1)
    if straight == swapped:
        raise AssertionError("connector test is ambiguous")
    return RelOrder.ABOVE if straight else RelOrder.BELOW


@dataclass
class SweepReport:
    checked: int = 0
    cyclic_orders: int = 0
    filtered: int = 0
    mismatches: List[str] = field(default_factory=list)
    filter_mismatches: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.filter_mismatches

    def lines(self) -> List[str]:
        out = [
            f"configurations checked: {self.checked}",
            f"distinct cyclic orders: {self.cyclic_orders}",
            f"separated configurations filtered: {self.filtered}",
            f"mismatches: {len(self.mismatches)}",
            f"filter mismatches: {len(self.filter_mismatches)}",
        ]
        out.extend("MISMATCH " + m for m in self.mismatches + self.filter_mismatches)
        out.append("PASS" if self.ok else "FAIL")
        return out


def _positions(seed: Optional[int]) -> List[Fraction]:
    if seed is None:
        return [Fraction(2 * k + 1, 12) for k in range(6)]
    rng = random.Random(seed)
    cuts = sorted(rng.sample(range(1, 997), 6))
    return [Fraction(c, 997) for c in cuts]


def _matchings(items):
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for m in _matchings(rest):
            yield [(a, items[i])] + m


def sweep_configurations(seeds=(None, 7)):
    """Every labeled placement of three chords on six boundary points.

    Yields (description, lam0, lam1, lam2) for each realization seed, each
    non-crossing matching, each labeling and each orientation choice.
    """
    for seed in seeds:
        pos = _positions(seed)
        for matching in _matchings(list(range(6))):
            pairs = [tuple(p) for p in matching]
            crossing = False
            for (a, b), (c, d) in itertools.combinations(pairs, 2):
                if (a < c < b < d) or (c < a < d < b):
                    crossing = True
            if crossing:
                continue
            for perm in itertools.permutations(range(3)):
                for flips in itertools.product((False, True), repeat=3):
                    chords = []
                    for label, idx in enumerate(perm):
                        a, b = pairs[idx]
                        if flips[label]:
                            a, b = b, a
                        chords.append(Chord(LeafRef(f"l{label}"), CircleCoord(pos[a]), CircleCoord(pos[b])))
                    desc = (
                        f"seed={seed} "
                        + " ".join(f"l{lab}:{pairs[perm[lab]][::-1] if flips[lab] else pairs[perm[lab]]}" for lab in range(3))
                    )
                    yield desc, chords


def _cyclic_signature(chords: List[Chord]) -> tuple:
    pts = []
    for lab, c in enumerate(chords):
        pts.append((c.tail.value, f"t{lab}"))
        pts.append((c.head.value, f"h{lab}"))
    seq = [s for _, s in sorted(pts)]
    return min(tuple(seq[i:] + seq[:i]) for i in range(len(seq)))


def oracle_sweep(check_filter: bool = True, seeds=(None, 7)) -> SweepReport:
    """Compare production relative_order with the oracle on every configuration."""
    report = SweepReport()
    orders = set()
    for desc, chords in sweep_configurations(seeds):
        real = realize_chords(chords)
        try:
            expected = oracle_relative_order(real, *chords)
        except SeparationViolation:
            report.filtered += 1
            if check_filter:
                try:
                    relative_order(*chords)
                    report.filter_mismatches.append(f"{desc}: production accepted a separated triple")
                except SeparationViolation:
                    pass
            continue
        report.checked += 1
        orders.add(_cyclic_signature(chords))
        try:
            got = relative_order(*chords)
        except Exception as exc:  # any production failure is a mismatch
            report.mismatches.append(f"{desc}: production raised {type(exc).__name__}")
            continue
        if got is not expected:
            report.mismatches.append(f"{desc}: production {got.value}, oracle {expected.value}")
    report.cyclic_orders = len(orders)
    return report

"""Relative order of disjoint leaves and F-transverse intersections."""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import List, Optional, Union

from .chords import Chord, LeafRef, Side, _inside_arc, disjoint, separates, side_of
from .errors import ChartMismatch, InvalidPath, NotDisjoint, SeparationViolation, WindowExceeded
from .paths import PeriodicPath, TransversePath


class RelOrder(Enum):
    ABOVE = "Above"
    BELOW = "Below"

    def flipped(self) -> "RelOrder":
        return RelOrder.BELOW if self is RelOrder.ABOVE else RelOrder.ABOVE


class Sign(Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"

    def flipped(self) -> "Sign":
        return Sign.NEGATIVE if self is Sign.POSITIVE else Sign.POSITIVE


def relative_order(ref: Chord, lam1: Chord, lam2: Chord) -> RelOrder:
    """Whether ``lam2`` is above ``lam1`` relative to the oriented chord ``ref``.

    Connectors from ``ref`` to the two chords are disjoint, and the one whose
    foot on ``ref`` is nearer the head reaches the chord that is above.  The
    chords sit on one side of ``ref``.  Walking counterclockwise along that
    side's boundary, starting where the region's boundary leaves ``ref``, the
    first chord met has its connector attached nearest that starting corner.
    On the right side the corner is the tail, on the left side it is the head.
    """
    for a, b in ((ref, lam1), (ref, lam2), (lam1, lam2)):
        if not disjoint(a, b):
            raise NotDisjoint(f"{a.ref} and {b.ref} are not disjoint")
    for a, b, c in ((ref, lam1, lam2), (lam1, ref, lam2), (lam2, ref, lam1)):
        if separates(a, b, c):
            raise SeparationViolation(f"{a.ref} separates {b.ref} and {c.ref}")
    side = side_of(ref, lam1)
    corner = ref.tail.key if side is Side.RIGHT else ref.head.key

    def first_endpoint(c: Chord):
        keys = [c.tail.key, c.head.key]
        return keys[0] if _inside_arc(keys[0], corner, keys[1]) else keys[1]

    e1, e2 = first_endpoint(lam1), first_endpoint(lam2)
    lam1_first = _inside_arc(e1, corner, e2)
    if side is Side.RIGHT:
        # the first chord met is nearer the tail, so the other one is above
        return RelOrder.ABOVE if lam1_first else RelOrder.BELOW
    # on the left the first chord met is nearer the head and is above
    return RelOrder.BELOW if lam1_first else RelOrder.ABOVE


@dataclass(frozen=True)
class IntersectionWitness:
    phi: LeafRef
    a1: int
    t1: int
    b1: int
    a2: int
    t2: int
    b2: int
    sign: Sign
    deck_power: Optional[int] = None

    def __str__(self):
        extra = "" if self.deck_power is None else f" deck={self.deck_power}"
        return (
            f"{self.sign.value} at {self.phi}: path1 ({self.a1},{self.t1},{self.b1}) "
            f"path2 ({self.a2},{self.t2},{self.b2}){extra}"
        )


def _sign_of(chart, phi: LeafRef, l1a, l2a, l1b, l2b) -> Optional[Sign]:
    ref = chart.chord(phi)
    start = relative_order(ref, chart.chord(l1a), chart.chord(l2a))
    end = relative_order(ref, chart.chord(l1b), chart.chord(l2b))
    if start is RelOrder.BELOW and end is RelOrder.ABOVE:
        return Sign.POSITIVE
    if start is RelOrder.ABOVE and end is RelOrder.BELOW:
        return Sign.NEGATIVE
    return None


def common_runs(c1, c2) -> list:
    """Maximal runs of consecutive common leaves, as (i0, i1, j0, j1) inclusive."""
    pos2 = {r: j for j, r in enumerate(c2)}
    runs = []
    i = 0
    n1, n2 = len(c1), len(c2)
    while i < n1:
        j = pos2.get(c1[i])
        if j is None:
            i += 1
            continue
        i0, j0 = i, j
        while i + 1 < n1 and j + 1 < n2 and c1[i + 1] == c2[j + 1]:
            i += 1
            j += 1
        runs.append((i0, i, j0, j))
        i += 1
    return runs


def _chain_witnesses(chart, c1, c2) -> List[IntersectionWitness]:
    out = []
    for i0, i1, j0, j1 in common_runs(c1, c2):
        if i0 == 0 or j0 == 0 or i1 == len(c1) - 1 or j1 == len(c2) - 1:
            continue
        a1, b1, a2, b2 = i0 - 1, i1 + 1, j0 - 1, j1 + 1
        sign = _sign_of(chart, c1[i0], c1[a1], c2[a2], c1[b1], c2[b2])
        if sign is not None:
            out.append(IntersectionWitness(c1[i0], a1, i0, b1, a2, j0, b2, sign))
    return out


def crosses_transversally(p1: TransversePath, p2: TransversePath) -> Optional[IntersectionWitness]:
    """Canonical F-transverse intersection witness of two paths, if any.

    Flanks may be pushed outward without changing the relative orders, so it is
    enough to look at the leaves just outside each maximal common run.
    """
    if p1.chart != p2.chart:
        raise ChartMismatch("paths live on different charts")
    ws = _chain_witnesses(p1.chart, p1.leaves, p2.leaves)
    return min(ws, key=lambda w: (w.t1, w.t2)) if ws else None


def witness_at(p1: TransversePath, p2: TransversePath, t1: int, t2: int) -> Optional[IntersectionWitness]:
    """Witness anchored at the given common positions, if they lie in a transverse run."""
    c1, c2 = p1.leaves, p2.leaves
    if not (0 <= t1 < len(c1) and 0 <= t2 < len(c2)) or c1[t1] != c2[t2]:
        return None
    for w in _chain_witnesses(p1.chart, c1, c2):
        if w.a1 < t1 < w.b1 and t1 - w.t1 == t2 - w.t2:
            return replace(w, phi=c1[t1], t1=t1, t2=t2)
    return None


def verify_witness(p1: TransversePath, p2: TransversePath, w: IntersectionWitness) -> bool:
    """Check that ``w`` certifies an F-transverse intersection of p1 and p2."""
    c1, c2 = p1.leaves, p2.leaves
    if not (0 <= w.a1 < w.t1 < w.b1 < len(c1) and 0 <= w.a2 < w.t2 < w.b2 < len(c2)):
        return False
    if c1[w.t1] != w.phi or c2[w.t2] != w.phi:
        return False
    try:
        sign = _sign_of(p1.chart, w.phi, c1[w.a1], c2[w.a2], c1[w.b1], c2[w.b2])
    except (SeparationViolation, NotDisjoint):
        return False
    return sign is w.sign


def _share_face(chart, chords) -> bool:
    for psi in chart.candidates(chords):
        if psi.ref in {c.ref for c in chords}:
            continue
        sides = {side_of(psi, c) for c in chords}
        if len(sides) > 1:
            return False
    return True


def face_crossings(p1: TransversePath, p2: TransversePath) -> list:
    """Steps of the two paths that cross inside one face of the chart.

    Steps i -> i+1 of p1 and j -> j+1 of p2 using four distinct chords that
    bound a common face, in interleaved order around it, force the paths to
    cross a leaf the chart does not list.  Returns the (i, j) pairs.
    """
    if p1.chart != p2.chart:
        raise ChartMismatch("paths live on different charts")
    chart = p1.chart
    c1, c2 = p1.chords(), p2.chords()
    out = []
    for i in range(len(c1) - 1):
        a, b = c1[i], c1[i + 1]
        for j in range(len(c2) - 1):
            c, d = c2[j], c2[j + 1]
            if len({a.ref, b.ref, c.ref, d.ref}) < 4:
                continue
            ka, kb = a.tail.key, b.tail.key
            if _inside_arc(c.tail.key, ka, kb) == _inside_arc(d.tail.key, ka, kb):
                continue
            if _share_face(chart, (a, b, c, d)):
                out.append((i, j))
    return out


def brute_force_witnesses(p1: TransversePath, p2: TransversePath) -> list:
    """Every index choice satisfying the Below/Above pattern (small chains only)."""
    c1, c2 = p1.leaves, p2.leaves
    out = []
    for t1, phi in enumerate(c1):
        for t2, psi in enumerate(c2):
            if phi != psi:
                continue
            for a1 in range(t1):
                for a2 in range(t2):
                    for b1 in range(t1 + 1, len(c1)):
                        for b2 in range(t2 + 1, len(c2)):
                            w = IntersectionWitness(phi, a1, t1, b1, a2, t2, b2, Sign.POSITIVE)
                            for s in Sign:
                                cand = replace(w, sign=s)
                                if verify_witness(p1, p2, cand):
                                    out.append(cand)
    return out


def self_crossing_powers(p: TransversePath) -> list:
    """Deck powers k for which the path shares at least one leaf with T^k of itself."""
    if not p.chart.is_annulus:
        return []
    ks = set()
    by_name = {}
    for r in p.leaves:
        by_name.setdefault(r.name, []).append(r.shift)
    for shifts in by_name.values():
        for x in shifts:
            for y in shifts:
                if x != y:
                    ks.add(x - y)
    return sorted(ks)


def path_self_witnesses(p: TransversePath) -> List[IntersectionWitness]:
    """Self-intersections of a finite strip path against its own deck translates.

    A witness with deck power k pairs chain position t1 of the path with
    position t2 of T^k of the path, where the leaf at t1 is T^k of the leaf at
    t2.  Only t2 < t1 is kept, so each self-intersection appears once.
    """
    out = []
    for k in self_crossing_powers(p):
        q = p.shifted(k)
        for w in _chain_witnesses(p.chart, p.leaves, q.leaves):
            if w.t2 < w.t1:
                out.append(replace(w, deck_power=k))
    out.sort(key=lambda w: (w.t2, w.t1, w.deck_power))
    return out


def self_transverse(p: PeriodicPath, max_k: int) -> List[IntersectionWitness]:
    """Transverse intersections of a periodic path with its deck translates.

    T^k and T^(k+s) move the line the same way when s is the period shift, so
    powers are reduced to residues mod s and each residue is scanned once.
    A common run at least one period long means the translate is the same
    line.  Witnesses repeat every period; the one whose t1 falls in the central
    period is kept, with positions reported in the coordinates of the infinite
    chain (position 0 is the first base leaf).
    """
    if max_k > p.chart.window:
        raise WindowExceeded(f"max_k={max_k} exceeds chart window {p.chart.window}")
    m, s = p.period, abs(p.shift)
    shifts = [r.shift for r in p.base]
    residues = sorted({k % s for k in range(-max_k, max_k + 1)} - {0})
    out = []
    for r in residues:
        spread = max(shifts) - min(shifts) + r
        reach = 3 + -(-spread // s)
        a = p.unroll(-reach * m, (reach + 1) * m)
        b = p.shifted(r).unroll(-reach * m, (reach + 1) * m)
        for w in _chain_witnesses(p.chart, a, b):
            if w.b1 - w.a1 - 1 >= m or not (reach * m <= w.t1 < (reach + 1) * m):
                continue
            off = reach * m
            out.append(
                IntersectionWitness(
                    w.phi, w.a1 - off, w.t1 - off, w.b1 - off,
                    w.a2 - off, w.t2 - off, w.b2 - off, w.sign, r,
                )
            )
    out.sort(key=lambda w: (w.deck_power, w.t1, w.t2))
    return out


def has_F_transverse_self_intersection(x: Union[TransversePath, PeriodicPath], max_k: Optional[int] = None) -> bool:
    if isinstance(x, PeriodicPath):
        return bool(self_transverse(x, x.chart.window if max_k is None else max_k))
    if isinstance(x, TransversePath):
        return bool(path_self_witnesses(x))
    raise InvalidPath("expected a path")

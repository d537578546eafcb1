"""Transverse paths as chains of crossed leaves.

A path is identified with the sequence of chart chords it crosses, each from
its right side to its left side.  Validity means the right regions strictly
increase along the chain and every chord that coherently separates two
consecutive leaves is itself in the chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

from .chords import (
    Chord,
    FoliationChart,
    LeafRef,
    Side,
    _inside_arc,
    right_inside,
    separates,
    side_of,
)
from .errors import (
    ChartMismatch,
    InvalidPath,
    MissingForcedCrossing,
    NotALine,
    NotIncreasing,
    Unrealizable,
    WindowExceeded,
)


class ComplementSide(Enum):
    MET = "MetByPath"
    RIGHT = "InRSide"
    LEFT = "InLSide"


@dataclass(frozen=True)
class TransversePath:
    chart: FoliationChart
    leaves: tuple

    def __len__(self):
        return len(self.leaves)

    def __getitem__(self, i):
        return self.leaves[i]

    def chords(self) -> list:
        return [self.chart.chord(r) for r in self.leaves]

    def shifted(self, k: int) -> "TransversePath":
        """Deck translate of the whole chain (annulus charts only)."""
        if k == 0:
            return self
        if not self.chart.is_annulus:
            raise InvalidPath("deck translates only exist in annulus charts")
        return TransversePath(self.chart, tuple(r.shifted(k) for r in self.leaves))

    def sub(self, i: int, j: int) -> "TransversePath":
        """Subpath from chain index i to j inclusive."""
        return TransversePath(self.chart, self.leaves[i:j + 1])

    def __str__(self):
        return " ".join(str(r) for r in self.leaves)


def _closure_defect(chart: FoliationChart, lo: Chord, hi: Chord, k: int, skip=()):
    """Raise if some chart chord separates consecutive leaves ``lo``, ``hi``."""
    coherent = []
    for psi in chart.candidates((lo, hi)):
        if psi.ref in (lo.ref, hi.ref) or psi.ref in skip:
            continue
        if not separates(psi, lo, hi):
            continue
        if side_of(psi, lo) is Side.RIGHT:
            coherent.append(psi)
        else:
            raise Unrealizable(
                f"{psi.ref} separates {lo.ref} and {hi.ref} (step {k}) with the wrong orientation"
            )
    if coherent:
        # report the one the path would have to cross first
        first = min(coherent, key=lambda c: sum(right_inside(d, c) for d in coherent if d is not c))
        raise MissingForcedCrossing(f"{first.ref} must be crossed between steps {k} and {k + 1}")


def check_chain(chart: FoliationChart, refs: Sequence[LeafRef]) -> None:
    chords = [chart.chord(r) for r in refs]
    if len(set(refs)) != len(refs):
        raise NotIncreasing("a leaf occurs twice in the chain")
    for k in range(len(chords) - 1):
        if not right_inside(chords[k], chords[k + 1]):
            raise NotIncreasing(f"R({refs[k]}) is not strictly inside R({refs[k + 1]}) (step {k})")
        _closure_defect(chart, chords[k], chords[k + 1], k)


def validate_path(chart: FoliationChart, leaves) -> TransversePath:
    """Check a leaf sequence and return it as a path."""
    refs = tuple(LeafRef.parse(r) for r in leaves)
    if not refs:
        raise InvalidPath("a path crosses at least one leaf")
    check_chain(chart, refs)
    return TransversePath(chart, refs)


def _same_chart(p1, p2):
    if p1.chart != p2.chart:
        raise ChartMismatch("paths live on different charts")


def equivalent(p1: TransversePath, p2: TransversePath) -> bool:
    _same_chart(p1, p2)
    return p1.leaves == p2.leaves


def find_window(needle: Sequence, hay: Sequence) -> Optional[int]:
    m = len(needle)
    for i in range(len(hay) - m + 1):
        if tuple(hay[i:i + m]) == tuple(needle):
            return i
    return None


def is_subpath_equiv(p1: TransversePath, p2: TransversePath) -> Optional[int]:
    """Offset of p1's chain as a contiguous window of p2's chain."""
    _same_chart(p1, p2)
    return find_window(p1.leaves, p2.leaves)


def slab_side(lo: Chord, hi: Chord, mu: Chord) -> Optional[Side]:
    """Side of a path crossing ``lo`` then ``hi`` on which ``mu`` sits.

    ``mu`` must lie in L(lo) and R(hi) without separating them; otherwise None.
    The slab between two consecutive leaves is bounded by the boundary arc from
    head(lo) to head(hi), which is on the path's right, and the arc from
    tail(hi) to tail(lo), on its left.
    """
    if side_of(lo, mu) is not Side.LEFT or side_of(hi, mu) is not Side.RIGHT:
        return None
    a, b = lo.head.key, hi.head.key
    in_t = _inside_arc(mu.tail.key, a, b)
    in_h = _inside_arc(mu.head.key, a, b)
    if in_t and in_h:
        return Side.RIGHT
    if not in_t and not in_h:
        return Side.LEFT
    return None


def _side_leaf(p: TransversePath, want: Side) -> Optional[LeafRef]:
    chart = p.chart
    met = set(p.leaves)
    chords = p.chords()
    for k in range(len(chords) - 1):
        lo, hi = chords[k], chords[k + 1]
        found = []
        for mu in chart.candidates((lo, hi)):
            if mu.ref in met:
                continue
            if slab_side(lo, hi, mu) is want:
                found.append(mu.ref)
        if found:
            return min(found)
    return None


def has_leaf_on_right(p: TransversePath) -> Optional[LeafRef]:
    return _side_leaf(p, Side.RIGHT)


def has_leaf_on_left(p: TransversePath) -> Optional[LeafRef]:
    return _side_leaf(p, Side.LEFT)


@dataclass(frozen=True)
class PeriodicPath:
    """Bi-infinite chain ``base``, T^s(base), T^2s(base), ... in an annulus chart."""

    chart: FoliationChart
    base: tuple
    shift: int

    @property
    def period(self) -> int:
        return len(self.base)

    def leaf(self, i: int) -> LeafRef:
        """Leaf at integer position i of the infinite chain (position 0 = base[0])."""
        q, r = divmod(i, len(self.base))
        return self.base[r].shifted(q * self.shift)

    def unroll(self, start: int, stop: int) -> tuple:
        return tuple(self.leaf(i) for i in range(start, stop))

    def unrolled_path(self, periods_before: int, periods_after: int) -> TransversePath:
        m = len(self.base)
        return TransversePath(self.chart, self.unroll(-periods_before * m, periods_after * m))

    def shifted(self, k: int) -> "PeriodicPath":
        return PeriodicPath(self.chart, tuple(r.shifted(k) for r in self.base), self.shift)

    def occurs(self, ref: LeafRef) -> Optional[int]:
        """Position of ``ref`` in the infinite chain, if it occurs."""
        ref = LeafRef.parse(ref)
        m = len(self.base)
        for i, b in enumerate(self.base):
            if b.name == ref.name and (ref.shift - b.shift) % self.shift == 0:
                return i + m * ((ref.shift - b.shift) // self.shift)
        return None

    def __str__(self):
        return f"({' '.join(str(r) for r in self.base)}) shift {self.shift}"


def periodic_path(chart: FoliationChart, base, shift: int) -> PeriodicPath:
    if not chart.is_annulus:
        raise InvalidPath("periodic paths need an annulus chart")
    refs = tuple(LeafRef.parse(r) for r in base)
    if not refs:
        raise InvalidPath("empty period")
    if shift == 0:
        raise InvalidPath("shift must be nonzero")
    doubled = refs + tuple(r.shifted(shift) for r in refs)
    check_chain(chart, doubled)
    return PeriodicPath(chart, refs, shift)


def _is_full_chart_line(p: TransversePath) -> bool:
    first, last = p.chart.chord(p.leaves[0]), p.chart.chord(p.leaves[-1])
    for mu in p.chart.candidates((first, last)):
        if mu.ref == first.ref or mu.ref == last.ref:
            continue
        if side_of(first, mu) is Side.RIGHT or side_of(last, mu) is Side.LEFT:
            return False
    return True


def complement_side(line: Union[PeriodicPath, TransversePath], mu) -> ComplementSide:
    """Locate a chart chord relative to a line.

    A line is either a periodic path or a finite chain whose first leaf has no
    chart chord on its right and whose last leaf has none on its left, so the
    chain runs across the whole chart.  An unmet chord sits in the slab between
    two consecutive leaves and is classified by :func:`slab_side`.
    """
    chart = line.chart
    mu_ref = LeafRef.parse(mu)
    muc = chart.chord(mu_ref)
    if isinstance(line, PeriodicPath):
        if line.occurs(mu_ref) is not None:
            return ComplementSide.MET
        m = line.period
        limit = chart.window * m
        # R(leaf i) grows with i; find the consecutive pair around mu
        lo_i, hi_i = 0, 1
        while side_of(chart.chord(line.leaf(lo_i)), muc) is Side.RIGHT:
            lo_i -= m
            if -lo_i > limit:
                raise WindowExceeded("chord is not bracketed by the line within the window")
        while side_of(chart.chord(line.leaf(hi_i)), muc) is Side.LEFT:
            hi_i += m
            if hi_i > limit:
                raise WindowExceeded("chord is not bracketed by the line within the window")
        chain = [chart.chord(line.leaf(i)) for i in range(lo_i, hi_i + 1)]
    else:
        if len(set(line.leaves)) != len(line.leaves):
            raise NotALine("the chain meets a leaf twice")
        if mu_ref in line.leaves:
            return ComplementSide.MET
        if not _is_full_chart_line(line):
            raise NotALine("the chain does not cross the whole chart")
        chain = line.chords()
    for lo, hi in zip(chain, chain[1:]):
        s = slab_side(lo, hi, muc)
        if s is Side.RIGHT:
            return ComplementSide.RIGHT
        if s is Side.LEFT:
            return ComplementSide.LEFT
    raise NotALine(f"{mu_ref} is not bracketed by the line")

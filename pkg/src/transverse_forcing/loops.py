"""Loop-level invariants: equivalence, primality, self/width, reduction to simple loops."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .chords import FoliationChart, LeafRef
from .errors import ChartMismatch, InvalidPath, WindowExceeded
from .paths import PeriodicPath, periodic_path
from .transversality import IntersectionWitness, self_transverse


@dataclass(frozen=True)
class TransverseLoop:
    """A loop given by one period of its natural lift.

    Chart-backed loops carry leaf references and the deck power ``shift`` that
    closes the period.  Symbolic loops (``chart`` is None) carry opaque labels,
    for instance subpath indices of a crossing diagram; their shift is 0.
    """

    chart: Optional[FoliationChart]
    period: tuple
    shift: int = 0

    @property
    def periodic(self) -> PeriodicPath:
        if self.chart is None:
            raise InvalidPath("symbolic loops have no periodic lift")
        return PeriodicPath(self.chart, self.period, self.shift)

    def __str__(self):
        body = " ".join(str(x) for x in self.period)
        return f"({body})" + (f" shift {self.shift}" if self.chart is not None else "")


def loop_from_periodic(p: PeriodicPath) -> TransverseLoop:
    return TransverseLoop(p.chart, p.base, p.shift)


def make_loop(chart: FoliationChart, period, shift: int = 1) -> TransverseLoop:
    return loop_from_periodic(periodic_path(chart, period, shift))


def symbolic_loop(labels: Iterable) -> TransverseLoop:
    labels = tuple(labels)
    if not labels:
        raise InvalidPath("empty loop")
    return TransverseLoop(None, labels, 0)


def _rotations(loop: TransverseLoop):
    per, s = loop.period, loop.shift
    m = len(per)
    for j in range(m):
        if loop.chart is None:
            yield per[j:] + per[:j]
        else:
            chain = per[j:] + tuple(r.shifted(s) for r in per[:j])
            base = chain[0].shift
            yield tuple(LeafRef(r.name, r.shift - base) for r in chain)


def canonical_form(loop: TransverseLoop) -> tuple:
    """Least rotation of the period, normalized by a deck power."""
    return (loop.shift, min(_rotations(loop)))


def loop_equivalent(g1: TransverseLoop, g2: TransverseLoop) -> bool:
    if g1.chart != g2.chart:
        raise ChartMismatch("loops live on different charts")
    return canonical_form(g1) == canonical_form(g2)


def _repeats(period: tuple, shift: int, chart_backed: bool, n: int) -> bool:
    m = len(period)
    if m % n:
        return False
    step = m // n
    if chart_backed:
        if shift % n:
            return False
        d = shift // n
        return all(period[i + step] == period[i].shifted(d) for i in range(m - step))
    return all(period[i + step] == period[i] for i in range(m - step))


def is_prime(loop: TransverseLoop) -> bool:
    """False when the period is an n-fold repetition compatible with the deck action."""
    m = len(loop.period)
    backed = loop.chart is not None
    return not any(_repeats(loop.period, loop.shift, backed, n) for n in range(2, m + 1))


def primitive_loop(loop: TransverseLoop) -> TransverseLoop:
    m = len(loop.period)
    backed = loop.chart is not None
    for n in range(m, 1, -1):
        if _repeats(loop.period, loop.shift, backed, n):
            return TransverseLoop(loop.chart, loop.period[: m // n], loop.shift // n if backed else 0)
    return loop


@dataclass(frozen=True)
class LoopStats:
    width: int
    self_count: int
    m_gamma: int
    window_used: int


def m_gamma(self_count: int, width: int) -> int:
    return self_count * width * (width + 1) + 1


def _run_width(p: PeriodicPath, w: IntersectionWitness) -> int:
    """Largest number of T-translates of one leaf inside the common run of w."""
    s = abs(p.shift)
    counts = {}
    for i in range(w.a1 + 1, w.b1):
        r = p.leaf(i)
        key = (r.name, r.shift % s)
        counts[key] = counts.get(key, 0) + 1
    return max(counts.values(), default=0)


def loop_stats(loop: TransverseLoop, window: Optional[int] = None) -> LoopStats:
    """self, width and M for a chart-backed loop.

    Deck powers are taken modulo the loop's own shift, so each translate class
    is counted once.
    """
    p = loop.periodic
    window = p.chart.window if window is None else window
    if window > p.chart.window:
        raise WindowExceeded(f"window {window} exceeds chart window {p.chart.window}")
    ws = self_transverse(p, window)
    classes = {w.deck_power % abs(p.shift) for w in ws}
    width = max((_run_width(p, w) for w in ws), default=0)
    return LoopStats(width, len(classes), m_gamma(len(classes), width), window)


@dataclass(frozen=True)
class SimpleLoop:
    loop: TransverseLoop


@dataclass(frozen=True)
class Obstruction:
    witness: IntersectionWitness


def pb_reduce(p: PeriodicPath, window: Optional[int] = None) -> Union[SimpleLoop, Obstruction]:
    """Reduce a periodic path without transverse self-intersection to a simple loop.

    The reduced period is the chain up to the first deck translate of its first
    leaf, i.e. the primitive period of the line.
    """
    window = p.chart.window if window is None else window
    ws = self_transverse(p, window)
    if ws:
        return Obstruction(ws[0])
    return SimpleLoop(primitive_loop(loop_from_periodic(p)))


def meets_leaves_once(p: PeriodicPath, window: Optional[int] = None) -> bool:
    """Every lifted leaf occurs at most once in the unrolled chain over the window."""
    window = p.chart.window if window is None else window
    periods = max(1, window // max(1, abs(p.shift)))
    chain = p.unroll(-periods * p.period, (periods + 1) * p.period)
    return len(set(chain)) == len(chain)


def ths_certificate(classes: Sequence) -> bool:
    """Integer classes span the plane over the rationals and sum to zero."""
    pairs = [(Fraction(a), Fraction(b)) for a, b in classes]
    if not pairs:
        return False
    total = (sum(a for a, _ in pairs), sum(b for _, b in pairs))
    spans = any(a1 * b2 - a2 * b1 != 0 for a1, b1 in pairs for a2, b2 in pairs)
    return spans and total == (0, 0)

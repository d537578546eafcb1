"""Chord charts: finite arrangements of disjoint oriented chords.

Two models are supported.  In the disk model a chord joins two points of the
boundary circle, coordinatized by exact rationals modulo 1 and read
counterclockwise.  In the annulus-cover model the boundary is a pair of lines,
``Bottom`` and ``Top``, and the deck transformation translates both lines by
+1.  The counterclockwise boundary order of the strip runs along the bottom
line in increasing x and back along the top line in decreasing x, so both
models reduce to a linear order of boundary keys that is cut at a point never
used by a chord.

All predicates are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

from .errors import (
    DuplicateEndpoint,
    DuplicateId,
    InterleavingChords,
    NotDisjoint,
    UnknownChord,
    WrongModel,
)

DEFAULT_WINDOW = 16


class Model(Enum):
    DISK = "disk"
    ANNULUS = "annulus"


class Line(Enum):
    BOTTOM = "B"
    TOP = "T"


class Side(Enum):
    RIGHT = "RightSide"
    LEFT = "LeftSide"

    def flipped(self) -> "Side":
        return Side.LEFT if self is Side.RIGHT else Side.RIGHT


class Inclusion(Enum):
    R_IN_R_MU = "RInRμ"
    R_MU_IN_R = "RμInRλ"
    NOT_COMPARABLE = "NotComparable"


@dataclass(frozen=True)
class CircleCoord:
    """A boundary point.  ``line`` is None in the disk model."""

    value: Fraction
    line: Optional[Line] = None

    def __post_init__(self):
        v = Fraction(self.value)
        if self.line is None:
            v = v - math.floor(v)
        object.__setattr__(self, "value", v)

    @property
    def key(self) -> tuple:
        if self.line is None or self.line is Line.BOTTOM:
            return (0, self.value)
        return (1, -self.value)

    def shifted(self, k: int) -> "CircleCoord":
        if self.line is None:
            raise WrongModel("deck shift is only defined in the annulus-cover model")
        return CircleCoord(self.value + k, self.line)

    def __str__(self):
        if self.line is None:
            return str(self.value)
        return f"{self.line.value}:{self.value}"

    @classmethod
    def parse(cls, text) -> "CircleCoord":
        if isinstance(text, CircleCoord):
            return text
        if isinstance(text, (int, Fraction)):
            return cls(Fraction(text))
        s = str(text).strip()
        if ":" in s:
            tag, num = s.split(":", 1)
            tag = tag.strip().upper()
            if tag not in ("B", "T"):
                raise ValueError(f"unknown boundary line tag {tag!r}")
            return cls(Fraction(num.strip()), Line(tag))
        return cls(Fraction(s))


class LeafRef(NamedTuple):
    """Identifier of a chart chord: base name plus deck power."""

    name: str
    shift: int = 0

    def shifted(self, k: int) -> "LeafRef":
        return LeafRef(self.name, self.shift + k)

    def __str__(self):
        return self.name if self.shift == 0 else f"{self.name}@{self.shift}"

    @classmethod
    def parse(cls, text) -> "LeafRef":
        if isinstance(text, LeafRef):
            return text
        if isinstance(text, tuple):
            return cls(str(text[0]), int(text[1]))
        s = str(text).strip()
        if "@" in s:
            name, k = s.rsplit("@", 1)
            return cls(name, int(k))
        return cls(s, 0)


@dataclass(frozen=True)
class Chord:
    ref: LeafRef
    tail: CircleCoord
    head: CircleCoord

    @property
    def name(self) -> str:
        return self.ref.name

    def reversed(self, name: Optional[str] = None) -> "Chord":
        ref = LeafRef(name, self.ref.shift) if name else self.ref
        return Chord(ref, self.head, self.tail)

    def extent(self) -> tuple:
        return (min(self.tail.value, self.head.value), max(self.tail.value, self.head.value))

    def __str__(self):
        return f"{self.ref}[{self.tail}->{self.head}]"


def deck_shift(c: Chord, k: int) -> Chord:
    """Translate a strip chord by the deck power ``k``."""
    if c.tail.line is None:
        raise WrongModel("deck_shift needs an annulus-cover chord")
    if k == 0:
        return c
    return Chord(c.ref.shifted(k), c.tail.shifted(k), c.head.shifted(k))


def _inside_arc(p, start, end) -> bool:
    """True when key ``p`` lies strictly inside the counterclockwise arc start -> end."""
    if start < end:
        return start < p < end
    return p > start or p < end


def shares_endpoint(c: Chord, d: Chord) -> bool:
    ck = {c.tail.key, c.head.key}
    return bool(ck & {d.tail.key, d.head.key})


def interleave(c: Chord, d: Chord) -> bool:
    a, b = sorted((c.tail.key, c.head.key))
    x, y = sorted((d.tail.key, d.head.key))
    return (a < x < b < y) or (x < a < y < b)


def disjoint(c: Chord, d: Chord) -> bool:
    return not shares_endpoint(c, d) and not interleave(c, d)


def side_of(lam: Chord, mu: Chord) -> Side:
    """Which side of ``lam`` contains ``mu``.

    The right region of a chord is the one bounded by the counterclockwise
    boundary arc running from its tail to its head.
    """
    t, h = lam.tail.key, lam.head.key
    p, q = mu.tail.key, mu.head.key
    if t in (p, q) or h in (p, q):
        raise NotDisjoint(f"{lam.ref} and {mu.ref} share an endpoint or coincide")
    in_p = _inside_arc(p, t, h)
    in_q = _inside_arc(q, t, h)
    if in_p and in_q:
        return Side.RIGHT
    if not in_p and not in_q:
        return Side.LEFT
    raise NotDisjoint(f"{lam.ref} and {mu.ref} cross")


def comparable(lam: Chord, mu: Chord) -> Inclusion:
    """Inclusion relation between the right regions of two disjoint chords."""
    s_lm = side_of(lam, mu)
    s_ml = side_of(mu, lam)
    if s_ml is Side.RIGHT and s_lm is Side.LEFT:
        return Inclusion.R_IN_R_MU
    if s_lm is Side.RIGHT and s_ml is Side.LEFT:
        return Inclusion.R_MU_IN_R
    return Inclusion.NOT_COMPARABLE


def right_inside(lam: Chord, mu: Chord) -> bool:
    """R(lam) is a proper subset of R(mu)."""
    return comparable(lam, mu) is Inclusion.R_IN_R_MU


def separates(psi: Chord, lam: Chord, mu: Chord) -> bool:
    return side_of(psi, lam) is not side_of(psi, mu)


def _coerce_record(rec):
    if isinstance(rec, Chord):
        return rec.ref.name, rec.tail, rec.head
    if isinstance(rec, dict):
        return str(rec["id"]), CircleCoord.parse(rec["tail"]), CircleCoord.parse(rec["head"])
    name, tail, head = rec
    return str(name), CircleCoord.parse(tail), CircleCoord.parse(head)


@dataclass(frozen=True)
class FoliationChart:
    """An immutable, validated chord chart.

    In the annulus model only the base chords (deck power 0) are stored; every
    translate is available through :meth:`chord`.  ``window`` bounds the deck
    powers that searches are allowed to use.
    """

    model: Model
    chords: tuple
    window: int = DEFAULT_WINDOW
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {c.ref.name: c for c in self.chords})

    @property
    def is_annulus(self) -> bool:
        return self.model is Model.ANNULUS

    def names(self) -> list:
        return [c.ref.name for c in self.chords]

    def __contains__(self, ref) -> bool:
        ref = LeafRef.parse(ref)
        if ref.name not in self._index:
            return False
        return self.is_annulus or ref.shift == 0

    def chord(self, ref) -> Chord:
        ref = LeafRef.parse(ref)
        base = self._index.get(ref.name)
        if base is None:
            raise UnknownChord(f"no chord named {ref.name!r} in chart")
        if ref.shift == 0:
            return base
        if not self.is_annulus:
            raise UnknownChord(f"{ref} has a deck power but the chart is a disk chart")
        return deck_shift(base, ref.shift)

    def with_window(self, window: int) -> "FoliationChart":
        return FoliationChart(self.model, self.chords, window)

    def candidates(self, around: Sequence[Chord]) -> Iterator[Chord]:
        """Chart chords that could separate, or sit between, the given chords.

        In the disk model that is every chord.  In the strip, a chord whose
        x-extent misses the hull of ``around`` cannot separate any two of them.
        """
        if not self.is_annulus:
            yield from self.chords
            return
        lo = min(c.extent()[0] for c in around)
        hi = max(c.extent()[1] for c in around)
        for base in self.chords:
            blo, bhi = base.extent()
            for j in range(math.ceil(lo - bhi), math.floor(hi - blo) + 1):
                yield deck_shift(base, j)


def _check_pair(c: Chord, d: Chord):
    if shares_endpoint(c, d):
        raise DuplicateEndpoint(f"{c.ref} and {d.ref} share an endpoint")
    if interleave(c, d):
        raise InterleavingChords(f"{c.ref} and {d.ref} cross")


def build_chart(records: Iterable, model=Model.DISK, window: int = DEFAULT_WINDOW) -> FoliationChart:
    """Validate chord records and return a chart.

    A record is a ``Chord``, a mapping with ``id``/``tail``/``head`` keys, or an
    ``(id, tail, head)`` triple; coordinates may be strings like ``"3/8"`` or
    ``"B:1/2"``.
    """
    model = Model(model)
    chords = []
    seen = set()
    for rec in records:
        name, tail, head = _coerce_record(rec)
        if name in seen:
            raise DuplicateId(f"chord id {name!r} used twice")
        seen.add(name)
        if "@" in name:
            raise ValueError(f"chord id {name!r} may not contain '@'")
        strip = model is Model.ANNULUS
        for pt in (tail, head):
            if strip and pt.line is None:
                raise WrongModel(f"chord {name!r}: annulus coordinates need a B:/T: tag")
            if not strip and pt.line is not None:
                raise WrongModel(f"chord {name!r}: disk coordinates take no line tag")
        if tail.key == head.key:
            raise DuplicateEndpoint(f"chord {name!r} has tail == head")
        chords.append(Chord(LeafRef(name), tail, head))

    if model is Model.DISK:
        for i, c in enumerate(chords):
            for d in chords[i + 1:]:
                _check_pair(c, d)
    else:
        for i, c in enumerate(chords):
            clo, chi = c.extent()
            for d in chords[i:]:
                dlo, dhi = d.extent()
                for j in range(math.ceil(clo - dhi), math.floor(chi - dlo) + 1):
                    if d is c and j == 0:
                        continue
                    _check_pair(c, deck_shift(d, j))
    chords.sort(key=lambda c: c.ref.name)
    return FoliationChart(model, tuple(chords), window)

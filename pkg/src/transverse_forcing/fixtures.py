"""Built-in fixtures: the four crossing diagrams, their matrices, and a small strip chart."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .chords import FoliationChart, Model, build_chart
from .paths import TransversePath, validate_path
from .subshift import CrossingDiagram, IncidenceMatrix

EXAMPLE_DIAGRAMS: Dict[int, CrossingDiagram] = {
    1: CrossingDiagram(2, (3, 4, 1, 2), {1: 1, 2: 4}),
    2: CrossingDiagram(2, (4, 3, 2, 1), {1: 4, 2: 3}),
    3: CrossingDiagram(2, (3, 4, 1, 2), {1: 1, 2: 4}, frozenset({1, 2, 3, 4})),
    4: CrossingDiagram(3, (5, 3, 2, 6, 1, 4), {1: 1, 2: 2, 4: 6}),
}

_EX1_LEFT = ("01010", "00100", "00010", "00101", "00000")
_EX1_RIGHT = ("01000", "00101", "01010", "00001", "00000")
_EX2_LEFT = ("01000", "00100", "00110", "01001", "00000")
_EX2_RIGHT = ("01001", "00110", "00010", "00001", "00000")
_EX4_LEFT = ("0100010", "0011000", "0001000", "0000100", "0000010", "0000101", "0000000")
_EX4_RIGHT = ("0100000", "0010000", "0011000", "0000101", "0100010", "0000001", "0000000")


def _chain(dim: int) -> tuple:
    return tuple("".join("1" if j == i + 1 else "0" for j in range(dim)) for i in range(dim))


_RAW = {
    1: (_chain(5), _EX1_LEFT, _EX1_RIGHT),
    2: (_chain(5), _EX2_LEFT, _EX2_RIGHT),
    3: (("01010", "00101", "01010", "00101", "00000"), _EX1_LEFT, _EX1_RIGHT),
    4: (_chain(7), _EX4_LEFT, _EX4_RIGHT),
}

EXPECTED_MATRICES: Dict[int, Tuple[IncidenceMatrix, IncidenceMatrix, IncidenceMatrix]] = {
    k: tuple(IncidenceMatrix.from_strings(label, rows) for label, rows in zip(("Strong", "Left", "Right"), v))
    for k, v in _RAW.items()
}

# real root of X^3 - X^2 - 1
CUBIC_ROOT = 1.465571231876768


@dataclass(frozen=True)
class ExpectedRadius:
    example: int
    label: str
    value: float
    exact: Optional[str] = None
    order: int = 1


EXPECTED_RADII = (
    ExpectedRadius(1, "Left", 1.0, "exact 1"),
    ExpectedRadius(1, "Right", 1.0, "exact 1"),
    ExpectedRadius(2, "Left", CUBIC_ROOT),
    ExpectedRadius(2, "Right", 0.0, "exact 0"),
    ExpectedRadius(3, "Strong", math.sqrt(2)),
)


def strip_demo_chart(window: int = 16) -> FoliationChart:
    """Verticals v (x=0 mod 1) plus four arches per period.

    ``bs``/``ts`` are start arches on the bottom/top line, ``be``/``te`` end
    arches.  A chain entering from a start arch and leaving through an end
    arch crosses the verticals left to right.
    """
    return build_chart(
        [
            ("v", "T:0", "B:0"),
            ("bs", "B:1/8", "B:2/8"),
            ("be", "B:4/8", "B:3/8"),
            ("ts", "T:2/8", "T:1/8"),
            ("te", "T:3/8", "T:4/8"),
        ],
        Model.ANNULUS,
        window,
    )


def demo_crossing_pair(chart: Optional[FoliationChart] = None) -> Tuple[TransversePath, TransversePath]:
    """Two paths crossing positively at v@1 and both reaching v@2."""
    chart = chart or strip_demo_chart()
    return (
        validate_path(chart, ["bs", "v@1", "v@2", "te@2"]),
        validate_path(chart, ["ts", "v@1", "v@2", "be@2"]),
    )


def demo_self_crossing_path(chart: Optional[FoliationChart] = None) -> TransversePath:
    """Both ends on bottom arches, so the path crosses its deck translate."""
    chart = chart or strip_demo_chart()
    return validate_path(chart, ["bs", "v@1", "v@2", "v@3", "be@3"])


def example2_binding() -> Dict[int, tuple]:
    """Segments of the Example 2 path on the demo chart, cut at v@1 .. v@4."""
    return {
        0: ("bs", "v@1"),
        1: ("v@1", "v@2"),
        2: ("v@2", "v@3"),
        3: ("v@3", "v@4"),
        4: ("v@4", "be@4"),
    }


# Example 2 loop gamma_1 gamma_2 gamma_3 split at its self-intersection:
# X = gamma_2 and Y = gamma_3 gamma_1 give the two rotated loops XY and YX.
EXAMPLE2_BLOCKS = ((2, 3, 1), (3, 1, 2))

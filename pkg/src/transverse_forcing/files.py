"""JSON file formats for charts, paths, loops and crossing diagrams.

Chart::

    {"model": "disk" | "annulus", "window": 16,
     "chords": [{"id": "a", "tail": "1/8", "head": "3/8"}, ...]}

Annulus coordinates carry a line tag, e.g. ``"B:1/2"`` or ``"T:0"``.

Path (a loop file is a path file with ``shift``)::

    {"chart": "chart.json" | {...inline chart...},
     "leaves": ["a", "v@1", ...], "shift": 1, "order": 3, "mode": "Exact"}

Diagram::

    {"r": 2, "sigma": [3, 4, 1, 2],
     "pairs": [{"i": 1, "kind": "pos@i", "strong": [1]},
               {"i": 2, "kind": "pos@j"}]}

``kind`` is ``"non"``, ``"pos@i"`` (positive at encounter i), ``"pos@j"``
(positive at encounter sigma(i)) or ``"pos@<n>"`` naming the encounter.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .chords import FoliationChart, Model, build_chart
from .errors import ChartFormatError, InvalidDiagram
from .paths import PeriodicPath, TransversePath, periodic_path, validate_path
from .subshift import CrossingDiagram


def _load_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ChartFormatError(f"{path}: {exc}") from exc
    except OSError as exc:
        raise ChartFormatError(f"{path}: {exc.strerror}") from exc


def chart_from_dict(data: dict) -> FoliationChart:
    if not isinstance(data, dict) or "chords" not in data:
        raise ChartFormatError("chart needs a 'chords' list")
    try:
        model = Model(data.get("model", "disk"))
    except ValueError as exc:
        raise ChartFormatError(f"unknown model {data.get('model')!r}") from exc
    window = int(data.get("window", 16))
    try:
        return build_chart(data["chords"], model, window)
    except (KeyError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise ChartFormatError(f"bad chord record: {exc}") from exc


def load_chart(path) -> FoliationChart:
    return chart_from_dict(_load_json(path))


@dataclass(frozen=True)
class PathFile:
    path: Union[TransversePath, PeriodicPath]
    order: Optional[int] = None
    mode: str = "Exact"


def load_path(path, chart: Optional[FoliationChart] = None) -> PathFile:
    """Read a path or loop file; ``chart`` overrides the file's own chart entry."""
    data = _load_json(path)
    if not isinstance(data, dict) or "leaves" not in data:
        raise ChartFormatError(f"{path}: path file needs a 'leaves' list")
    if chart is None:
        ref = data.get("chart")
        if isinstance(ref, dict):
            chart = chart_from_dict(ref)
        elif isinstance(ref, str):
            chart = load_chart(Path(path).parent / ref)
        else:
            raise ChartFormatError(f"{path}: no chart given")
    if "window" in data:
        chart = chart.with_window(int(data["window"]))
    leaves = data["leaves"]
    if "shift" in data:
        p = periodic_path(chart, leaves, int(data["shift"]))
    else:
        p = validate_path(chart, leaves)
    order = data.get("order")
    return PathFile(p, None if order is None else int(order), data.get("mode", "Exact"))


def diagram_from_dict(data: dict) -> CrossingDiagram:
    try:
        r = int(data["r"])
        sigma = tuple(int(x) for x in data["sigma"])
        pairs = data.get("pairs", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidDiagram(f"diagram needs 'r' and 'sigma': {exc}") from exc
    if len(sigma) != 2 * r:
        raise InvalidDiagram(f"sigma must list {2 * r} images")
    positive, strong = {}, set()
    for rec in pairs:
        i = int(rec["i"])
        if not 1 <= i <= 2 * r:
            raise InvalidDiagram(f"pair index {i} out of range")
        j = sigma[i - 1]
        kind = str(rec.get("kind", "non"))
        if kind == "non":
            pos = None
        elif kind == "pos@i":
            pos = i
        elif kind == "pos@j":
            pos = j
        elif kind.startswith("pos@"):
            pos = int(kind[4:])
        else:
            raise InvalidDiagram(f"unknown pair kind {kind!r}")
        if pos is not None:
            positive[min(i, j)] = pos
        strong.update(int(e) for e in rec.get("strong", []))
    return CrossingDiagram(r, sigma, positive, frozenset(strong))


def diagram_to_dict(d: CrossingDiagram) -> dict:
    pairs = []
    for e in range(1, d.size + 1):
        f = d.partner(e)
        if e > f:
            continue
        pos = d.positive.get(e)
        kind = "non" if pos is None else ("pos@i" if pos == e else "pos@j")
        rec = {"i": e, "kind": kind}
        flags = sorted(x for x in (e, f) if x in d.strong)
        if flags:
            rec["strong"] = flags
        pairs.append(rec)
    return {"r": d.r, "sigma": list(d.sigma), "pairs": pairs}


def load_diagram(path) -> CrossingDiagram:
    return diagram_from_dict(_load_json(path))

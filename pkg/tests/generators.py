"""Random charts, chains and diagrams for property tests."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List

import numpy as np

from transverse_forcing.chords import FoliationChart, LeafRef, Model, Side, build_chart, deck_shift, side_of
from transverse_forcing.paths import TransversePath, periodic_path
from transverse_forcing.subshift import CrossingDiagram


def _dyck_pairs(rng: random.Random, n: int) -> list:
    """Random non-crossing perfect matching on 2n points."""
    word = [1] * n + [-1] * n
    while True:
        rng.shuffle(word)
        depth = 0
        for x in word:
            depth += x
            if depth < 0:
                break
        else:
            break
    stack, pairs = [], []
    for i, x in enumerate(word):
        if x == 1:
            stack.append(i)
        else:
            pairs.append((stack.pop(), i))
    return pairs


def _positions(rng: random.Random, m: int, lo=Fraction(0), hi=Fraction(1)) -> List[Fraction]:
    scale = 100 * m
    cuts = sorted(rng.sample(range(1, scale), m))
    return [lo + (hi - lo) * Fraction(c, scale) for c in cuts]


def random_disk_chart(rng: random.Random, n_chords: int, prefix: str = "c", flow: float = 0.7) -> FoliationChart:
    """Random disjoint chords.

    With probability ``flow`` the chords are oriented as one flow through a
    random central chord (a few reversed), which gives long chains and many
    branch points; otherwise orientations are independent coin flips.
    """
    m = 2 * n_chords
    pos = _positions(rng, m)
    rot = Fraction(rng.randrange(100 * m), 100 * m)
    recs = []
    for k, (a, b) in enumerate(_dyck_pairs(rng, n_chords)):
        if rng.random() < 0.5:
            a, b = b, a
        recs.append((f"{prefix}{k}", (pos[a] + rot) % 1, (pos[b] + rot) % 1))
    chart = build_chart(recs, Model.DISK)
    if rng.random() >= flow:
        return chart
    hub = rng.choice(chart.chords)
    out = []
    for c in chart.chords:
        if c is not hub:
            want = Side.RIGHT if side_of(hub, c) is Side.LEFT else Side.LEFT
            if side_of(c, hub) is not want or rng.random() < 0.1:
                c = c.reversed()
        out.append(c)
    return build_chart(out, Model.DISK)


def random_strip_chart(rng: random.Random, verticals: int, arches: int, window: int = 12) -> FoliationChart:
    """One period of verticals (all crossing left to right) plus arches in the gaps.

    Bottom and top feet of the verticals are increasing in (0, 1), so no chord
    meets a translate.  Arches sit on one line inside one gap.
    """
    bottoms = _positions(rng, verticals)
    tops = _positions(rng, verticals)
    flip = rng.random() < 0.5
    recs = []
    for k, (b, t) in enumerate(zip(bottoms, tops)):
        tail, head = (f"T:{t}", f"B:{b}") if not flip else (f"B:{b}", f"T:{t}")
        recs.append((f"v{k}", tail, head))
    gaps = {"B": list(zip(bottoms, bottoms[1:] + [bottoms[0] + 1])), "T": list(zip(tops, tops[1:] + [tops[0] + 1]))}
    per_gap = {}
    for _ in range(arches):
        key = (rng.choice("BT"), rng.randrange(verticals))
        per_gap[key] = per_gap.get(key, 0) + 1
    idx = 0
    for (line, g), count in sorted(per_gap.items()):
        lo, hi = gaps[line][g]
        pos = _positions(rng, 2 * count, lo, hi)
        for a, b in _dyck_pairs(rng, count):
            if rng.random() < 0.5:
                a, b = b, a
            recs.append((f"a{idx}", f"{line}:{pos[a]}", f"{line}:{pos[b]}"))
            idx += 1
    return build_chart(recs, Model.ANNULUS, window)


class FaceGraph:
    """Which chords a transverse path may cross right after a given chord.

    Two chords are consecutive in a valid chain exactly when no chart chord
    separates them and the right region of the first sits inside the right
    region of the second.  Strip charts are cut to translates with
    ``|shift| <= span``; only leaves with ``|shift| <= span - 2`` are used as
    walk positions, so every possible separator is present.
    """

    def __init__(self, chart: FoliationChart, span: int = 3):
        self.chart = chart
        if chart.is_annulus:
            chords = [deck_shift(c, k) for k in range(-span, span + 1) for c in chart.chords]
            self.inner = {c.ref for c in chords if abs(c.ref.shift) <= span - 2}
        else:
            chords = list(chart.chords)
            self.inner = {c.ref for c in chords}
        # exact cyclic ranks of all endpoints, then vectorized side tests
        keys = sorted({p.key for c in chords for p in (c.tail, c.head)})
        rank = {k: i for i, k in enumerate(keys)}
        tail = np.array([rank[c.tail.key] for c in chords])
        head = np.array([rank[c.head.key] for c in chords])

        def inside(p, a, b):
            return np.where(a < b, (a < p) & (p < b), (p > a) | (p < b))

        a, b = tail[:, None], head[:, None]
        right = inside(tail[None, :], a, b) & inside(head[None, :], a, b)
        np.fill_diagonal(right, False)
        # right[k, i] != right[k, j]: chord k separates i and j
        sep = (right[:, :, None] != right[:, None, :]).sum(axis=0)
        self.refs = [c.ref for c in chords]
        self.succ = {r: [] for r in self.refs}
        self.pred = {r: [] for r in self.refs}
        for i, j in zip(*np.nonzero(~right & right.T)):
            if i == j:
                continue
            own = int(right[i, i] != right[i, j]) + int(right[j, i] != right[j, j])
            if sep[i, j] - own == 0:
                self.succ[self.refs[i]].append(self.refs[j])
                self.pred[self.refs[j]].append(self.refs[i])

    def successors(self, ref: LeafRef) -> list:
        return sorted(r for r in self.succ.get(ref, ()) if r in self.inner)

    def predecessors(self, ref: LeafRef) -> list:
        return sorted(r for r in self.pred.get(ref, ()) if r in self.inner)

    def branch_points(self) -> list:
        return sorted(
            r for r in self.inner
            if len(self.successors(r)) >= 2 and len(self.predecessors(r)) >= 2
        )

    def extend(self, rng: random.Random, core: list, before: int, after: int) -> list:
        chain = list(core)
        for _ in range(after):
            nxt = self.successors(chain[-1])
            if not nxt:
                break
            chain.append(rng.choice(nxt))
        for _ in range(before):
            prv = self.predecessors(chain[0])
            if not prv:
                break
            chain.insert(0, rng.choice(prv))
        return chain

    def walk(self, rng: random.Random, start: LeafRef, before: int, after: int) -> list:
        return self.extend(rng, [start], before, after)


def random_path(rng: random.Random, g: FaceGraph, max_len: int = 12) -> TransversePath:
    start = rng.choice(sorted(g.inner))
    n = rng.randint(1, max_len)
    before = rng.randint(0, n - 1)
    return TransversePath(g.chart, tuple(g.walk(rng, start, before, n - 1 - before)))


def maximal_path(rng: random.Random, g: FaceGraph) -> TransversePath:
    """Walk until neither a successor nor a predecessor is left."""
    start = rng.choice(sorted(g.inner))
    return TransversePath(g.chart, tuple(g.walk(rng, start, 10**6, 10**6)))


def crossing_pair(rng: random.Random, g: FaceGraph, max_len: int = 12):
    """Two random chains through a common branch leaf, leaving it on different flanks."""
    hubs = g.branch_points() or sorted(g.inner)
    phi = rng.choice(hubs)
    prv, nxt = g.predecessors(phi), g.successors(phi)
    firsts = rng.sample(prv, 2) if len(prv) >= 2 else prv * 2
    lasts = rng.sample(nxt, 2) if len(nxt) >= 2 else nxt * 2
    out = []
    for k in range(2):
        core = [phi]
        if firsts:
            core.insert(0, firsts[k])
        if lasts:
            core.append(lasts[k])
        n = rng.randint(len(core), max(len(core), max_len))
        before = rng.randint(0, n - len(core))
        out.append(TransversePath(g.chart, tuple(g.extend(rng, core, before, n - len(core) - before))))
    return out


def long_strip_path(rng: random.Random, g: FaceGraph, max_len: int = 12) -> TransversePath:
    """Strip path from an arch across more than one period, ending on an arch when possible.

    Such paths often cross one of their own deck translates.
    """
    verticals = sum(1 for n in g.chart.names() if n.startswith("v"))
    starts = [r for r in sorted(g.inner) if not r.name.startswith("v") and g.successors(r)] or sorted(g.inner)
    chain = [rng.choice(starts)]
    crossed = 0
    while len(chain) < max_len:
        nxt = g.successors(chain[-1])
        if not nxt:
            break
        ends = [r for r in nxt if not g.successors(r)]
        if crossed > verticals and ends:
            chain.append(rng.choice(ends))
            break
        pick = rng.choice([r for r in nxt if r not in ends] or nxt)
        crossed += pick.name.startswith("v")
        chain.append(pick)
    return TransversePath(g.chart, tuple(chain))


def horizontal_line(chart: FoliationChart):
    """The periodic line through the verticals of a random strip chart."""
    g = FaceGraph(chart, 4)
    start = LeafRef(min(n for n in chart.names() if n.startswith("v")))
    chain = [start]
    while True:
        chain.append(next(r for r in g.successors(chain[-1]) if r.name.startswith("v")))
        if chain[-1].name == start.name:
            break
    return periodic_path(chart, chain[:-1], chain[-1].shift - start.shift)


def random_periodic(rng: random.Random, chart: FoliationChart):
    """The line of a strip chart, as a period of one to three turns starting anywhere."""
    base = horizontal_line(chart)
    reps = rng.randint(1, 3)
    rot = rng.randrange(reps * base.period)
    return periodic_path(chart, base.unroll(rot, rot + reps * base.period), reps * base.shift)


def random_diagram(rng: random.Random, r: int, p_transverse: float = 0.7, p_strong: float = 0.4) -> CrossingDiagram:
    items = list(range(1, 2 * r + 1))
    rng.shuffle(items)
    sigma = [0] * (2 * r)
    positive, strong = {}, set()
    for a, b in zip(items[::2], items[1::2]):
        sigma[a - 1], sigma[b - 1] = b, a
        if rng.random() < p_transverse:
            positive[min(a, b)] = rng.choice((a, b))
            strong.update(e for e in (a, b) if rng.random() < p_strong)
    return CrossingDiagram(r, tuple(sigma), positive, frozenset(strong))


def forcing_cases(rng: random.Random, count: int, max_chords: int = 40, max_len: int = 12):
    """(path1, path2, witness) triples with a transverse intersection, half disk, half strip."""
    from transverse_forcing.transversality import crosses_transversally

    out = []
    disk = True
    while len(out) < count:
        if disk:
            chart = random_disk_chart(rng, rng.randint(3, max_chords))
        else:
            chart = random_strip_chart(rng, rng.randint(1, 3), rng.randint(2, 10))
        disk = not disk
        g = FaceGraph(chart)
        if not g.branch_points():
            continue
        for _ in range(3):
            p1, p2 = crossing_pair(rng, g, max_len)
            w = crosses_transversally(p1, p2)
            if w is not None and len(out) < count:
                out.append((p1, p2, w))
    return out


def self_crossing_cases(rng: random.Random, count: int, max_len: int = 12):
    """Strip paths that cross a deck translate of themselves."""
    from transverse_forcing.transversality import path_self_witnesses

    out = []
    while len(out) < count:
        chart = random_strip_chart(rng, rng.randint(1, 3), rng.randint(2, 8))
        g = FaceGraph(chart, 5)
        for _ in range(10):
            p = long_strip_path(rng, g, max_len)
            if path_self_witnesses(p) and len(out) < count:
                out.append(p)
    return out

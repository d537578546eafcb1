"""Admissibility certificates and the forcing rules that rewrite them.

Base certificates are declared, not derived: the chart has no homeomorphism
behind it.  Every rule below checks its hypotheses on the chains, builds the
new chain, validates it and attaches the order the rule guarantees.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import (
    ForcingError,
    HypothesisViolation,
    InvalidPath,
    SignViolation,
    SpliceInvalid,
    StaleWitness,
)
from .paths import PeriodicPath, TransversePath, check_chain, has_leaf_on_left, has_leaf_on_right, periodic_path
from .transversality import (
    IntersectionWitness,
    Sign,
    path_self_witnesses,
    verify_witness,
    witness_at,
)


class Mode(Enum):
    EXACT = "Exact"
    AT_MOST = "AtMost"


@dataclass(frozen=True)
class Refinement:
    """Unresolved final clause of the splice rule.

    Either one of the two spliced paths has order ``low`` or both have order
    ``high``; which branch holds depends on the dynamics.
    """

    low: int
    high: int

    def __str__(self):
        return f"{{{self.low}-or-{self.high}}}"


@dataclass(frozen=True)
class AdmissiblePath:
    path: TransversePath
    order: int
    mode: Mode = Mode.EXACT
    provenance: tuple = ()
    upgrade: Optional[str] = None

    @property
    def leaves(self):
        return self.path.leaves

    def shifted(self, k: int) -> "AdmissiblePath":
        """Deck translate; admissibility is invariant under the deck group."""
        if k == 0:
            return self
        return replace(self, path=self.path.shifted(k), provenance=self.provenance + (f"translate by {k}",))

    def describe(self) -> List[str]:
        head = f"order {self.order} ({self.mode.value}) : {self.path}"
        out = [head]
        if self.upgrade:
            out.append(f"  upgrade: {self.upgrade}")
        out.extend(f"  <- {p}" for p in self.provenance)
        return out


def _upgraded(path: TransversePath, mode: Mode):
    if mode is Mode.EXACT:
        return Mode.EXACT, None
    w = has_leaf_on_right(path)
    if w is not None:
        return Mode.EXACT, f"leaf {w} on the right"
    w = has_leaf_on_left(path)
    if w is not None:
        return Mode.EXACT, f"leaf {w} on the left"
    return Mode.AT_MOST, None


def declare_admissible(path: TransversePath, n: int, mode: Mode = Mode.EXACT) -> AdmissiblePath:
    """Axiomatic base certificate.

    An order-at-most certificate becomes exact when the path has an unmet leaf
    on either side, since a path of order at most n but not n has neither.
    """
    if not isinstance(path, TransversePath):
        raise InvalidPath("expected a TransversePath")
    if not isinstance(n, int) or n < 1:
        raise InvalidPath(f"order must be a positive integer, got {n!r}")
    try:
        check_chain(path.chart, path.leaves)
    except ForcingError as exc:
        raise InvalidPath(f"{exc.tag}: {exc}") from exc
    mode, note = _upgraded(path, Mode(mode))
    return AdmissiblePath(path, n, mode, (), note)


def _certify(chart, refs, order: int, mode: Mode, provenance: tuple) -> AdmissiblePath:
    try:
        check_chain(chart, refs)
    except ForcingError as exc:
        raise SpliceInvalid(f"{exc.tag}: {exc}") from exc
    path = TransversePath(chart, tuple(refs))
    mode, note = _upgraded(path, mode)
    return AdmissiblePath(path, order, mode, provenance, note)


def _joint_mode(*certs: AdmissiblePath) -> Mode:
    return Mode.EXACT if all(c.mode is Mode.EXACT for c in certs) else Mode.AT_MOST


@dataclass(frozen=True)
class ForceResult:
    first: AdmissiblePath
    second: AdmissiblePath
    refinement: Refinement

    def __iter__(self):
        yield self.first
        yield self.second
        yield self.refinement


def force_cross(a1: AdmissiblePath, a2: AdmissiblePath, w: IntersectionWitness) -> ForceResult:
    """Splice two transversally intersecting certificates at the common leaf."""
    if not verify_witness(a1.path, a2.path, w):
        raise StaleWitness("witness does not certify an intersection of these paths")
    c1, c2 = a1.leaves, a2.leaves
    order = a1.order + a2.order
    mode = _joint_mode(a1, a2)
    step = f"force_cross at {w.phi} (t1={w.t1}, t2={w.t2}), orders {a1.order}+{a2.order}"
    first = _certify(a1.path.chart, c1[: w.t1 + 1] + c2[w.t2 + 1:], order, mode,
                     a1.provenance + a2.provenance + (step + " [prefix 1, suffix 2]",))
    second = _certify(a1.path.chart, c2[: w.t2 + 1] + c1[w.t1 + 1:], order, mode,
                      a1.provenance + a2.provenance + (step + " [prefix 2, suffix 1]",))
    return ForceResult(first, second, Refinement(min(a1.order, a2.order), max(a1.order, a2.order)))


Item = Tuple[AdmissiblePath, int, int]


def _check_items(items: Sequence[Item]):
    r = len(items)
    if r < 2:
        raise HypothesisViolation("clause ii: at least two paths are needed")
    for i, (a, s, t) in enumerate(items):
        last = len(a.leaves) - 1
        if i == 0:
            ok = s == 0 and 0 < t < last
        elif i == r - 1:
            ok = 0 < s < t == last
        else:
            ok = 0 < s < t < last
        if not ok:
            raise HypothesisViolation(f"clause ii: index ordering fails for item {i + 1} (s={s}, t={t}, b={last})")


def _concat(items: Sequence[Item]) -> list:
    out = list(items[0][0].leaves[items[0][1]: items[0][2] + 1])
    for a, s, t in items[1:]:
        out.extend(a.leaves[s + 1: t + 1])
    return out


def chain_force(items: Sequence[Item], witnesses: Optional[Sequence[IntersectionWitness]] = None) -> AdmissiblePath:
    """Concatenate the blocks [s_i, t_i] of a family crossing at consecutive junctions.

    The hypothesis at junction i is an F-transverse intersection of the tail
    of path i from s_i with the head of path i+1 up to t_{i+1}, located at
    leaf t_i of the first and s_{i+1} of the second.  Witnesses may be given
    (indices into the full chains) or are searched for.
    """
    _check_items(items)
    prov = []
    for a, _, _ in items:
        prov.extend(a.provenance)
    for i in range(len(items) - 1):
        a, s, t = items[i]
        b, s2, t2 = items[i + 1]
        if a.leaves[t] != b.leaves[s2]:
            raise HypothesisViolation(f"clause i: junction {i + 1} leaves differ ({a.leaves[t]} vs {b.leaves[s2]})")
        tail = a.path.sub(s, len(a.leaves) - 1)
        head = b.path.sub(0, t2)
        if witnesses is not None:
            w = witnesses[i]
            ok = (
                w.t1 == t and w.t2 == s2 and w.a1 >= s and w.b2 <= t2
                and verify_witness(a.path, b.path, w)
            )
            if not ok:
                raise HypothesisViolation(f"clause i: witness {i + 1} does not certify the junction")
        else:
            if witness_at(tail, head, t - s, s2) is None:
                raise HypothesisViolation(f"clause i: no F-transverse intersection at junction {i + 1}")
        prov.append(f"chain_force step {i + 1}: junction at {a.leaves[t]}")
    order = sum(a.order for a, _, _ in items)
    mode = _joint_mode(*[a for a, _, _ in items])
    prov.append(f"chain_force over {len(items)} paths, order {'+'.join(str(a.order) for a, _, _ in items)}")
    return _certify(items[0][0].path.chart, _concat(items), order, mode, tuple(prov))


def chain_force_positive(items: Sequence[Item], witnesses: Optional[Sequence[IntersectionWitness]] = None) -> AdmissiblePath:
    """Signed variant: full paths cross positively at every junction."""
    _check_items(items)
    prov = []
    for a, _, _ in items:
        prov.extend(a.provenance)
    for i in range(len(items) - 1):
        a, s, t = items[i]
        b, s2, t2 = items[i + 1]
        if a.leaves[t] != b.leaves[s2]:
            raise HypothesisViolation(f"clause i: junction {i + 1} leaves differ")
        if witnesses is not None:
            w = witnesses[i]
            if not (w.t1 == t and w.t2 == s2 and verify_witness(a.path, b.path, w)):
                raise HypothesisViolation(f"clause i: witness {i + 1} does not certify the junction")
        else:
            w = witness_at(a.path, b.path, t, s2)
            if w is None:
                raise HypothesisViolation(f"clause i: no F-transverse intersection at junction {i + 1}")
        if w.sign is not Sign.POSITIVE:
            raise SignViolation(f"junction {i + 1} crosses negatively")
        prov.append(f"chain_force_positive step {i + 1}: positive junction at {a.leaves[t]}")
    order = sum(a.order for a, _, _ in items)
    mode = _joint_mode(*[a for a, _, _ in items])
    prov.append(f"chain_force_positive over {len(items)} paths")
    return _certify(items[0][0].path.chart, _concat(items), order, mode, tuple(prov))


def _check_self_witness(a: AdmissiblePath, w: IntersectionWitness):
    k = w.deck_power
    if k is None or k == 0:
        raise StaleWitness("a self witness needs a nonzero deck power")
    if not verify_witness(a.path, a.path.shifted(k), w):
        raise StaleWitness("witness does not certify a self-intersection of this path")
    if not w.t2 < w.t1:
        raise StaleWitness("self witness must pair an earlier position with a later one")


def self_power(a: AdmissiblePath, w: IntersectionWitness, q: int) -> Tuple[AdmissiblePath, AdmissiblePath]:
    """Repeat or excise the loop between the two visits of a self-intersection.

    ``w`` pairs position t = w.t1 of the path with position s = w.t2 of its
    translate by T = deck^k, so the leaf at t is T of the leaf at s.  The
    powered chain runs [0..s], then the block (s..t] q times, each copy
    translated by T, then the rest translated by T^(q-1).  The excised chain
    is [0..s] followed by T^-1 of (t..end].
    """
    if q < 1:
        raise HypothesisViolation("q must be at least 1")
    _check_self_witness(a, w)
    k, s, t = w.deck_power, w.t2, w.t1
    c = a.leaves
    block = c[s + 1: t + 1]
    powered = list(c[: s + 1])
    for j in range(q):
        powered.extend(r.shifted(j * k) for r in block)
    powered.extend(r.shifted((q - 1) * k) for r in c[t + 1:])
    removed = list(c[: s + 1]) + [r.shifted(-k) for r in c[t + 1:]]
    chart = a.path.chart
    p_cert = _certify(chart, powered, q * a.order, a.mode,
                      a.provenance + (f"self_power q={q} at positions {s}<{t} (deck {k})",))
    r_cert = _certify(chart, removed, a.order, a.mode,
                      a.provenance + (f"excise positions {s}<{t} (deck {k})",))
    return p_cert, r_cert


def remove_self_intersections(a: AdmissiblePath) -> AdmissiblePath:
    """Excise self-intersections leftmost first until none is left.

    First leaves are kept; the last leaf is kept up to the deck action, which is
    what equality of leaves means on the surface.
    """
    cur = a
    while True:
        ws = path_self_witnesses(cur.path)
        if not ws:
            return cur
        w = min(ws, key=lambda x: (x.t2, x.t1, x.deck_power))
        _, cur = self_power(cur, w, 1)


@dataclass(frozen=True)
class LinearAdmissibilityCertificate:
    loop: PeriodicPath
    q: int
    witnesses: tuple
    chains: tuple = field(default=(), compare=False)

    @property
    def achieved_ratio(self) -> Fraction:
        return max(Fraction(r, s) for r, s in self.witnesses)

    @property
    def satisfied(self) -> bool:
        return self.achieved_ratio >= Fraction(1, self.q)


def loop_from_recurrent_crossing(
    a1: AdmissiblePath,
    a2: AdmissiblePath,
    w: IntersectionWitness,
    repeat: Tuple[int, int],
    N: int = 8,
) -> LinearAdmissibilityCertificate:
    """Close two recurrent, transversally crossing paths into a loop.

    ``w`` is a positive witness between the paths at (t1, t2) and ``repeat`` gives
    positions t1'' > t1 and t2'' > t2 whose leaves are deck translates of the
    leaves at t1 and t2.  The loop's period is the block [t1, t1'') of the first
    path followed by the translated block [t2, t2'') of the second.  For each
    n <= N the alternating family of 2n translated paths is fed to
    :func:`chain_force`, which certifies n loop periods at order 2nq.
    """
    if w.sign is not Sign.POSITIVE or not verify_witness(a1.path, a2.path, w):
        raise HypothesisViolation("a positive witness between the two paths is required")
    if N < 1:
        raise HypothesisViolation("N must be at least 1")
    chart = a1.path.chart
    if not chart.is_annulus:
        raise HypothesisViolation("recurrence needs deck translates, which only annulus charts have")
    t1, t2 = w.t1, w.t2
    u1, u2 = repeat
    c1, c2 = a1.leaves, a2.leaves
    if not (t1 < u1 < len(c1) and t2 < u2 < len(c2)):
        raise HypothesisViolation("repeat positions must follow the crossing positions")
    l1, r1 = c1[t1], c1[u1]
    l2, r2 = c2[t2], c2[u2]
    if l1.name != r1.name or l2.name != r2.name:
        raise HypothesisViolation("repeat leaves are not deck translates of the crossing leaves")
    d1, d2 = r1.shift - l1.shift, r2.shift - l2.shift
    if d1 == 0 or d2 == 0:
        raise HypothesisViolation("repeat must move by a nonzero deck power")
    q = max(a1.order, a2.order)
    period = list(c1[t1:u1]) + [r.shifted(d1) for r in c2[t2:u2]]
    try:
        loop = periodic_path(chart, period, d1 + d2)
    except ForcingError as exc:
        raise HypothesisViolation(f"the closed block is not a valid loop: {exc.tag}") from exc
    witnesses = []
    chains = []
    for n in range(1, N + 1):
        items = []
        offset = 0
        for j in range(n):
            s1 = 0 if j == 0 else t1
            items.append((a1.shifted(offset), s1, u1))
            offset += d1
            last = j == n - 1
            items.append((a2.shifted(offset), t2, len(c2) - 1 if last else u2))
            offset += d2
        cert = chain_force(items)
        if cert.order > 2 * n * q:
            raise HypothesisViolation("order bookkeeping exceeded 2nq")
        witnesses.append((n, 2 * n * q))
        chains.append(cert)
    return LinearAdmissibilityCertificate(loop, 2 * q, tuple(witnesses), tuple(chains))

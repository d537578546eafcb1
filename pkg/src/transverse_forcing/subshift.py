"""Crossing diagrams, incidence matrices, admissible words and growth counts."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import sympy

from .chords import FoliationChart, LeafRef
from .errors import (
    ChartMismatch,
    ExplosionGuard,
    ForcingError,
    InadmissibleWord,
    InvalidDiagram,
    NoConvergence,
    SpliceInvalid,
    UnboundIndex,
)
from .loops import TransverseLoop, canonical_form, make_loop, symbolic_loop
from .paths import TransversePath, check_chain
from .transversality import Sign

DEFAULT_WORD_CAP = 10**6
DEFAULT_PALINDROME_CAP = 10


@dataclass(frozen=True)
class CrossingDiagram:
    """Double-point structure of a path cut at times t_1 < ... < t_2r.

    ``sigma[e - 1]`` is the encounter paired with encounter e.  ``positive``
    maps the smaller encounter of each transverse pair to the encounter at
    which the crossing is positive; pairs absent from it are not transverse.
    ``strong`` lists encounters carrying the strong flag.
    """

    r: int
    sigma: tuple
    positive: Mapping[int, int]
    strong: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(int(x) for x in self.sigma))
        object.__setattr__(self, "positive", dict(sorted(self.positive.items())))
        object.__setattr__(self, "strong", frozenset(self.strong))
        self.check()

    def __hash__(self):
        return hash((self.r, self.sigma, tuple(self.positive.items()), self.strong))

    @property
    def size(self) -> int:
        return 2 * self.r

    def partner(self, e: int) -> int:
        return self.sigma[e - 1]

    def pair_key(self, e: int) -> int:
        return min(e, self.partner(e))

    def check(self):
        n = self.size
        if self.r < 1 or len(self.sigma) != n:
            raise InvalidDiagram(f"sigma must list the images of 1..{n}")
        for e in range(1, n + 1):
            f = self.partner(e)
            if not 1 <= f <= n:
                raise InvalidDiagram(f"sigma({e}) = {f} is out of range")
            if f == e:
                raise InvalidDiagram(f"sigma fixes {e}")
            if self.partner(f) != e:
                raise InvalidDiagram(f"sigma is not an involution at {e}")
        for key, pos in self.positive.items():
            if self.pair_key(key) != key or pos not in (key, self.partner(key)):
                raise InvalidDiagram(f"pair {key}: positive encounter {pos} is not in the pair")
        for e in self.strong:
            if not 1 <= e <= n or self.pair_key(e) not in self.positive:
                raise InvalidDiagram(f"strong flag on encounter {e}, which is not transverse")

    def sign(self, e: int) -> Optional[Sign]:
        pos = self.positive.get(self.pair_key(e))
        if pos is None:
            return None
        return Sign.POSITIVE if pos == e else Sign.NEGATIVE


class MatrixLabel(Enum):
    STRONG = "Strong"
    LEFT = "Left"
    RIGHT = "Right"


@dataclass(frozen=True)
class IncidenceMatrix:
    label: MatrixLabel
    rows: tuple

    @property
    def dim(self) -> int:
        return len(self.rows)

    def array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)

    def extras(self) -> set:
        """Off-chain entries."""
        return {(i, j) for i, row in enumerate(self.rows) for j, v in enumerate(row) if v and j != i + 1}

    def format(self) -> List[str]:
        return ["".join(str(v) for v in row) for row in self.rows]

    @classmethod
    def from_strings(cls, label, lines: Sequence[str]) -> "IncidenceMatrix":
        return cls(MatrixLabel(label), tuple(tuple(int(ch) for ch in line) for line in lines))


def _chain_rows(dim: int) -> list:
    return [[1 if j == i + 1 else 0 for j in range(dim)] for i in range(dim)]


def build_matrices(d: CrossingDiagram) -> Tuple[IncidenceMatrix, IncidenceMatrix, IncidenceMatrix]:
    """Strong, Left and Right matrices; row i may jump to sigma(i+1)."""
    dim = d.size + 1
    strong, left, right = _chain_rows(dim), _chain_rows(dim), _chain_rows(dim)
    for i in range(d.size):
        e = i + 1
        j = d.partner(e)
        s = d.sign(e)
        if s is Sign.POSITIVE:
            left[i][j] = 1
        elif s is Sign.NEGATIVE:
            right[i][j] = 1
        if e in d.strong:
            strong[i][j] = 1
    freeze = lambda rows: tuple(tuple(r) for r in rows)  # noqa: E731
    return (
        IncidenceMatrix(MatrixLabel.STRONG, freeze(strong)),
        IncidenceMatrix(MatrixLabel.LEFT, freeze(left)),
        IncidenceMatrix(MatrixLabel.RIGHT, freeze(right)),
    )


def _check_shape(m: IncidenceMatrix, dim: int):
    if m.dim != dim or any(len(row) != dim for row in m.rows):
        raise InvalidDiagram(f"{m.label.value} matrix is not {dim}x{dim}")
    for i, row in enumerate(m.rows):
        if any(v not in (0, 1) for v in row):
            raise InvalidDiagram(f"{m.label.value} matrix has a non 0/1 entry")
        if i < dim - 1 and row[i + 1] != 1:
            raise InvalidDiagram(f"{m.label.value} matrix misses chain entry ({i},{i + 1})")
        if row[0]:
            raise InvalidDiagram(f"{m.label.value} matrix has an entry in the first column")
    if any(m.rows[-1]):
        raise InvalidDiagram(f"{m.label.value} matrix has an entry in the last row")


def decode_matrices(strong: IncidenceMatrix, left: IncidenceMatrix, right: IncidenceMatrix) -> CrossingDiagram:
    """Recover a diagram whose matrices are the given triple.

    Non-transverse pairs leave no trace in the matrices, so encounters not
    reached by any off-chain entry are paired among themselves in increasing
    order and marked non-transverse.
    """
    dim = left.dim
    if dim < 3 or dim % 2 == 0:
        raise InvalidDiagram("matrices must have odd dimension 2r+1 with r >= 1")
    for m in (strong, left, right):
        _check_shape(m, dim)
    size = dim - 1
    sigma: Dict[int, int] = {}
    signs: Dict[int, Sign] = {}

    def bind(e: int, f: int):
        if f == e or sigma.get(e, f) != f or sigma.get(f, e) != e:
            raise InvalidDiagram(f"off-chain entries disagree about the partner of encounter {e}")
        sigma[e], sigma[f] = f, e

    for m, s in ((left, Sign.POSITIVE), (right, Sign.NEGATIVE)):
        for i, j in sorted(m.extras()):
            e = i + 1
            if e in signs:
                raise InvalidDiagram(f"row {i} jumps in more than one matrix")
            bind(e, j)
            signs[e] = s
    for e, s in signs.items():
        f = sigma[e]
        if signs.get(f) is s:
            raise InvalidDiagram(f"encounters {e} and {f} carry the same sign")
    for e in list(signs):
        f = sigma[e]
        if f not in signs:
            raise InvalidDiagram(f"encounter {f} has no entry although its partner {e} does")
    strong_set = set()
    for i, j in sorted(strong.extras()):
        e = i + 1
        if e not in signs or sigma[e] != j:
            raise InvalidDiagram(f"strong entry ({i},{j}) has no signed counterpart")
        strong_set.add(e)
    free = [e for e in range(1, size + 1) if e not in sigma]
    if len(free) % 2:
        raise InvalidDiagram("odd number of unpaired encounters")
    for a, b in zip(free[::2], free[1::2]):
        bind(a, b)
    positive = {min(e, sigma[e]): e for e, s in signs.items() if s is Sign.POSITIVE}
    return CrossingDiagram(size // 2, tuple(sigma[e] for e in range(1, size + 1)), positive, frozenset(strong_set))


# spectral radius


@dataclass(frozen=True)
class RadiusReport:
    value: float
    exactness: Optional[str] = None
    polynomial: Optional[str] = None
    iterations: int = 0

    def __float__(self):
        return self.value

    def describe(self, digits: int = 12) -> str:
        if self.exactness:
            return self.exactness
        return f"{self.value:.{digits}g}"


def _as_int_matrix(P) -> np.ndarray:
    if isinstance(P, IncidenceMatrix):
        return P.array()
    a = np.array(P, dtype=np.int64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if ((a != 0) & (a != 1)).any():
        raise ValueError("expected a 0/1 matrix")
    return a


def _is_nilpotent(a: np.ndarray) -> bool:
    reach = a.copy()
    for _ in range(a.shape[0]):
        if not reach.any():
            return True
        reach = np.minimum(reach @ a, 1)
    return not reach.any()


def _perron_root(block: np.ndarray, tol: float, max_iters: int) -> Tuple[float, int]:
    """Perron root of an irreducible block via power iteration on block + I.

    Adding I makes the block primitive; Collatz-Wielandt quotients bracket
    the root from both sides, which gives the stopping rule.
    """
    b = block.astype(float) + np.eye(block.shape[0])
    x = np.ones(block.shape[0])
    for it in range(1, max_iters + 1):
        y = b @ x
        q = y / x
        lo, hi = q.min(), q.max()
        if hi - lo < tol:
            return 0.5 * (lo + hi) - 1.0, it
        x = y / y.max()
    raise NoConvergence(f"power iteration did not reach tol={tol} within max_iters={max_iters}")


def _exact_root(a: np.ndarray) -> Tuple[float, str]:
    x = sympy.Symbol("X")
    poly = sympy.Matrix(a.tolist()).charpoly(x)
    factors = [f for f, _ in sympy.factor_list(poly.as_expr())[1]]
    best = 0
    for f in factors:
        for (lo, hi), _ in sympy.Poly(f, x).intervals(eps=sympy.Rational(1, 10**15)):
            best = max(best, (lo + hi) / 2)
    best_val = float(best)
    nontrivial = " * ".join(f"({sympy.sstr(f)})" for f in factors if sympy.degree(f, x) > 1)
    return best_val, nontrivial or sympy.sstr(poly.as_expr())


def spectral_report(P, tol: float = 1e-12, max_iters: int = 100_000) -> RadiusReport:
    """Spectral radius with exactness tags.

    Nilpotent matrices give exact 0.  When every cyclic strongly connected
    component is a single cycle the radius is exactly 1.  Otherwise the
    largest Perron root over the components is found by power iteration, and
    for dimension at most 9 it is checked against the largest real root of
    the exact characteristic polynomial.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = _as_int_matrix(P)
    if _is_nilpotent(a):
        return RadiusReport(0.0, "exact 0")
    g = nx.DiGraph()
    g.add_nodes_from(range(a.shape[0]))
    g.add_edges_from(zip(*np.nonzero(a)))
    blocks = []
    for comp in nx.strongly_connected_components(g):
        nodes = sorted(comp)
        sub = a[np.ix_(nodes, nodes)]
        if sub.any():
            blocks.append(sub)
    if all((b.sum(axis=1) == 1).all() for b in blocks):
        return RadiusReport(1.0, "exact 1")
    value, iters = 0.0, 0
    for b in blocks:
        if (b.sum(axis=1) == 1).all():
            continue
        root, it = _perron_root(b, tol, max_iters)
        value, iters = max(value, root), iters + it
    poly = None
    if a.shape[0] <= 9:
        exact, poly = _exact_root(a)
        if abs(exact - value) > max(1e3 * tol, 1e-9):
            raise NoConvergence(f"power iteration gave {value!r}, characteristic polynomial gives {exact!r}")
        value = exact
    return RadiusReport(value, None, poly, iters)


def spectral_radius(P, tol: float = 1e-12, max_iters: int = 100_000) -> float:
    return spectral_report(P, tol, max_iters).value


def entropy_lower_bound(P, n: int, tol: float = 1e-12) -> float:
    """log(radius)/n, or 0 when the radius is at most 1."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rho = spectral_radius(P, tol)
    return math.log(rho) / n if rho > 1 else 0.0


def entropy_selfloop_bound(r: int):
    """Closed form log 2 / (4r) as a sympy expression."""
    if r < 1:
        raise ValueError("r must be at least 1")
    return sympy.log(2) / (4 * sympy.Integer(r))


# words


@dataclass(frozen=True)
class WordCertificate:
    word: tuple
    switches: int
    order: int


def word_count(P, length: int) -> int:
    """Number of admissible words of the given length: entry sum of P^(length-1)."""
    if length < 1:
        raise ValueError("length must be at least 1")
    a = _as_int_matrix(P).astype(object)
    return int(np.linalg.matrix_power(a, length - 1).sum()) if length > 1 else a.shape[0]


def _switches(word: Sequence[int]) -> int:
    return sum(1 for x, y in zip(word, word[1:]) if y != x + 1)


def certify_word(word: Sequence[int], n: int = 1) -> WordCertificate:
    """Switch count k and the order guaranteed for the spliced path, k·n (n when k = 0)."""
    k = _switches(word)
    return WordCertificate(tuple(word), k, max(k, 1) * n)


def admissible_words(P, length: int, n: int = 1, cap: int = DEFAULT_WORD_CAP) -> List[WordCertificate]:
    """All admissible words of the given length, in lexicographic order."""
    count = word_count(P, length)
    if count > cap:
        raise ExplosionGuard(f"{count} words of length {length} exceed the cap {cap}")
    a = _as_int_matrix(P)
    succ = [list(np.nonzero(row)[0]) for row in a]
    out = []

    def extend(word):
        if len(word) == length:
            out.append(certify_word(word, n))
            return
        for j in succ[word[-1]]:
            word.append(int(j))
            extend(word)
            word.pop()

    for i in range(a.shape[0]):
        extend([i])
    return out


def is_admissible(P, word: Sequence[int]) -> bool:
    a = _as_int_matrix(P)
    return all(0 <= i < a.shape[0] for i in word) and all(a[x, y] for x, y in zip(word, word[1:]))


# palindromes


def palindromic_words(n: int, cap: int = DEFAULT_PALINDROME_CAP) -> List[tuple]:
    """The 2^n words u·reverse(u) over {1, 2} with |u| = n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > cap:
        raise ExplosionGuard(f"n={n} exceeds the palindrome cap {cap}")
    return [u + u[::-1] for u in itertools.product((1, 2), repeat=n)]


def _align(block: Sequence[LeafRef], name: str) -> tuple:
    if block[0].name != name or block[-1].name != name or len(block) < 2:
        raise SpliceInvalid("blocks must run from the splice leaf to one of its translates")
    base = block[0].shift
    return tuple(LeafRef(r.name, r.shift - base) for r in block)


def build_palindrome_loops(block1, block2, words: Iterable[Sequence[int]]) -> List[TransverseLoop]:
    """Loops whose period is the product of the blocks named by each word.

    Blocks are either label tuples (symbolic loops) or transverse paths that
    start at the splice leaf and end at a deck translate of it.
    """
    words = list(words)
    if isinstance(block1, TransversePath) or isinstance(block2, TransversePath):
        if not (isinstance(block1, TransversePath) and isinstance(block2, TransversePath)):
            raise ChartMismatch("one block is symbolic and the other is chart-backed")
        if block1.chart != block2.chart:
            raise ChartMismatch("blocks live on different charts")
        chart = block1.chart
        name = block1.leaves[0].name
        blocks = {1: _align(block1.leaves, name), 2: _align(block2.leaves, name)}
        loops = []
        for w in words:
            period, offset = [], 0
            for sym in w:
                b = blocks[sym]
                period.extend(r.shifted(offset) for r in b[:-1])
                offset += b[-1].shift
            try:
                loops.append(make_loop(chart, period, offset))
            except ForcingError as exc:
                raise SpliceInvalid(f"{exc.tag}: {exc}") from exc
        return loops
    blocks = {1: tuple(block1), 2: tuple(block2)}
    return [symbolic_loop(itertools.chain.from_iterable(blocks[s] for s in w)) for w in words]


def count_loop_classes(loops: Iterable[TransverseLoop]) -> int:
    loops = list(loops)
    charts = {l.chart for l in loops}
    if len(charts) > 1:
        raise ChartMismatch("loops live on different charts")
    return len({canonical_form(l) for l in loops})


# binding words to a chart


def word_to_path(
    chart: FoliationChart,
    binding: Mapping[int, Sequence],
    word: Sequence[int],
    P=None,
) -> TransversePath:
    """Concatenate bound chain segments along a word.

    Segment i runs from the leaf at t_i to the leaf at t_(i+1).  Consecutive
    segments meet at a double point, so the next segment is translated by the
    deck power that carries its first leaf onto the current last leaf.
    """
    if P is not None and not is_admissible(P, word):
        raise InadmissibleWord(f"word {list(word)} has a zero transition")
    chain: List[LeafRef] = []
    for idx in word:
        if idx not in binding:
            raise UnboundIndex(f"subpath index {idx} has no bound segment")
        seg = [LeafRef.parse(x) for x in binding[idx]]
        if not chain:
            chain.extend(seg)
            continue
        last, first = chain[-1], seg[0]
        if last.name != first.name or (last.shift != first.shift and not chart.is_annulus):
            raise SpliceInvalid(f"segment {idx} starts at {first}, not at a translate of {last}")
        k = last.shift - first.shift
        chain.extend(r.shifted(k) for r in seg[1:])
    try:
        check_chain(chart, chain)
    except ForcingError as exc:
        raise SpliceInvalid(f"{exc.tag}: {exc}") from exc
    return TransversePath(chart, tuple(chain))

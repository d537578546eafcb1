"""Command-line front end.

Exit status 0 on success, 1 on an operation error (one ``Tag: message`` line
on stderr), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence

from . import fixtures
from .errors import ForcingError
from .files import load_chart, load_diagram, load_path
from .forcing import Mode, declare_admissible, force_cross
from .loops import loop_from_periodic, loop_stats, pb_reduce, SimpleLoop
from .oracle import oracle_sweep
from .paths import PeriodicPath, equivalent
from .subshift import (
    admissible_words,
    build_matrices,
    build_palindrome_loops,
    count_loop_classes,
    palindromic_words,
    spectral_report,
)
from .transversality import crosses_transversally, path_self_witnesses, self_transverse

COMMANDS = (
    "validate", "equiv", "intersect", "self-intersect", "force", "loop-stats", "pb-reduce",
    "subshift", "entropy", "words", "palindrome-growth", "oracle-sweep", "examples",
)


class UsageError(Exception):
    pass


def num(x: float, digits: int = 12) -> str:
    return f"{x:.{digits}g}"


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="transverse-forcing", description="Transverse paths on chord charts.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--chart")
    p.add_argument("--path", action="append", default=[])
    p.add_argument("--loop")
    p.add_argument("--diagram")
    p.add_argument("--window", type=int)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--cap", type=int)
    p.add_argument("--parallel", action="store_true", help="run sweeps in worker processes")
    p.add_argument("--label", choices=("Strong", "Left", "Right"), default="Left")
    p.add_argument("--length", type=int, default=4)
    p.add_argument("--order", type=int, action="append", default=[], help="base order, repeatable")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--digits", type=int, default=12)
    return p


def _need(value, flag: str):
    if not value:
        raise UsageError(f"{flag} is required")
    return value


def _chart(args):
    if not args.chart:
        return None
    chart = load_chart(args.chart)
    return chart.with_window(args.window) if args.window else chart


def _paths(args, count: int):
    if len(args.path) != count:
        raise UsageError(f"expected {count} --path argument(s)")
    chart = _chart(args)
    return [load_path(f, chart) for f in args.path]


def _loop(args) -> PeriodicPath:
    pf = load_path(_need(args.loop, "--loop"), _chart(args))
    if not isinstance(pf.path, PeriodicPath):
        raise UsageError("loop file needs a 'shift'")
    return pf.path


def cmd_validate(args) -> List[str]:
    out = []
    if args.chart:
        c = _chart(args)
        out.append(f"chart ok: {len(c.chords)} chords, model {c.model.value}, window {c.window}")
    for f in args.path + ([args.loop] if args.loop else []):
        pf = load_path(f, _chart(args))
        kind = "periodic path" if isinstance(pf.path, PeriodicPath) else "path"
        out.append(f"{kind} ok: {pf.path}")
    if not out:
        raise UsageError("nothing to validate: give --chart, --path or --loop")
    return out


def cmd_equiv(args):
    a, b = _paths(args, 2)
    return [str(equivalent(a.path, b.path)).lower()]


def cmd_intersect(args):
    a, b = _paths(args, 2)
    w = crosses_transversally(a.path, b.path)
    return ["none" if w is None else str(w)]


def cmd_self_intersect(args):
    if args.loop:
        p = _loop(args)
        ws = self_transverse(p, args.window or p.chart.window)
    else:
        (pf,) = _paths(args, 1)
        ws = path_self_witnesses(pf.path)
    return [str(w) for w in ws] or ["none"]


def cmd_force(args):
    a, b = _paths(args, 2)
    orders = args.order or [a.order or 1, b.order or 1]
    if len(orders) != 2:
        raise UsageError("give --order twice or put 'order' in the path files")
    c1 = declare_admissible(a.path, orders[0], Mode(a.mode))
    c2 = declare_admissible(b.path, orders[1], Mode(b.mode))
    w = crosses_transversally(a.path, b.path)
    if w is None:
        return ["no F-transverse intersection; nothing to force"]
    res = force_cross(c1, c2, w)
    out = [f"witness: {w}"]
    out += ["first: " + line for line in res.first.describe()]
    out += ["second: " + line for line in res.second.describe()]
    out.append(f"refinement: {res.refinement}")
    return out


def cmd_loop_stats(args):
    p = _loop(args)
    st = loop_stats(loop_from_periodic(p), args.window)
    return [f"self {st.self_count}", f"width {st.width}", f"M {st.m_gamma}", f"window {st.window_used}"]


def cmd_pb_reduce(args):
    p = _loop(args)
    res = pb_reduce(p, args.window)
    if isinstance(res, SimpleLoop):
        return [f"SimpleLoop {res.loop}"]
    return [f"Obstruction {res.witness}"]


def _matrix_block(m) -> List[str]:
    return [f"P^{m.label.value.lower()}"] + m.format()


def _summary(m, order: int, tol: float, digits: int) -> str:
    rep = spectral_report(m, tol)
    bound = math.log(rep.value) / order if rep.value > 1 else 0.0
    rec = {"label": m.label.value, "radius": rep.describe(digits), "entropy_bound": num(bound, digits)}
    if rep.polynomial:
        rec["polynomial"] = rep.polynomial
    return json.dumps(rec, sort_keys=True, ensure_ascii=False)


def cmd_subshift(args):
    d = load_diagram(_need(args.diagram, "--diagram"))
    out = []
    for m in build_matrices(d):
        out += _matrix_block(m)
    return out


def cmd_entropy(args):
    d = load_diagram(_need(args.diagram, "--diagram"))
    order = args.order[0] if args.order else 1
    out = cmd_subshift(args)
    out += [_summary(m, order, args.tol, args.digits) for m in build_matrices(d)]
    return out


def cmd_words(args):
    d = load_diagram(_need(args.diagram, "--diagram"))
    m = {x.label.value: x for x in build_matrices(d)}[args.label]
    order = args.order[0] if args.order else 1
    kw = {} if args.cap is None else {"cap": args.cap}
    words = admissible_words(m, args.length, order, **kw)
    out = [f"{len(words)} words of length {args.length} admissible for P^{args.label.lower()}"]
    out += [f"{' '.join(map(str, w.word))}  switches {w.switches}  order {w.order}" for w in words]
    return out


def _classes(n: int, cap: Optional[int]) -> int:
    kw = {} if cap is None else {"cap": cap}
    words = palindromic_words(n, **kw)
    return count_loop_classes(build_palindrome_loops(*fixtures.EXAMPLE2_BLOCKS, words))


def cmd_palindrome_growth(args):
    ns = list(range(1, args.n_max + 1))
    if args.parallel:
        with ProcessPoolExecutor() as ex:
            counts = list(ex.map(_classes, ns, [args.cap] * len(ns)))
    else:
        counts = [_classes(n, args.cap) for n in ns]
    by_n = dict(zip(ns, counts))
    out = ["n  words  classes  2^n/(L n^2)"]
    L = 2**2 / (by_n[2] * 4) if 2 in by_n else None
    for n, c in by_n.items():
        env = "-" if L is None else num(2**n / (L * n * n), args.digits)
        out.append(f"{n}  {2**n}  {c}  {env}")
    if L is not None:
        out.append(f"L = {num(L, args.digits)} (from n=2)")
    return out


def cmd_oracle_sweep(args):
    rep = oracle_sweep()
    return rep.lines(), 0 if rep.ok else 1


def cmd_examples(args):
    out = ["example  matrix  radius  expected  entropy bound (base order)  status"]
    ok = True
    for k, d in fixtures.EXAMPLE_DIAGRAMS.items():
        got = build_matrices(d)
        match = got == fixtures.EXPECTED_MATRICES[k]
        ok &= match
        out.append(f"Example {k} matrices {'OK' if match else 'MISMATCH'}")
    for e in fixtures.EXPECTED_RADII:
        m = {x.label.value: x for x in build_matrices(fixtures.EXAMPLE_DIAGRAMS[e.example])}[e.label]
        rep = spectral_report(m, args.tol)
        good = abs(rep.value - e.value) <= 1e-9 and (e.exact is None or rep.exactness == e.exact)
        ok &= good
        bound = math.log(rep.value) / e.order if rep.value > 1 else 0.0
        expected = e.exact or num(e.value, args.digits)
        radius = rep.describe(args.digits)
        if rep.polynomial:
            radius += f" (root of {rep.polynomial})"
        out.append(
            f"Example {e.example}  {e.label}  {radius}  {expected}  "
            f"{num(bound, args.digits)} (n={e.order})  {'OK' if good else 'MISMATCH'}"
        )
    out.append("ALL OK" if ok else "SOME MISMATCH")
    return out, 0 if ok else 1


HANDLERS = {
    "validate": cmd_validate,
    "equiv": cmd_equiv,
    "intersect": cmd_intersect,
    "self-intersect": cmd_self_intersect,
    "force": cmd_force,
    "loop-stats": cmd_loop_stats,
    "pb-reduce": cmd_pb_reduce,
    "subshift": cmd_subshift,
    "entropy": cmd_entropy,
    "words": cmd_words,
    "palindrome-growth": cmd_palindrome_growth,
    "oracle-sweep": cmd_oracle_sweep,
    "examples": cmd_examples,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        res = HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ForcingError as exc:
        print(f"{exc.tag}: {exc}", file=sys.stderr)
        return 1
    lines, status = res if isinstance(res, tuple) else (res, 0)
    for line in lines:
        print(line)
    return status


if __name__ == "__main__":
    sys.exit(main())

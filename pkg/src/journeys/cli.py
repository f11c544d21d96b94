"""``journeys`` command line: close, query, gen, bench, params."""
from __future__ import annotations

import argparse
import contextlib
import json
import logging
import sys
from typing import Iterator

from . import kernels
from .bench import BASELINE_NOTE, Grid, format_summary, run_bench, summarize, write_csv
from .closure import Closure, read_closure, write_closure
from .generators import GenSpec, generate
from .model import ParseError, Snapshot, SnapshotStream, compute_params, write_snapshots
from .nonstrict import nonstrict_closure
from .strict import strict_closure

log = logging.getLogger("journeys")


@contextlib.contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _open_in(path):
    return sys.stdin if path in (None, "-") else path


class _Counting:
    """Pass-through stream that measures k, mu and m on the fly."""

    def __init__(self, stream):
        self.n = stream.n
        self._stream = stream
        self.k = self.mu = 0
        self._union: set = set()

    def __iter__(self) -> Iterator[Snapshot]:
        for snap in self._stream:
            self.k += 1
            self.mu = max(self.mu, len(snap))
            self._union.update(map(tuple, snap.arcs.tolist()))
            yield snap

    @property
    def m(self) -> int:
        return len(self._union)


def write_closure_csv(fh, c: Closure) -> None:
    fh.write("u,v\n")
    for u, v in c.pairs():
        fh.write(f"{u},{v}\n")


def cmd_close(args) -> int:
    stream = _Counting(SnapshotStream(_open_in(args.input)))
    engine = nonstrict_closure if args.flavor == "non-strict" else strict_closure
    closure = engine(stream, args.early_stop)
    with _open_out(args.output) as fh:
        if args.format == "csv":
            write_closure_csv(fh, closure)
        else:
            write_closure(fh, closure)
    stop = "none" if closure.stop_step is None else closure.stop_step
    print(f"n={stream.n} k={stream.k} mu={stream.mu} m={stream.m} "
          f"connected={str(closure.is_connected()).lower()} stop_step={stop}", file=sys.stderr)
    return 0


def cmd_query(args) -> int:
    try:
        closure = read_closure(args.closure)
        answer = closure.query(args.u, args.v)
    except (OSError, ParseError, IndexError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print("true" if answer else "false")
    return 0 if answer else 1


def cmd_gen(args) -> int:
    spec = GenSpec(n=args.n, k=args.k, model=args.model, arcs_per_step=args.arcs_per_step,
                   p_birth=args.p_birth, p_death=args.p_death, seed=args.seed)
    stream = generate(spec)
    with _open_out(args.output) as fh:
        write_snapshots(fh, spec.n, stream, spec.header())
    return 0


def cmd_params(args) -> int:
    stream = SnapshotStream(_open_in(args.input))
    p = compute_params(stream)
    print(f"n={stream.n} k={p.k} mu={p.mu} m={p.m}")
    return 0


def _grid_from_args(args) -> Grid:
    d = {}
    if args.grid:
        with open(args.grid, encoding="utf-8") as fh:
            d = json.load(fh)
    for key in ("n", "k", "arcs_per_step", "p_birth", "p_death", "algorithms"):
        val = getattr(args, key)
        if val is not None:
            d[key] = val
    if args.model is not None:
        d["model"] = args.model
    if args.reps is not None:
        d["repetitions"] = args.reps
    if args.seed is not None:
        d["seed"] = args.seed
    if args.early_stop:
        d["early_stop"] = True
    if args.flavor == "non-strict":
        d["baseline_flavor"] = "non-strict"
        d.setdefault("algorithms", ["dedicated-nonstrict", "baseline"])
    return Grid.from_dict(d)


def cmd_bench(args) -> int:
    if args.backend:
        kernels.set_backend(args.backend)
    grid = _grid_from_args(args)
    with _open_out(args.output) as fh:
        records = write_csv(fh, run_bench(grid))
    summary = format_summary(summarize(records))
    print(summary, file=sys.stderr)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(summary + "\n")
    return 0


def _flavor_flags(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--strict", dest="flavor", action="store_const", const="strict")
    g.add_argument("--non-strict", dest="flavor", action="store_const", const="non-strict")
    p.set_defaults(flavor="strict")


def _mixed(value: str):
    return int(value) if value.lstrip("-").isdigit() else value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="journeys", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("close", help="compute the closure of an evolving graph")
    p.add_argument("input", nargs="?", default="-", help="graph file, '-' for stdin")
    _flavor_flags(p)
    p.add_argument("--early-stop", action="store_true")
    p.add_argument("--output", "-o", default="-")
    p.add_argument("--format", choices=("closure", "csv"), default="closure")
    p.set_defaults(func=cmd_close)

    p = sub.add_parser("query", help="answer u ->? v from a closure file")
    p.add_argument("closure")
    p.add_argument("u", type=int)
    p.add_argument("v", type=int)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("gen", help="generate a seeded evolving graph")
    p.add_argument("--model", choices=("uniform", "markovian"), default="uniform")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--arcs-per-step", type=int, default=0)
    p.add_argument("--p-birth", type=float, default=0.5)
    p.add_argument("--p-death", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("params", help="print n, k, mu, m")
    p.add_argument("input", nargs="?", default="-")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("bench", help="benchmark dedicated engines against the baseline",
                       epilog=BASELINE_NOTE)
    p.add_argument("--grid", help="JSON file with grid keys (n, k, model, arcs_per_step, ...)")
    p.add_argument("--n", nargs="+", type=_mixed)
    p.add_argument("--k", nargs="+", type=_mixed)
    p.add_argument("--model", choices=("uniform", "markovian"))
    p.add_argument("--arcs-per-step", nargs="+", type=_mixed)
    p.add_argument("--p-birth", nargs="+", type=float)
    p.add_argument("--p-death", nargs="+", type=float)
    p.add_argument("--algorithms", nargs="+")
    p.add_argument("--reps", type=int)
    p.add_argument("--seed", type=int)
    _flavor_flags(p)
    p.add_argument("--early-stop", action="store_true")
    p.add_argument("--backend", choices=kernels.BACKENDS)
    p.add_argument("--format", choices=("csv",), default="csv")
    p.add_argument("--output", "-o", default="-")
    p.add_argument("--report", help="also write the median summary here")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

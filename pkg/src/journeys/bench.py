"""Benchmark harness: dedicated engines vs the per-source baseline.

Every instance is generated and materialized before the clock starts; the
timed region is the closure computation only.  Each (cell, algorithm) gets
one discarded warm-up run, which also absorbs JIT compilation.
"""
from __future__ import annotations

import csv
import itertools
import logging
import math
import statistics
import time
from dataclasses import asdict, dataclass
from typing import IO, Iterable, Iterator, Sequence

from . import kernels
from .baseline import FlatGraph, baseline_closure
from .generators import GenSpec, generate
from .model import EvolvingGraph, compute_params
from .nonstrict import nonstrict_closure
from .strict import strict_closure

log = logging.getLogger(__name__)

CSV_COLUMNS = ("algorithm", "n", "k", "mu", "m", "seed", "wall_time_s", "stop_step", "connected")
ALGORITHMS = ("dedicated-strict", "dedicated-nonstrict", "baseline")

BASELINE_NOTE = (
    "baseline = n independent earliest-arrival sweeps over the full materialized "
    "arc sequence (frontier sweep, not the priority-queue variant; same arrival "
    "dates in the untimed unit-step model)")


@dataclass
class BenchRecord:
    algorithm: str
    n: int
    k: int
    mu: int | None
    m: int | None
    seed: int
    wall_time_s: float | None
    stop_step: int | None
    connected: bool | None
    cell: str = ""

    def row(self) -> dict:
        d = asdict(self)
        d.pop("cell")
        d["wall_time_s"] = "" if self.wall_time_s is None else f"{self.wall_time_s:.9f}"
        for key in ("mu", "m", "stop_step"):
            if d[key] is None:
                d[key] = ""
        d["connected"] = "" if self.connected is None else str(self.connected).lower()
        return d


def resolve(value, n: int) -> int:
    """Grid values may be ints or one of ``log2n``, ``sqrtn``, ``n``,
    ``nlog2n``, ``n2`` (ceilings, computed from ``n``)."""
    if isinstance(value, int):
        return value
    if isinstance(value, str) and value.lstrip("-").isdigit():
        return int(value)
    lg = math.log2(n) if n > 1 else 1.0
    table = {
        "log2n": math.ceil(lg),
        "sqrtn": math.ceil(math.sqrt(n)),
        "n": n,
        "nlog2n": math.ceil(n * lg),
        "n2": n * n,
    }
    try:
        return table[value]
    except KeyError:
        raise ValueError(f"unknown grid value {value!r}") from None


@dataclass
class Grid:
    n: Sequence = (64,)
    k: Sequence = (8,)
    model: str = "uniform"
    arcs_per_step: Sequence = (6,)
    p_birth: Sequence = (0.5,)
    p_death: Sequence = (0.5,)
    algorithms: Sequence[str] = ("dedicated-strict", "baseline")
    repetitions: int = 3
    seed: int = 0
    early_stop: bool = False
    baseline_flavor: str = "strict"

    @classmethod
    def from_dict(cls, d: dict) -> "Grid":
        d = dict(d)
        for key in ("n", "k", "arcs_per_step", "p_birth", "p_death"):
            if key in d and not isinstance(d[key], (list, tuple)):
                d[key] = [d[key]]
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown grid keys: {sorted(unknown)}")
        return cls(**d)

    def cells(self) -> Iterator[dict]:
        if self.model == "uniform":
            for n, k, a in itertools.product(self.n, self.k, self.arcs_per_step):
                n = resolve(n, 1)
                yield {"n": n, "k": resolve(k, n), "arcs_per_step": resolve(a, n)}
        else:
            for n, k, pb, pd in itertools.product(self.n, self.k, self.p_birth, self.p_death):
                n = resolve(n, 1)
                yield {"n": n, "k": resolve(k, n), "p_birth": float(pb), "p_death": float(pd)}


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return time.perf_counter() - t0, out


def _runner(algorithm: str, g: EvolvingGraph, flat: FlatGraph, early_stop: bool, baseline_flavor: str):
    if algorithm == "dedicated-strict":
        return lambda: strict_closure(g, early_stop)
    if algorithm == "dedicated-nonstrict":
        return lambda: nonstrict_closure(g, early_stop)
    if algorithm == "baseline":
        return lambda: baseline_closure(flat, baseline_flavor)
    raise ValueError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}")


def measure(algorithm: str, g: EvolvingGraph, seed: int, *, early_stop: bool = False,
            baseline_flavor: str = "strict", flat: FlatGraph | None = None,
            params=None, warmup: bool = True, cell: str = "") -> BenchRecord:
    """Time one algorithm on one materialized instance."""
    flat = flat if flat is not None else FlatGraph(g)
    params = params or compute_params(g)
    run = _runner(algorithm, g, flat, early_stop, baseline_flavor)
    if warmup:
        run()
    wall, closure = _timed(run)
    return BenchRecord(algorithm, g.n, params.k, params.mu, params.m, seed, wall,
                       closure.stop_step if algorithm != "baseline" else None,
                       closure.is_connected(), cell)


def run_bench(grid: Grid) -> Iterator[BenchRecord]:
    for bad in set(grid.algorithms) - set(ALGORITHMS):
        raise ValueError(f"unknown algorithm {bad!r}; choose from {ALGORITHMS}")
    for cell in grid.cells():
        n, k = cell["n"], cell["k"]
        label = " ".join(f"{key}={val}" for key, val in cell.items())
        first = True
        for rep in range(grid.repetitions):
            seed = grid.seed + rep
            try:
                spec = GenSpec(model=grid.model, seed=seed, **cell)
            except ValueError as exc:
                log.warning("skipping cell %s: %s", cell, exc)
                yield BenchRecord("skipped", n, k, cell.get("arcs_per_step"), None, seed,
                                  None, None, None, label)
                break
            g = generate(spec).materialize()
            flat = FlatGraph(g)
            params = compute_params(g)
            for algorithm in grid.algorithms:
                yield measure(algorithm, g, seed, early_stop=grid.early_stop,
                              baseline_flavor=grid.baseline_flavor, flat=flat,
                              params=params, warmup=first, cell=label)
            first = False


def write_csv(fh: IO[str], records: Iterable[BenchRecord]) -> list[BenchRecord]:
    writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
    writer.writeheader()
    kept = []
    for rec in records:
        writer.writerow(rec.row())
        fh.flush()
        kept.append(rec)
    return kept


def read_csv(fh: IO[str]) -> list[dict]:
    return list(csv.DictReader(fh))


def summarize(records: Iterable[BenchRecord]) -> list[dict]:
    """Median wall time per (cell, algorithm) group, in first-seen order."""
    groups: dict[tuple, list[BenchRecord]] = {}
    for r in records:
        if r.wall_time_s is None:
            continue
        groups.setdefault((r.cell or f"n={r.n} k={r.k}", r.algorithm), []).append(r)
    out = []
    for (cell, alg), rs in groups.items():
        stops = [r.stop_step for r in rs if r.stop_step is not None]
        out.append({
            "algorithm": alg, "cell": cell, "n": rs[0].n, "k": rs[0].k,
            "mu_median": statistics.median(r.mu for r in rs),
            "m_median": statistics.median(r.m for r in rs),
            "runs": len(rs),
            "median_s": statistics.median(r.wall_time_s for r in rs),
            "connected": sum(bool(r.connected) for r in rs),
            "median_stop": statistics.median(stops) if stops else None,
        })
    return out


def format_summary(rows: list[dict]) -> str:
    lines = [f"# backend={kernels.active_backend()}; {BASELINE_NOTE}",
             f"{'algorithm':<20} {'n':>6} {'k':>7} {'mu~':>8} {'m~':>9} {'runs':>4} "
             f"{'median_s':>12} {'conn':>4} {'stop~':>6}"]
    for r in rows:
        stop = "-" if r["median_stop"] is None else f"{r['median_stop']:g}"
        lines.append(f"{r['algorithm']:<20} {r['n']:>6} {r['k']:>7} {r['mu_median']:>8g} "
                     f"{r['m_median']:>9g} {r['runs']:>4} {r['median_s']:>12.6f} "
                     f"{r['connected']:>4} {stop:>6}")
    return "\n".join(lines)

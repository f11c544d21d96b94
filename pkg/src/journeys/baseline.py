"""Reference reachability: a brute-force oracle and the earliest-arrival
baseline.

``oracle_reach`` is deliberately naive (Python sets, step-by-step dynamic
programming) and shares nothing with the engines beyond the graph types.
The baseline answers the same question the way a per-source journey
algorithm does: one earliest-arrival sweep from every vertex over the whole
materialized arc sequence.  It is a frontier sweep rather than a
priority-queue search; with unit, untimed steps the two compute the same
arrival dates.
"""
from __future__ import annotations

import io
from dataclasses import dataclass
from typing import IO, Iterable, Union

import numpy as np

from . import kernels
from .closure import Closure
from .kernels import UNREACHABLE
from .model import EvolvingGraph, Snapshot

ORACLE_MAX_N = 12

GraphLike = Union[EvolvingGraph, Iterable[Snapshot]]


def _strict_flag(strictness) -> bool:
    if isinstance(strictness, bool):
        return strictness
    if strictness in ("strict", "non-strict"):
        return strictness == "strict"
    raise ValueError(f"strictness must be 'strict' or 'non-strict', got {strictness!r}")


def _flavor(strict: bool) -> str:
    return "strict" if strict else "non-strict"


def oracle_reach(g: EvolvingGraph, strictness="strict", max_n: int = ORACLE_MAX_N) -> Closure:
    """Brute-force closure for small graphs (``n <= max_n``)."""
    strict = _strict_flag(strictness)
    n = g.n
    if n > max_n:
        raise ValueError(f"oracle is capped at n={max_n}, got n={n}")
    reach = [{u} for u in range(n)]
    for snap in g.snapshots:
        arcs = [(int(a), int(b)) for a, b in snap.arcs]
        for u in range(n):
            before = reach[u]
            if strict:
                reach[u] = before | {y for x, y in arcs if x in before}
                continue
            cur = set(before)
            changed = True
            while changed:
                changed = False
                for x, y in arcs:
                    if x in cur and y not in cur:
                        cur.add(y)
                        changed = True
            reach[u] = cur
    matrix = np.zeros((n, n), dtype=bool)
    for u in range(n):
        for v in reach[u]:
            matrix[u, v] = True
    return Closure.from_matrix(matrix, _flavor(strict), steps_processed=g.k)


@dataclass(frozen=True, eq=False)
class ArrivalTable:
    """Earliest step at which each vertex is reached from ``source``.

    ``arrival[source] == 0``; vertices never reached hold ``UNREACHABLE``.
    """

    source: int
    arrival: np.ndarray
    strictness: str = "strict"

    def reachable(self) -> set[int]:
        return set(np.flatnonzero(self.arrival != UNREACHABLE).tolist())

    def __eq__(self, other):
        if not isinstance(other, ArrivalTable):
            return NotImplemented
        return (self.source == other.source and self.strictness == other.strictness
                and np.array_equal(self.arrival, other.arrival))


def flatten(g: GraphLike) -> tuple[int, np.ndarray, np.ndarray, np.ndarray]:
    """Concatenate all snapshots: ``(n, offsets, src, dst)``, where step
    ``t`` occupies ``[offsets[t-1], offsets[t])``."""
    n = g.n
    snaps = list(g)
    offsets = np.zeros(len(snaps) + 1, dtype=np.int64)
    if snaps:
        offsets[1:] = np.cumsum([len(s) for s in snaps])
        arcs = np.concatenate([s.arcs for s in snaps]) if offsets[-1] else np.empty((0, 2), np.int64)
    else:
        arcs = np.empty((0, 2), np.int64)
    return n, offsets, np.ascontiguousarray(arcs[:, 0]), np.ascontiguousarray(arcs[:, 1])


class FlatGraph:
    """Materialized arc sequence; build once, time the sweeps separately."""

    def __init__(self, g: GraphLike):
        self.n, self.offsets, self.src, self.dst = flatten(g)

    @property
    def k(self) -> int:
        return len(self.offsets) - 1


def earliest_arrival(g: Union[GraphLike, FlatGraph], source: int, strictness="strict") -> ArrivalTable:
    strict = _strict_flag(strictness)
    flat = g if isinstance(g, FlatGraph) else FlatGraph(g)
    if not 0 <= source < flat.n:
        raise IndexError(f"source {source} out of range for n={flat.n}")
    arrival = kernels.earliest_arrival(flat.n, flat.offsets, flat.src, flat.dst, source, strict)
    arrival = np.asarray(arrival)
    arrival.flags.writeable = False
    return ArrivalTable(source, arrival, _flavor(strict))


def baseline_closure(g: Union[GraphLike, FlatGraph], strictness="strict") -> Closure:
    """Closure assembled from ``n`` independent earliest-arrival sweeps."""
    strict = _strict_flag(strictness)
    flat = g if isinstance(g, FlatGraph) else FlatGraph(g)
    reach = kernels.baseline_reach(flat.n, flat.offsets, flat.src, flat.dst, strict)
    return Closure.from_matrix(reach, _flavor(strict), steps_processed=flat.k)


def write_arrival_table(fh: IO[str], table: ArrivalTable) -> None:
    fh.write(f"source={table.source}\n")
    for v, t in enumerate(table.arrival.tolist()):
        fh.write(f"{v} {-1 if t == UNREACHABLE else t}\n")


def serialize_arrival_table(table: ArrivalTable) -> str:
    buf = io.StringIO()
    write_arrival_table(buf, table)
    return buf.getvalue()


def parse_arrival_table(text: str, strictness: str = "strict") -> ArrivalTable:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("source="):
        raise ValueError("arrival table must start with 'source=<u>'")
    source = int(lines[0][len("source="):])
    rows = [tuple(map(int, ln.split())) for ln in lines[1:]]
    arrival = np.full(len(rows), UNREACHABLE, dtype=np.int64)
    for v, t in rows:
        if t >= 0:
            arrival[v] = t
    return ArrivalTable(source, arrival, strictness)

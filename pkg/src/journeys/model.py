"""Untimed directed evolving graphs: types, streaming parser, serializer.

File format (UTF-8, line based)::

    # comment
    n=<N>
    t=1
    <u> <v>
    ...
    t=2
    ...

Step markers start at 1 and increase by exactly one.  Arc lines belong to
the most recent step marker.  Duplicate arcs within a step are dropped, and
so are self-loops (both counted on the reader).
"""
from __future__ import annotations

import io
import logging
import os
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator, Union

import numpy as np

log = logging.getLogger(__name__)

ARC_DTYPE = np.int64


class ParseError(ValueError):
    """Malformed evolving-graph input.  ``lineno`` is 1-based."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        self.message = message
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(where + message)


def _as_arc_array(arcs) -> np.ndarray:
    arr = np.asarray(arcs, dtype=ARC_DTYPE)
    if arr.size == 0:
        arr = np.empty((0, 2), dtype=ARC_DTYPE)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"arcs must have shape (e, 2), got {arr.shape}")
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Snapshot:
    """One step ``G_i = (V, E_i)``.

    ``arcs`` is a read-only ``(e, 2)`` int array in input order.  Callers
    that build snapshots by hand are responsible for the no-duplicate and
    no-self-loop invariant; :func:`normalize_arcs` enforces it.
    """

    step: int
    arcs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "arcs", _as_arc_array(self.arcs))

    @property
    def src(self) -> np.ndarray:
        return self.arcs[:, 0]

    @property
    def dst(self) -> np.ndarray:
        return self.arcs[:, 1]

    def __len__(self) -> int:
        return self.arcs.shape[0]

    def arc_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((int(u), int(v)) for u, v in self.arcs)

    def __eq__(self, other):
        if not isinstance(other, Snapshot):
            return NotImplemented
        return self.step == other.step and self.arc_set() == other.arc_set()

    def __repr__(self):
        return f"{type(self).__name__}(step={self.step}, arcs={sorted(self.arc_set())})"


def normalize_arcs(arcs: Iterable[tuple[int, int]]) -> tuple[list[tuple[int, int]], int, int]:
    """Drop duplicates and self-loops, keeping first-seen order.

    Returns ``(arcs, n_duplicates, n_self_loops)``.
    """
    seen: set[tuple[int, int]] = set()
    out = []
    dups = loops = 0
    for u, v in arcs:
        u, v = int(u), int(v)
        if u == v:
            loops += 1
        elif (u, v) in seen:
            dups += 1
        else:
            seen.add((u, v))
            out.append((u, v))
    return out, dups, loops


def make_snapshot(step: int, arcs: Iterable[tuple[int, int]], n: int | None = None) -> Snapshot:
    """Build a normalized snapshot, validating endpoints against ``n`` if given."""
    clean, _, _ = normalize_arcs(arcs)
    if n is not None:
        for u, v in clean:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={n}")
    return Snapshot(step, clean)


@dataclass(frozen=True)
class GraphParams:
    k: int
    mu: int
    m: int


@dataclass(frozen=True, eq=False)
class EvolvingGraph:
    """Fixed vertex set ``0..n-1`` and snapshots with steps ``1..k``."""

    n: int
    snapshots: tuple[Snapshot, ...] = ()
    dropped_duplicates: int = field(default=0, compare=False)
    dropped_self_loops: int = field(default=0, compare=False)

    def __post_init__(self):
        snaps = tuple(self.snapshots)
        object.__setattr__(self, "snapshots", snaps)
        if self.n < 0:
            raise ValueError("n must be non-negative")
        for i, s in enumerate(snaps, start=1):
            if s.step != i:
                raise ValueError(f"snapshot {i} has step {s.step}; steps must run 1..k")
            if len(s) and (s.arcs.min() < 0 or s.arcs.max() >= self.n):
                raise ValueError(f"step {s.step}: arc endpoint out of range for n={self.n}")

    @classmethod
    def from_arc_lists(cls, n: int, steps: Iterable[Iterable[tuple[int, int]]]) -> "EvolvingGraph":
        return cls(n, tuple(make_snapshot(i, arcs, n) for i, arcs in enumerate(steps, start=1)))

    @property
    def k(self) -> int:
        return len(self.snapshots)

    def __iter__(self) -> Iterator[Snapshot]:
        return iter(self.snapshots)

    def __len__(self) -> int:
        return len(self.snapshots)

    def __eq__(self, other):
        if not isinstance(other, EvolvingGraph):
            return NotImplemented
        return self.n == other.n and self.snapshots == other.snapshots

    def prefix(self, t: int) -> "EvolvingGraph":
        return EvolvingGraph(self.n, self.snapshots[:t])

    def params(self) -> GraphParams:
        return compute_params(self)


def compute_params(g: Union[EvolvingGraph, Iterable[Snapshot]]) -> GraphParams:
    """Return ``k``, ``mu = max |E_i|`` and ``m = |union E_i|``.

    Works on any snapshot iterable, so a stream can be measured in one pass
    (holding the arc union, which is O(m)).
    """
    k = mu = 0
    union: set[tuple[int, int]] = set()
    for snap in g:
        k += 1
        mu = max(mu, len(snap))
        union.update(map(tuple, snap.arcs.tolist()))
    return GraphParams(k=k, mu=mu, m=len(union))


# -- reading ---------------------------------------------------------------

Source = Union[str, os.PathLike, IO[str]]


def _parse_int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {tok!r}", lineno) from None


class SnapshotStream:
    """Lazy, single-consumer reader over the evolving-graph text format.

    The header is read on construction, so ``n`` is known before the first
    snapshot.  Only the snapshot being assembled is held in memory;
    ``peak_snapshot_arcs`` records the largest one seen so far.
    """

    def __init__(self, source: Source):
        if isinstance(source, (str, os.PathLike)):
            self._fh = open(source, encoding="utf-8")
            self._owns = True
        else:
            self._fh = source
            self._owns = False
        self._lineno = 0
        self.dropped_duplicates = 0
        self.dropped_self_loops = 0
        self.peak_snapshot_arcs = 0
        self._pending_step: int | None = None
        self._consumed = False
        self.n = self._read_header()

    def _lines(self) -> Iterator[tuple[int, str]]:
        for raw in self._fh:
            self._lineno += 1
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            yield self._lineno, line

    def _read_header(self) -> int:
        self._it = self._lines()
        for lineno, line in self._it:
            if not line.startswith("n="):
                raise ParseError(f"expected header 'n=<N>', got {line!r}", lineno)
            n = _parse_int(line[2:].strip(), lineno, "vertex count")
            if n < 0:
                raise ParseError("vertex count must be non-negative", lineno)
            return n
        raise ParseError("missing header 'n=<N>'", self._lineno or None)

    def _step_marker(self, line: str, lineno: int, expected: int) -> int:
        step = _parse_int(line[2:].strip(), lineno, "step")
        if step != expected:
            raise ParseError(f"step marker t={step} out of order, expected t={expected}", lineno)
        return step

    def __iter__(self) -> Iterator[Snapshot]:
        if self._consumed:
            raise RuntimeError("SnapshotStream is single-pass and was already consumed")
        self._consumed = True
        try:
            yield from self._snapshots()
        finally:
            self.close()

    def _snapshots(self) -> Iterator[Snapshot]:
        n = self.n
        step = 0
        seen: set[tuple[int, int]] = set()
        arcs: list[tuple[int, int]] = []
        for lineno, line in self._it:
            if line.startswith("t="):
                new_step = self._step_marker(line, lineno, step + 1)
                if step:
                    yield self._emit(step, arcs)
                step = new_step
                seen = set()
                arcs = []
                continue
            if not step:
                raise ParseError("arc line before the first step marker", lineno)
            toks = line.split()
            if len(toks) != 2:
                raise ParseError(f"expected arc '<u> <v>', got {line!r}", lineno)
            u = _parse_int(toks[0], lineno, "vertex")
            v = _parse_int(toks[1], lineno, "vertex")
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"vertex index out of range [0, {n}) in arc ({u}, {v})", lineno)
            if u == v:
                self.dropped_self_loops += 1
            elif (u, v) in seen:
                self.dropped_duplicates += 1
            else:
                seen.add((u, v))
                arcs.append((u, v))
        if step:
            yield self._emit(step, arcs)
        if self.dropped_self_loops:
            log.warning("dropped %d self-loop(s)", self.dropped_self_loops)

    def _emit(self, step, arcs):
        self.peak_snapshot_arcs = max(self.peak_snapshot_arcs, len(arcs))
        return Snapshot(step, arcs)

    def close(self):
        if self._owns:
            self._fh.close()


def snapshot_stream(source: Source) -> SnapshotStream:
    return SnapshotStream(source)


def parse_evolving_graph(source: Source) -> EvolvingGraph:
    """Read a whole evolving graph.  A ``str`` that contains a newline or
    starts with ``n=`` is treated as the text itself, otherwise as a path."""
    if isinstance(source, str) and ("\n" in source or source.lstrip().startswith(("n=", "#"))):
        source = io.StringIO(source)
    stream = SnapshotStream(source)
    snaps = tuple(stream)
    return EvolvingGraph(
        stream.n,
        snaps,
        dropped_duplicates=stream.dropped_duplicates,
        dropped_self_loops=stream.dropped_self_loops,
    )


# -- writing ---------------------------------------------------------------

def write_snapshots(
    fh: IO[str], n: int, snapshots: Iterable[Snapshot], comments: Iterable[str] = ()
) -> None:
    for c in comments:
        fh.write(f"# {c}\n")
    fh.write(f"n={n}\n")
    for snap in snapshots:
        fh.write(f"t={snap.step}\n")
        for u, v in snap.arcs.tolist():
            fh.write(f"{u} {v}\n")


def serialize_evolving_graph(g: EvolvingGraph, comments: Iterable[str] = ()) -> str:
    buf = io.StringIO()
    write_snapshots(buf, g.n, g.snapshots, comments)
    return buf.getvalue()

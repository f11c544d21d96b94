"""Streaming strict transitive closure of journeys.

Each vertex ``v`` keeps its predecessor set ``pred(v)`` (everything that
reaches it through the steps seen so far) and a step-local buffer
``pred_new(v)``.  For an arc ``(u, v)`` of step ``i``, ``pred(u)`` as it was
at the end of step ``i - 1`` is merged into ``pred_new(v)``; buffers are
committed only once every arc of the step has been read, so a strict
journey crosses at most one arc per step regardless of arc order.

Sets are packed ``uint64`` rows, so each merge is ``ceil(n / 64)`` word
operations and a full run costs O(k * mu * n / 64).
"""
from __future__ import annotations

from typing import Callable, Iterable, Optional

import numpy as np

from . import kernels
from .closure import Closure, Flavor, n_words, unpack_rows
from .model import Snapshot


class PredecessorState:
    """Mutable engine state; single writer.

    ``sizes[v] == |pred(v)|`` (``v`` itself included).  ``insertions`` counts
    every bit ever added to a predecessor set, ``arcs_processed`` every arc
    merged; both feed the work-bound checks.
    """

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("n must be non-negative")
        w = n_words(n)
        self.n = n
        self.pred = np.zeros((n, w), dtype=np.uint64)
        self.pred_new = np.zeros((n, w), dtype=np.uint64)
        idx = np.arange(n)
        self.pred[idx, idx >> 6] = np.left_shift(np.uint64(1), (idx & 63).astype(np.uint64))
        self.sizes = np.ones(n, dtype=np.int64)
        self.complete_count = n if n <= 1 else 0
        self.current_step = 0
        self.stop_step: int | None = 0 if n <= 1 else None
        self.insertions = 0
        self.arcs_processed = 0

    @property
    def connected(self) -> bool:
        return self.complete_count == self.n

    def pred_set(self, v: int) -> set[int]:
        return set(np.flatnonzero(unpack_rows(self.pred[v:v + 1], self.n)[0]).tolist())

    def pred_new_set(self, v: int) -> set[int]:
        return set(np.flatnonzero(unpack_rows(self.pred_new[v:v + 1], self.n)[0]).tolist())

    def max_foreign_preds(self) -> int:
        """``max_v |pred(v) \\ {v}|``, 0 for an empty vertex set."""
        return int(self.sizes.max()) - 1 if self.n else 0

    def to_closure(self, flavor: Flavor = "strict") -> Closure:
        return Closure(self.n, self.pred, flavor, self.stop_step, self.current_step)


def init_state(n: int) -> PredecessorState:
    return PredecessorState(n)


def _check_arcs(n: int, snap: Snapshot) -> tuple[np.ndarray, np.ndarray]:
    arcs = snap.arcs
    if arcs.shape[0] and (arcs.min() < 0 or arcs.max() >= n):
        raise IndexError(f"step {snap.step}: arc endpoint out of range for n={n}")
    return np.ascontiguousarray(arcs[:, 0]), np.ascontiguousarray(arcs[:, 1])


def process_step_strict(state: PredecessorState, snap: Snapshot) -> PredecessorState:
    """Advance ``state`` by one snapshot (in place) and return it."""
    if snap.step != state.current_step + 1:
        raise ValueError(
            f"out-of-order snapshot: got step {snap.step}, expected {state.current_step + 1}")
    src, dst = _check_arcs(state.n, snap)
    inserted, newly_complete = kernels.strict_step(
        state.pred, state.pred_new, state.sizes, src, dst, state.n)
    state.insertions += int(inserted)
    state.arcs_processed += src.shape[0]
    state.complete_count += int(newly_complete)
    state.current_step = snap.step
    if state.stop_step is None and state.complete_count == state.n:
        state.stop_step = snap.step
    return state


def _stream_n(stream, n: Optional[int]) -> int:
    if n is not None:
        return n
    try:
        return stream.n
    except AttributeError:
        raise TypeError("stream has no vertex count; pass n= explicitly") from None


def run_engine(
    stream: Iterable[Snapshot],
    n: int,
    flavor: Flavor,
    early_stop: bool,
    prepare: Callable[[Snapshot], Snapshot] | None = None,
    on_step: Callable[[PredecessorState], None] | None = None,
) -> Closure:
    state = PredecessorState(n)
    if not (early_stop and state.connected):
        for snap in stream:
            process_step_strict(state, prepare(snap) if prepare else snap)
            if on_step is not None:
                on_step(state)
            if early_stop and state.connected:
                break
    return state.to_closure(flavor)


def strict_closure(
    stream: Iterable[Snapshot],
    early_stop: bool = False,
    *,
    n: int | None = None,
    on_step: Callable[[PredecessorState], None] | None = None,
) -> Closure:
    """Strict closure of an :class:`~journeys.model.EvolvingGraph` or any
    snapshot stream.

    With ``early_stop`` the stream is abandoned at the first step after
    which the graph is temporally connected; snapshots past it are never
    read.  ``on_step`` sees the state after every committed step.
    """
    return run_engine(stream, _stream_n(stream, n), "strict", early_stop, on_step=on_step)

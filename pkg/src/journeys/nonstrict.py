"""Non-strict closure: close each snapshot statically, then run the strict
engine on the closed snapshots unchanged.

Inside one step a non-strict journey may follow any directed path, which is
exactly one arc of the snapshot's path closure ``G_i*``.
"""
from __future__ import annotations

from typing import Callable, Iterable

import numpy as np

from . import kernels
from .closure import Closure
from .model import Snapshot
from .strict import PredecessorState, _stream_n, run_engine


class ClosedSnapshot(Snapshot):
    """Snapshot whose arcs are transitively closed (no self-arcs).

    ``touches`` is the number of adjacency entries the traversals examined.
    """

    def __init__(self, step, arcs, touches: int = 0):
        super().__init__(step, arcs)
        object.__setattr__(self, "touches", touches)


def static_closure(snap: Snapshot, n: int) -> ClosedSnapshot:
    """Path closure of one snapshot: one traversal from each vertex that has
    an outgoing arc, each examining at most ``|E_i|`` arcs."""
    arcs = snap.arcs
    if arcs.shape[0] and (arcs.min() < 0 or arcs.max() >= n):
        raise IndexError(f"step {snap.step}: arc endpoint out of range for n={n}")
    csrc, cdst, touches = kernels.static_closure(
        n, np.ascontiguousarray(arcs[:, 0]), np.ascontiguousarray(arcs[:, 1]))
    return ClosedSnapshot(snap.step, np.column_stack((csrc, cdst)), int(touches))


class _Closer:
    def __init__(self, n):
        self.n = n
        self.touches = 0

    def __call__(self, snap):
        closed = static_closure(snap, self.n)
        self.touches += closed.touches
        return closed


def nonstrict_closure(
    stream: Iterable[Snapshot],
    early_stop: bool = False,
    *,
    n: int | None = None,
    on_step: Callable[[PredecessorState], None] | None = None,
    stats: dict | None = None,
) -> Closure:
    """Non-strict closure; early-stop semantics match
    :func:`~journeys.strict.strict_closure`.

    If ``stats`` is given it receives ``touches`` (static traversal work)
    after the run.
    """
    n = _stream_n(stream, n)
    closer = _Closer(n)
    c = run_engine(stream, n, "non-strict", early_stop, prepare=closer, on_step=on_step)
    if stats is not None:
        stats["touches"] = closer.touches
    return c

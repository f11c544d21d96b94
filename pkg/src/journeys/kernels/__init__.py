"""Hot inner loops, in two interchangeable implementations.

``numba`` (default) compiles the loops with ``@njit``; ``numpy`` is a
vectorized / pure-Python fallback with identical results.  Set
``JOURNEYS_DISABLE_NUMBA=1`` before import to force the fallback, or call
:func:`set_backend` at runtime (the benchmark does this).

All kernels share one contract:

``strict_step(pred, pred_new, sizes, src, dst, n) -> (inserted, newly_complete)``
    One step of predecessor propagation over packed ``uint64`` rows.
    Mutates ``pred``, ``pred_new`` (left zeroed) and ``sizes``.
``static_closure(n, src, dst) -> (csrc, cdst, touches)``
    Path closure of one snapshot, one traversal per vertex with out-arcs.
``earliest_arrival(n, offsets, src, dst, source, strict) -> arrival``
    Forward sweep over steps; unreachable vertices hold ``UNREACHABLE``.
``baseline_reach(n, offsets, src, dst, strict) -> bool[n, n]``
    ``earliest_arrival`` run independently from every source.
"""
from __future__ import annotations

import importlib
import logging
import os

from ._common import UNREACHABLE

log = logging.getLogger(__name__)

ENV_FLAG = "JOURNEYS_DISABLE_NUMBA"
BACKENDS = ("numba", "numpy")


def _env_disabled() -> bool:
    return os.environ.get(ENV_FLAG, "").strip().lower() in ("1", "true", "yes", "on")


def get_backend(name: str):
    """Return the kernel module for ``name`` (raises ImportError if unusable)."""
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}; choose from {BACKENDS}")
    return importlib.import_module(f"{__name__}._{name}")


def _initial():
    if _env_disabled():
        return "numpy"
    try:
        get_backend("numba")
    except ImportError:
        log.warning("numba unavailable, using numpy kernels")
        return "numpy"
    return "numba"


_name = _initial()
_impl = get_backend(_name)


def active_backend() -> str:
    return _name


def set_backend(name: str) -> str:
    """Switch kernels process-wide; returns the previous backend name."""
    global _name, _impl
    impl = get_backend(name)
    prev, _name, _impl = _name, name, impl
    return prev


def strict_step(pred, pred_new, sizes, src, dst, n):
    return _impl.strict_step(pred, pred_new, sizes, src, dst, n)


def static_closure(n, src, dst):
    return _impl.static_closure(n, src, dst)


def earliest_arrival(n, offsets, src, dst, source, strict):
    return _impl.earliest_arrival(n, offsets, src, dst, source, strict)


def baseline_reach(n, offsets, src, dst, strict):
    return _impl.baseline_reach(n, offsets, src, dst, strict)


__all__ = [
    "UNREACHABLE", "ENV_FLAG", "BACKENDS", "active_backend", "set_backend", "get_backend",
    "strict_step", "static_closure", "earliest_arrival", "baseline_reach",
]

"""Seeded synthetic evolving graphs.

Randomness comes from one documented source so that streams can be
re-created elsewhere: ``numpy.random.PCG64`` seeded through
``SeedSequence(seed)``, consumed only as uniform doubles in ``[0, 1)``
(``Generator.random``, i.e. ``(next_uint64 >> 11) * 2**-53``).

Ordered pairs ``u != v`` are indexed ``i = u * (n - 1) + r`` with
``v = r if r < u else r + 1``.

* uniform: per step, draw doubles one at a time, take pair
  ``floor(x * n(n-1))``, skip it if already drawn this step, until
  ``arcs_per_step`` distinct arcs are collected.  Arcs keep draw order.
* markovian: step 1 draws one double per pair in index order and marks it
  present iff ``x < p_birth / (p_birth + p_death)`` (all absent if both are
  zero).  Each later step draws one double per pair; a present arc survives
  iff ``x >= p_death``, an absent arc is born iff ``x < p_birth``.  Arcs are
  emitted in pair-index order.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterator, Literal

import numpy as np

from .model import EvolvingGraph, Snapshot

RNG_NAME = "numpy.PCG64(SeedSequence(seed)) doubles"


@dataclass(frozen=True)
class GenSpec:
    n: int
    k: int
    model: Literal["uniform", "markovian"] = "uniform"
    arcs_per_step: int = 0
    p_birth: float = 0.5
    p_death: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.n < 0 or self.k < 0:
            raise ValueError("n and k must be non-negative")
        if self.model not in ("uniform", "markovian"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.model == "uniform":
            if self.arcs_per_step < 0:
                raise ValueError("arcs_per_step must be non-negative")
            if self.arcs_per_step > self.n_pairs:
                raise ValueError(
                    f"arcs_per_step={self.arcs_per_step} exceeds n(n-1)={self.n_pairs}")
        else:
            for name in ("p_birth", "p_death"):
                p = getattr(self, name)
                if not 0.0 <= p <= 1.0:
                    raise ValueError(f"{name}={p} not in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")

    @property
    def n_pairs(self) -> int:
        return self.n * (self.n - 1)

    def header(self) -> list[str]:
        fields = asdict(self)
        if self.model == "uniform":
            fields.pop("p_birth")
            fields.pop("p_death")
        else:
            fields.pop("arcs_per_step")
        spec = " ".join(f"{k}={v}" for k, v in fields.items())
        return [f"generator {spec}", f"rng={RNG_NAME}"]


def pair_to_arcs(idx: np.ndarray, n: int) -> np.ndarray:
    idx = np.asarray(idx, dtype=np.int64)
    u = idx // (n - 1)
    r = idx % (n - 1)
    v = r + (r >= u)
    return np.column_stack((u, v))


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def _uniform_steps(spec: GenSpec) -> Iterator[Snapshot]:
    rng = _rng(spec.seed)
    total = spec.n_pairs
    for step in range(1, spec.k + 1):
        chosen: dict[int, None] = {}
        while len(chosen) < spec.arcs_per_step:
            # draw exactly what is missing so consumption matches one-at-a-time
            for x in rng.random(spec.arcs_per_step - len(chosen)).tolist():
                chosen.setdefault(int(x * total))
        yield Snapshot(step, pair_to_arcs(list(chosen), spec.n))


def _markovian_steps(spec: GenSpec) -> Iterator[Snapshot]:
    rng = _rng(spec.seed)
    total = spec.n_pairs
    pb, pd = spec.p_birth, spec.p_death
    present = None
    for step in range(1, spec.k + 1):
        x = rng.random(total)
        if present is None:
            if pb + pd > 0:
                present = x < pb / (pb + pd)
            else:
                present = np.zeros(total, dtype=bool)
        else:
            present = np.where(present, x >= pd, x < pb)
        yield Snapshot(step, pair_to_arcs(np.flatnonzero(present), spec.n))


class GeneratedStream:
    """Re-iterable snapshot stream; every pass replays the same graph.

    Only the current snapshot (plus, for the Markov model, one bit per
    ordered pair) is alive at a time.  ``peak_snapshot_arcs`` is the largest
    snapshot yielded so far.
    """

    def __init__(self, spec: GenSpec):
        self.spec = spec
        self.n = spec.n
        self.k = spec.k
        self.peak_snapshot_arcs = 0

    def __iter__(self) -> Iterator[Snapshot]:
        steps = _uniform_steps if self.spec.model == "uniform" else _markovian_steps
        if self.n < 2:
            steps = _empty_steps
        for snap in steps(self.spec):
            self.peak_snapshot_arcs = max(self.peak_snapshot_arcs, len(snap))
            yield snap

    def header(self) -> list[str]:
        return self.spec.header()

    def materialize(self) -> EvolvingGraph:
        return EvolvingGraph(self.n, tuple(self))


def _empty_steps(spec: GenSpec) -> Iterator[Snapshot]:
    for step in range(1, spec.k + 1):
        yield Snapshot(step, [])


def gen_uniform(spec: GenSpec) -> GeneratedStream:
    if spec.model != "uniform":
        raise ValueError("gen_uniform needs a uniform GenSpec")
    return GeneratedStream(spec)


def gen_markovian(spec: GenSpec) -> GeneratedStream:
    if spec.model != "markovian":
        raise ValueError("gen_markovian needs a markovian GenSpec")
    return GeneratedStream(spec)


def generate(spec: GenSpec) -> GeneratedStream:
    return GeneratedStream(spec)

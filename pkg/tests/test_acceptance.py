"""Exit criteria.  Each test prints one PASS/FAIL line (collected again in the
terminal summary).  Run alone with ``pytest tests/test_acceptance.py -v``."""
import math
import random
import statistics
import time
import tracemalloc

import numpy as np
import pytest

from journeys.baseline import FlatGraph, baseline_closure, oracle_reach
from journeys.generators import GenSpec, generate
from journeys.model import EvolvingGraph, Snapshot
from journeys.nonstrict import nonstrict_closure
from journeys.strict import init_state, process_step_strict, strict_closure

from .conftest import exhaustive_suite, random_suite

ENGINES = {"strict": strict_closure, "non-strict": nonstrict_closure}


def _median_time(fn, reps):
    fn()  # warm-up, discarded
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def _pred_bound_violations(g: EvolvingGraph) -> int:
    bad = 0
    for flavor, engine in ENGINES.items():
        mu = 0
        seen = []

        def check(state, _seen=seen):
            _seen.append(state.max_foreign_preds())

        engine(g, on_step=check)
        for t, (snap, worst) in enumerate(zip(g, seen), start=1):
            mu = max(mu, len(snap))
            if worst > min(t * mu, g.n - 1):
                bad += 1
    return bad


@pytest.fixture(scope="module")
def suite_1():
    return list(exhaustive_suite(n=3, max_k=2, max_arcs=2))


@pytest.fixture(scope="module")
def suite_2():
    return list(random_suite(count=1000, seed=2014, max_n=8, max_k=6, p=0.25))


def test_c1_exhaustive_oracle_equivalence(suite_1, report):
    t0 = time.perf_counter()
    mismatches = 0
    for g in suite_1:
        for flavor, engine in ENGINES.items():
            if engine(g) != oracle_reach(g, flavor):
                mismatches += 1
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed < 60
    report(1, ok, f"{len(suite_1)} instances x 2 flavors, {mismatches} mismatches, {elapsed:.1f}s")
    assert len(suite_1) == 1 + 22 + 22 * 22
    assert ok


def test_c2_randomized_three_way(suite_2, report):
    mismatches = 0
    for g in suite_2:
        for flavor, engine in ENGINES.items():
            oracle = oracle_reach(g, flavor)
            if not (engine(g) == oracle == baseline_closure(g, flavor)):
                mismatches += 1
    report(2, mismatches == 0, f"{len(suite_2)} instances x 2 flavors, {mismatches} mismatches")
    assert mismatches == 0


def test_c3_predecessor_bound(suite_1, suite_2, report):
    violations = sum(_pred_bound_violations(g) for g in suite_1 + suite_2)
    report(3, violations == 0, f"{violations} step-boundary violations over suites 1-2")
    assert violations == 0


def test_c4_strict_within_nonstrict(suite_1, suite_2, report):
    violations = sum(not strict_closure(g).issubset(nonstrict_closure(g))
                     for g in suite_1 + suite_2)
    report(4, violations == 0, f"{violations} violations over suites 1-2")
    assert violations == 0


def _first_complete_prefix(g: EvolvingGraph):
    for t in range(g.k + 1):
        if strict_closure(g.prefix(t)).is_connected():
            return t
    return None


def test_c5_early_stop(report):
    mismatches = checked = 0
    seed = 0
    while checked < 200:
        g = generate(GenSpec(n=64, k=8, model="markovian", p_birth=0.5, p_death=0.5,
                             seed=seed)).materialize()
        seed += 1
        full = strict_closure(g)
        if not full.is_connected():
            continue
        checked += 1
        early = strict_closure(g, early_stop=True)
        t = early.stop_step
        if (t != _first_complete_prefix(g) or t != full.stop_step
                or early != strict_closure(g.prefix(t)) or early.steps_processed != t):
            mismatches += 1
    report(5, mismatches == 0, f"{checked} connected instances (seeds 0..{seed - 1}), "
                               f"{mismatches} mismatches")
    assert mismatches == 0


def test_c6_permutation_invariance(report):
    rng = random.Random(6)
    base = list(random_suite(count=50, seed=606, max_n=8, max_k=6, p=0.25))
    base += [generate(GenSpec(n=40, k=10, arcs_per_step=60, seed=s)).materialize() for s in range(50)]
    mismatches = 0
    for g in base:
        ref = {flavor: engine(g) for flavor, engine in ENGINES.items()}
        shuffled = []
        for snap in g:
            order = list(range(len(snap)))
            rng.shuffle(order)
            shuffled.append(Snapshot(snap.step, snap.arcs[order]))
        h = EvolvingGraph(g.n, tuple(shuffled))
        for flavor, engine in ENGINES.items():
            got = engine(h)
            if not np.array_equal(got.pred_bits, ref[flavor].pred_bits):
                mismatches += 1
    report(6, mismatches == 0, f"{len(base)} seeded shuffles x 2 flavors, {mismatches} mismatches")
    assert mismatches == 0


def test_c7_complexity_scaling(report):
    n, aps, ks = 128, 8, (64, 128, 256, 512)
    times, ratios = [], []
    for k in ks:
        g = generate(GenSpec(n=n, k=k, arcs_per_step=aps, seed=k)).materialize()
        times.append(_median_time(lambda: strict_closure(g), reps=15))
        s = init_state(n)
        for snap in g:
            process_step_strict(s, snap)
        ratios.append(s.insertions / (k * aps * n))
    slope = float(np.polyfit(np.log(ks), np.log(times), 1)[0])
    c_bound = 1.0  # one arc adds at most n - 1 predecessors
    ok = 0.8 <= slope <= 1.3 and max(ratios) <= c_bound
    report(7, ok, f"log-log slope {slope:.3f} in [0.8, 1.3]; insertions/(k mu n) max "
                  f"{max(ratios):.4f} <= C={c_bound}; medians {[f'{t * 1e3:.2f}ms' for t in times]}")
    assert ok


def test_c8_crossover(report):
    n = 512
    aps = math.ceil(math.log2(n))
    k = math.ceil(math.sqrt(n))
    dedicated, baseline, ms = [], [], []
    for seed in range(10):
        g = generate(GenSpec(n=n, k=k, arcs_per_step=aps, seed=seed)).materialize()
        flat = FlatGraph(g)
        ms.append(g.params().m)
        dedicated.append(_median_time(lambda: strict_closure(g), reps=5))
        baseline.append(_median_time(lambda: baseline_closure(flat), reps=5))
    d, b = statistics.median(dedicated), statistics.median(baseline)
    ok = d < b
    report(8, ok, f"n={n} mu={aps} k={k} m~{statistics.median(ms):g}: dedicated {d * 1e3:.3f}ms "
                  f"vs baseline {b * 1e3:.3f}ms (x{b / d:.1f})")
    assert ok


def test_c9_markovian_early_connectivity(report):
    n, ceiling = 256, math.ceil(3 * math.log2(256))
    stops = []
    for seed in range(30):
        stream = generate(GenSpec(n=n, k=ceiling, model="markovian", p_birth=0.5, p_death=0.5,
                                  seed=seed))
        stops.append(strict_closure(stream, early_stop=True).stop_step)
    within = sum(s is not None and s <= ceiling for s in stops)
    ok = within >= 29
    band = sorted(s for s in stops if s is not None)
    report(9, ok, f"{within}/30 runs stopped by step {ceiling}; observed band "
                  f"[{band[0] if band else '-'}, {band[-1] if band else '-'}]")
    assert ok


def _traced_peak(stream):
    tracemalloc.start()
    try:
        closure = strict_closure(stream)
        _, peak = tracemalloc.get_traced_memory()
    finally:
        tracemalloc.stop()
    return peak, closure


def test_c10_streaming_memory(report):
    n, aps = 64, 4
    strict_closure(generate(GenSpec(n=n, k=50, arcs_per_step=aps, seed=0)))  # load kernels
    short = generate(GenSpec(n=n, k=10_000, arcs_per_step=aps, seed=0))
    long = generate(GenSpec(n=n, k=100_000, arcs_per_step=aps, seed=0))
    peak_short, _ = _traced_peak(short)
    peak_long, closure = _traced_peak(long)
    state = init_state(n)
    state_bytes = state.pred.nbytes + state.pred_new.nbytes + state.sizes.nbytes
    ok = (long.peak_snapshot_arcs == aps
          and closure.steps_processed == 100_000
          and peak_long <= peak_short + 4096
          and state_bytes <= 4 * n * n // 8 + 8 * n)
    report(10, ok, f"k=1e5: peak snapshot {long.peak_snapshot_arcs} arcs, traced peak "
                   f"{peak_long} B (k=1e4: {peak_short} B), engine state {state_bytes} B")
    assert ok

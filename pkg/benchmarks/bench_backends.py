#!/usr/bin/env python3
"""Time the numba kernels against the numpy fallback on identical inputs.

    python benchmarks/bench_backends.py [--reps 5]

Each workload is generated once, checked for identical results under both
backends, then timed (median of --reps after one warm-up).
"""
import argparse
import statistics
import time

from journeys import kernels
from journeys.baseline import FlatGraph, baseline_closure
from journeys.generators import GenSpec, generate
from journeys.nonstrict import nonstrict_closure
from journeys.strict import strict_closure

WORKLOADS = [
    ("strict n=128 k=512 mu=8", GenSpec(n=128, k=512, arcs_per_step=8, seed=1), "strict"),
    ("strict n=512 k=200 mu=64", GenSpec(n=512, k=200, arcs_per_step=64, seed=2), "strict"),
    ("strict n=1024 k=64 mu=2048", GenSpec(n=1024, k=64, arcs_per_step=2048, seed=3), "strict"),
    ("non-strict n=256 k=100 mu=64", GenSpec(n=256, k=100, arcs_per_step=64, seed=4), "nonstrict"),
    ("baseline n=512 k=23 mu=9", GenSpec(n=512, k=23, arcs_per_step=9, seed=5), "baseline"),
    ("baseline n=256 k=128 mu=16", GenSpec(n=256, k=128, arcs_per_step=16, seed=6), "baseline"),
]


def median_time(fn, reps):
    out = fn()
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=5)
    args = ap.parse_args()

    print(f"{'workload':<32} {'numba_ms':>10} {'numpy_ms':>10} {'speedup':>8}")
    for label, spec, kind in WORKLOADS:
        g = generate(spec).materialize()
        flat = FlatGraph(g)
        run = {
            "strict": lambda: strict_closure(g),
            "nonstrict": lambda: nonstrict_closure(g),
            "baseline": lambda: baseline_closure(flat),
        }[kind]
        results = {}
        for name in kernels.BACKENDS:
            prev = kernels.set_backend(name)
            try:
                results[name] = median_time(run, args.reps)
            finally:
                kernels.set_backend(prev)
        (t_nb, c_nb), (t_np, c_np) = results["numba"], results["numpy"]
        if c_nb != c_np:
            raise SystemExit(f"{label}: backends disagree")
        print(f"{label:<32} {t_nb * 1e3:>10.3f} {t_np * 1e3:>10.3f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()

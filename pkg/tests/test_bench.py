import os
import subprocess
import sys

import pytest

from journeys import kernels
from journeys.bench import Grid, measure, resolve, run_bench, summarize
from journeys.generators import GenSpec, generate
from journeys.strict import strict_closure


def test_resolve_symbolic_values():
    assert resolve("log2n", 512) == 9
    assert resolve("sqrtn", 512) == 23
    assert resolve("n", 40) == 40
    assert resolve("12", 40) == 12
    with pytest.raises(ValueError):
        resolve("cube", 8)


def test_rows_pair_up_and_agree_on_connectivity():
    grid = Grid(n=[24], k=[4, 40], model="markovian", p_birth=[0.05], p_death=[0.3],
                repetitions=3, algorithms=["dedicated-strict", "dedicated-nonstrict", "baseline"])
    rows = list(run_bench(grid))
    assert len(rows) == 2 * 3 * 3
    by_instance = {}
    for r in rows:
        assert r.mu <= r.m
        if r.stop_step is not None:
            assert r.stop_step <= r.k
        by_instance.setdefault((r.k, r.seed), {})[r.algorithm] = r.connected
    for algs in by_instance.values():
        assert algs["dedicated-strict"] == algs["baseline"]
    summary = summarize(rows)
    assert {s["algorithm"] for s in summary} == {"dedicated-strict", "dedicated-nonstrict", "baseline"}


def test_early_stop_keeps_connectivity():
    g = generate(GenSpec(n=32, k=30, model="markovian", p_birth=0.1, p_death=0.3, seed=3)).materialize()
    a = measure("dedicated-strict", g, 3, early_stop=True)
    b = measure("dedicated-strict", g, 3, early_stop=False)
    assert a.connected == b.connected and a.stop_step == b.stop_step


def test_sparse_markovian_stop_steps_are_minimal():
    seen = set()
    for seed in range(40):
        g = generate(GenSpec(n=20, k=40, model="markovian", p_birth=0.02, p_death=0.5,
                             seed=seed)).materialize()
        c = strict_closure(g, early_stop=True)
        if c.stop_step is None:
            assert not strict_closure(g).is_connected()
            continue
        seen.add(c.stop_step)
        assert strict_closure(g.prefix(c.stop_step)).is_connected()
        assert not strict_closure(g.prefix(c.stop_step - 1)).is_connected()
    assert len(seen) > 3


def test_unknown_algorithm():
    with pytest.raises(ValueError):
        list(run_bench(Grid(algorithms=["magic"])))


def test_env_flag_selects_numpy():
    code = "from journeys import kernels; print(kernels.active_backend())"
    env = dict(os.environ, **{kernels.ENV_FLAG: "1"})
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "numpy"
    env.pop(kernels.ENV_FLAG)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "numba"


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")

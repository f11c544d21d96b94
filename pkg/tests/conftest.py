import itertools
import random

import numpy as np
import pytest

from journeys import kernels
from journeys.model import EvolvingGraph

ACCEPTANCE_LINES = []


@pytest.fixture(params=kernels.BACKENDS)
def backend(request):
    prev = kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(prev)


@pytest.fixture
def report():
    def _report(criterion, passed, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_graph(rng: random.Random, n: int, k: int, p: float) -> EvolvingGraph:
    """Each ordered pair u != v present independently with probability p at every step."""
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    steps = [[pr for pr in pairs if rng.random() < p] for _ in range(k)]
    for arcs in steps:
        rng.shuffle(arcs)
    return EvolvingGraph.from_arc_lists(n, steps)


def random_suite(count=1000, seed=2014, max_n=8, max_k=6, p=0.25):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_graph(rng, rng.randint(1, max_n), rng.randint(0, max_k), p)


def exhaustive_suite(n=3, max_k=2, max_arcs=2):
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    subsets = [list(c) for r in range(max_arcs + 1) for c in itertools.combinations(pairs, r)]
    for k in range(max_k + 1):
        for steps in itertools.product(subsets, repeat=k):
            yield EvolvingGraph.from_arc_lists(n, steps)


def reach_by_squaring(n, arcs):
    """Static path reachability by repeated boolean matrix squaring."""
    r = np.eye(n, dtype=np.int64)
    for u, v in arcs:
        r[u, v] = 1
    while True:
        nxt = ((r @ r) > 0).astype(np.int64)
        if np.array_equal(nxt, r):
            break
        r = nxt
    out = r.astype(bool)
    np.fill_diagonal(out, False)
    return {(int(u), int(v)) for u, v in zip(*np.nonzero(out))}

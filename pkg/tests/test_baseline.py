import random

import numpy as np
import pytest

from journeys.baseline import (
    ArrivalTable,
    FlatGraph,
    baseline_closure,
    earliest_arrival,
    oracle_reach,
    parse_arrival_table,
    serialize_arrival_table,
)
from journeys.kernels import UNREACHABLE
from journeys.model import EvolvingGraph
from journeys.nonstrict import nonstrict_closure
from journeys.strict import strict_closure

from .conftest import random_graph, random_suite

FLAVORS = ("strict", "non-strict")


def test_oracle_examples():
    g = EvolvingGraph.from_arc_lists(3, [[(0, 1)], [(1, 2)]])
    assert oracle_reach(g, "strict").query(0, 2)
    swapped = EvolvingGraph.from_arc_lists(3, [[(1, 2)], [(0, 1)]])
    assert not oracle_reach(swapped, "strict").query(0, 2)
    assert not oracle_reach(swapped, "non-strict").query(0, 2)


def test_oracle_cap():
    with pytest.raises(ValueError):
        oracle_reach(EvolvingGraph(13), "strict")


def test_earliest_arrival_examples(backend):
    g = EvolvingGraph.from_arc_lists(3, [[(0, 1)], [(1, 2)]])
    assert earliest_arrival(g, 0, "strict").arrival.tolist() == [0, 1, 2]
    g = EvolvingGraph.from_arc_lists(3, [[(0, 1), (1, 2)]])
    assert earliest_arrival(g, 0, "non-strict").arrival.tolist() == [0, 1, 1]
    t = earliest_arrival(g, 0, "strict")
    assert t.arrival.tolist() == [0, 1, UNREACHABLE]
    assert t.reachable() == {0, 1}


def test_earliest_arrival_bad_source():
    with pytest.raises(IndexError):
        earliest_arrival(EvolvingGraph(2), 2)


def test_arrival_rows_match_oracle(backend):
    for g in random_suite(count=200, seed=5):
        flat = FlatGraph(g)
        for flavor in FLAVORS:
            oracle = oracle_reach(g, flavor).matrix()
            for s in range(g.n):
                table = earliest_arrival(flat, s, flavor)
                assert table.arrival[s] == 0
                assert table.reachable() == set(np.flatnonzero(oracle[s]).tolist())


def test_prefix_consistency_and_monotonicity(backend):
    rng = random.Random(13)
    for _ in range(40):
        g = random_graph(rng, rng.randint(2, 7), rng.randint(1, 6), 0.25)
        for flavor in FLAVORS:
            prefix_reach = [oracle_reach(g.prefix(t), flavor).matrix() for t in range(g.k + 1)]
            for s in range(g.n):
                arrivals = [earliest_arrival(g.prefix(t), s, flavor).arrival for t in range(g.k + 1)]
                for a, b in zip(arrivals, arrivals[1:]):
                    assert (b <= a).all()
                full = arrivals[-1]
                for v, t in enumerate(full.tolist()):
                    if t == UNREACHABLE:
                        assert not prefix_reach[-1][s, v]
                        continue
                    assert prefix_reach[t][s, v]
                    if t > 0:
                        assert not prefix_reach[t - 1][s, v]


def test_three_way_agreement(backend):
    for g in random_suite(count=200, seed=6):
        assert baseline_closure(g, "strict") == strict_closure(g) == oracle_reach(g, "strict")
        assert (baseline_closure(g, "non-strict") == nonstrict_closure(g)
                == oracle_reach(g, "non-strict"))


def test_single_vertex_and_components(backend):
    c = baseline_closure(EvolvingGraph.from_arc_lists(1, [[], []]))
    assert c.n == 1 and c.is_connected() and c.arc_set() == set()
    # two 3-cycles, never linked
    cycles = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]
    g = EvolvingGraph.from_arc_lists(6, [cycles] * 4)
    comp = [0, 0, 0, 1, 1, 1]
    expect = {(u, v) for u in range(6) for v in range(6) if u != v and comp[u] == comp[v]}
    for flavor in FLAVORS:
        assert baseline_closure(g, flavor).arc_set() == expect


def test_accepts_streams_and_bool_flags(backend):
    g = random_graph(random.Random(1), 5, 3, 0.3)
    assert baseline_closure(iter_with_n(g), True) == baseline_closure(g, "strict")
    with pytest.raises(ValueError):
        baseline_closure(g, "lenient")


class iter_with_n:
    def __init__(self, g):
        self.n = g.n
        self._g = g

    def __iter__(self):
        return iter(self._g.snapshots)


def test_arrival_table_round_trip():
    g = EvolvingGraph.from_arc_lists(4, [[(0, 1)], [(1, 2)]])
    t = earliest_arrival(g, 0)
    text = serialize_arrival_table(t)
    assert text == "source=0\n0 0\n1 1\n2 2\n3 -1\n"
    assert parse_arrival_table(text) == t
    assert isinstance(t, ArrivalTable)

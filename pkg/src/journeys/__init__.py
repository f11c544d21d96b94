"""Strict and non-strict transitive closures of journeys in untimed
directed evolving graphs, with early termination on temporal connectivity."""
from .baseline import ArrivalTable, baseline_closure, earliest_arrival, oracle_reach
from .closure import Closure, is_connected, query, read_closure, serialize_closure
from .generators import GenSpec, gen_markovian, gen_uniform
from .model import (
    EvolvingGraph,
    GraphParams,
    ParseError,
    Snapshot,
    compute_params,
    parse_evolving_graph,
    serialize_evolving_graph,
    snapshot_stream,
)
from .nonstrict import ClosedSnapshot, nonstrict_closure, static_closure
from .strict import PredecessorState, init_state, process_step_strict, strict_closure

__version__ = "0.1.0"

__all__ = [
    "ArrivalTable", "ClosedSnapshot", "Closure", "EvolvingGraph", "GenSpec", "GraphParams",
    "ParseError", "PredecessorState", "Snapshot", "baseline_closure", "compute_params",
    "earliest_arrival", "gen_markovian", "gen_uniform", "init_state", "is_connected",
    "nonstrict_closure", "oracle_reach", "parse_evolving_graph", "process_step_strict",
    "query", "read_closure", "serialize_closure", "serialize_evolving_graph",
    "snapshot_stream", "static_closure", "strict_closure",
]

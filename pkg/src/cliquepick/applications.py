"""Intervention target selection for active structure learning, and parent-set multiplicities for IDA."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

from .counting import count_mec
from .errors import PreconditionError, ResourceError
from .graph import PartiallyDirectedGraph, is_consistent_extension
from .orientation import intervention_update
from .sampling import RngStream

STRATEGIES = ("minmax", "entropy", "optsingle", "random")


class InterventionOutcome(NamedTuple):
    v: int
    K: frozenset[int]
    essential: PartiallyDirectedGraph
    size: int
    undirected_edge_count: int


@dataclass
class CandidateSummary:
    v: int
    sizes: list[int]
    max_size: int
    entropy: float
    max_undirected: int


@dataclass
class StrategyReport:
    strategy: str
    candidates: list[CandidateSummary]
    chosen: int


def enumerate_intervention_results(G: PartiallyDirectedGraph, v: int, max_outcomes: int | None = None) -> list[frozenset[int]]:
    """Every clique (the empty one included) among the undirected neighbors of ``v``.

    Sorted by size, then lexicographically.
    """
    nbrs = sorted(G.undirected_neighbors(v))
    out: list[tuple[int, ...]] = []

    def extend(clique: tuple[int, ...], start: int):
        out.append(clique)
        if max_outcomes is not None and len(out) > max_outcomes:
            raise ResourceError(f"vertex {v} has more than {max_outcomes} possible intervention outcomes")
        for j in range(start, len(nbrs)):
            y = nbrs[j]
            if all(G.has_undirected(x, y) for x in clique):
                extend(clique + (y,), j + 1)

    extend((), 0)
    out.sort(key=lambda c: (len(c), c))
    return [frozenset(c) for c in out]


def evaluate_vertex(G: PartiallyDirectedGraph, v: int, max_outcomes: int | None = None) -> list[InterventionOutcome]:
    """Essential graph, class size and leftover undirected edges for each possible result of intervening on ``v``."""
    if not G.undirected_neighbors(v):
        return []
    out = []
    for K in enumerate_intervention_results(G, v, max_outcomes):
        E = intervention_update(G, v, K)
        out.append(InterventionOutcome(v, K, E, count_mec(E), len(E.undirected)))
    return out


def entropy_bits(sizes: list[int]) -> float:
    total = sum(sizes)
    # sorted summands make equal multisets produce bit-identical results
    return -math.fsum(s / total * math.log2(s / total) for s in sorted(sizes))


def candidate_vertices(G: PartiallyDirectedGraph) -> list[int]:
    return [v for v in G.vertices if G.undirected_neighbors(v)]


def summarize(G: PartiallyDirectedGraph, v: int, max_outcomes: int | None = None) -> CandidateSummary:
    outcomes = evaluate_vertex(G, v, max_outcomes)
    sizes = [o.size for o in outcomes]
    return CandidateSummary(v, sizes, max(sizes), entropy_bits(sizes), max(o.undirected_edge_count for o in outcomes))


def strategy_report(
    G: PartiallyDirectedGraph,
    strategy: str,
    rng: RngStream | None = None,
    max_outcomes: int | None = None,
    threads: int = 1,
) -> StrategyReport:
    """Evaluate every candidate and pick one; ties go to the smallest vertex id."""
    if strategy not in STRATEGIES:
        raise PreconditionError(f"unknown strategy {strategy!r}, expected one of {STRATEGIES}")
    cands = candidate_vertices(G)
    if not cands:
        raise PreconditionError("graph is fully directed, there is no intervention target")
    if strategy == "random":
        rng = rng if rng is not None else RngStream()
        return StrategyReport(strategy, [], rng.choice(cands))
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            summaries = list(pool.map(lambda v: summarize(G, v, max_outcomes), cands))
    else:
        summaries = [summarize(G, v, max_outcomes) for v in cands]
    if strategy == "minmax":
        best = min(summaries, key=lambda s: (s.max_size, s.v))
    elif strategy == "entropy":
        best = min(summaries, key=lambda s: (-s.entropy, s.v))
    else:
        best = min(summaries, key=lambda s: (s.max_undirected, s.v))
    return StrategyReport(strategy, summaries, best.v)


def select_target(
    G: PartiallyDirectedGraph,
    strategy: str,
    rng: RngStream | None = None,
    max_outcomes: int | None = None,
    threads: int = 1,
) -> int:
    return strategy_report(G, strategy, rng, max_outcomes, threads).chosen


class TraceStep(NamedTuple):
    v: int
    K: frozenset[int]
    essential: PartiallyDirectedGraph
    size: int

    def format(self, step: int) -> str:
        k = ",".join(map(str, sorted(self.K))) or "-"
        return f"{step} {self.v} {k} {self.size}"


def simulate_active_learning(
    C: PartiallyDirectedGraph,
    true_dag: PartiallyDirectedGraph,
    strategy: str,
    rng: RngStream | None = None,
    max_outcomes: int | None = None,
    threads: int = 1,
) -> tuple[int, list[TraceStep]]:
    """Intervene until the graph is fully oriented; the oracle answers with the true parents."""
    if not is_consistent_extension(true_dag, C):
        raise PreconditionError("true DAG is not a member of the class represented by the graph")
    rng = rng if rng is not None else RngStream()
    G = C
    trace = []
    while G.undirected:
        v = select_target(G, strategy, rng, max_outcomes, threads)
        K = true_dag.parents(v) & G.undirected_neighbors(v)
        G = intervention_update(G, v, K)
        trace.append(TraceStep(v, frozenset(K), G, count_mec(G)))
    return len(trace), trace


def ida_multiplicities(C: PartiallyDirectedGraph, i: int, max_outcomes: int | None = None) -> list[tuple[frozenset[int], int]]:
    """Possible parent sets of ``i`` across the class, with the number of DAGs having each."""
    base = C.parents(i)
    if not C.undirected_neighbors(i):
        return [(frozenset(base), count_mec(C))]
    return [
        (frozenset(base | K), count_mec(intervention_update(C, i, K)))
        for K in enumerate_intervention_results(C, i, max_outcomes)
    ]

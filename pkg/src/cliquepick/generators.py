"""Random connected chordal graphs: subtree-intersection and interval models."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .chordal import is_chordal, maximal_cliques
from .errors import PreconditionError
from .graph import PartiallyDirectedGraph, undirected_components

MODELS = ("subtree", "interval")


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters of a random chordal graph.

    ``k`` is the mean subtree size in the subtree model (default ``log n``);
    the interval model ignores it.
    """

    model: str
    n: int
    k: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.model not in MODELS:
            raise PreconditionError(f"unknown model {self.model!r}, expected one of {MODELS}")
        if self.n < 1:
            raise PreconditionError(f"n must be at least 1, got {self.n}")
        if self.k is not None and self.k < 1:
            raise PreconditionError(f"k must be at least 1, got {self.k}")


def generate_chordal(spec: GeneratorSpec) -> PartiallyDirectedGraph:
    """Draw a connected chordal graph on ``1..n`` according to ``spec``."""
    rng = random.Random(spec.seed)
    if spec.model == "subtree":
        k = spec.k if spec.k is not None else max(1.0, math.log(spec.n))
        edges = _subtree_edges(spec.n, k, rng)
    else:
        edges = _interval_edges(spec.n, rng)
    G = _connect(PartiallyDirectedGraph.from_undirected(spec.n, edges))
    assert is_chordal(G), "generator produced a non-chordal graph"
    return G


def _subtree_edges(n: int, k: float, rng: random.Random) -> set[tuple[int, int]]:
    # Host: random recursive tree on n nodes. Each vertex grows a subtree from a
    # random node by repeatedly adding a uniform frontier node, with size uniform
    # on 1..2k-1.
    host = [[] for _ in range(n)]
    for x in range(1, n):
        p = rng.randrange(x)
        host[x].append(p)
        host[p].append(x)
    hi = max(1, round(2 * k - 1))
    members = [[] for _ in range(n)]  # host node -> vertices covering it
    for v in range(1, n + 1):
        size = rng.randint(1, hi)
        start = rng.randrange(n)
        sub = {start}
        frontier = list(host[start])
        while len(sub) < size and frontier:
            i = rng.randrange(len(frontier))
            frontier[i], frontier[-1] = frontier[-1], frontier[i]
            x = frontier.pop()
            if x in sub:
                continue
            sub.add(x)
            frontier.extend(y for y in host[x] if y not in sub)
        for x in sub:
            members[x].append(v)
    edges = set()
    for vs in members:
        for i, a in enumerate(vs):
            for b in vs[i + 1:]:
                edges.add((a, b))
    return edges


def _interval_edges(n: int, rng: random.Random) -> set[tuple[int, int]]:
    intervals = []
    for v in range(1, n + 1):
        a, b = rng.random(), rng.random()
        intervals.append((min(a, b), max(a, b), v))
    intervals.sort()
    edges = set()
    active: list[tuple[float, int]] = []
    for lo, hi, v in intervals:
        active = [(h, u) for h, u in active if h >= lo]
        for _, u in active:
            edges.add((min(u, v), max(u, v)))
        active.append((hi, v))
    return edges


def _connect(G: PartiallyDirectedGraph) -> PartiallyDirectedGraph:
    # An edge between two components lies on no cycle, so chordality survives.
    comps = undirected_components(G)
    if len(comps) == 1:
        return G
    reps = []
    for comp in comps:
        adj = G.undirected_adjacency(comp)
        cliques = maximal_cliques(adj)
        reps.append(min(v for v in comp if any(len(c) == len(adj[v]) + 1 and v in c for c in cliques)))
    extra = [(min(a, b), max(a, b)) for a, b in zip(reps, reps[1:])]
    return PartiallyDirectedGraph.from_undirected(G.n, set(G.undirected) | set(extra))

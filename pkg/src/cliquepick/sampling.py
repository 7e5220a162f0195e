"""Exact uniform sampling of orientations of chordal graphs and DAGs of a Markov equivalence class."""

from __future__ import annotations

import bisect
import itertools
import random
import secrets
from dataclasses import dataclass, field
from typing import AbstractSet, Iterator, MutableSequence, Sequence

from .chordal import PrefixChain, as_adjacency
from .counting import CountMemo, UccgPlan, _check_uccg, _solve
from .errors import StructuralError
from .graph import Dag, PartiallyDirectedGraph, undirected_components


class RngStream:
    """Seeded random source; uniform integers below arbitrarily large bounds are exact."""

    def __init__(self, seed: int | None = None):
        if seed is None:
            seed = secrets.randbits(64)
        self.seed = seed
        self._rng = random.Random(seed)

    def randrange(self, bound: int) -> int:
        # random.Random.randrange draws getrandbits blocks and rejects, so it is unbiased
        return self._rng.randrange(bound)

    def shuffle(self, xs: MutableSequence) -> None:
        self._rng.shuffle(xs)

    def random(self) -> float:
        return self._rng.random()

    def choice(self, xs: Sequence):
        return xs[self._rng.randrange(len(xs))]

    def __repr__(self):
        return f"RngStream(seed={self.seed})"


@dataclass
class RejectionStats:
    """Counters for the permutation rejection loop."""

    draws: int = 0
    trials: int = 0

    @property
    def mean_trials(self) -> float:
        return self.trials / self.draws if self.draws else 0.0


@dataclass
class SamplerIndex:
    """Clique-tree plans of a connected chordal graph and of every subgraph reached while sampling it."""

    root: frozenset[int]
    plans: dict[frozenset[int], UccgPlan]
    cumulative: dict[frozenset[int], list[int]] = field(default_factory=dict)

    def __post_init__(self):
        for key, plan in self.plans.items():
            self.cumulative[key] = list(itertools.accumulate(plan.weights))

    @property
    def total(self) -> int:
        return self.plans[self.root].total


def build_sampler_index(U) -> SamplerIndex:
    """Run the count once and keep the per-node weights for sampling."""
    adj = as_adjacency(U)
    _check_uccg(adj)
    plans: dict[frozenset[int], UccgPlan] = {}
    _solve(adj, CountMemo(), plans=plans)
    return SamplerIndex(frozenset(adj), plans)


def draw_clique_node(index: SamplerIndex, key: frozenset[int], rng: RngStream) -> int:
    """Tree node of ``key``'s plan with probability proportional to its weight."""
    cum = index.cumulative[key]
    return bisect.bisect_right(cum, rng.randrange(cum[-1]))


def draw_allowed_permutation(
    K: AbstractSet[int], fp: PrefixChain, rng: RngStream, stats: RejectionStats | None = None
) -> list[int]:
    """Uniform permutation of ``K`` having no set of ``fp`` as a prefix, by rejection."""
    perm = sorted(K)
    o = fp.first_occurrence(perm)
    n = len(perm)
    trials = 0
    while True:
        trials += 1
        rng.shuffle(perm)
        if not fp or not _has_forbidden_prefix(perm, o, n):
            break
    if stats is not None:
        stats.draws += 1
        stats.trials += trials
    return perm


def _has_forbidden_prefix(perm: Sequence[int], o: dict[int, int], n: int) -> bool:
    # the first i entries form a chain set exactly when their largest o-value is i
    top = 0
    for i in range(1, n):
        x = o[perm[i - 1]]
        if x > top:
            top = x
        if top == i:
            return True
    return False


def sample_amo(index: SamplerIndex, rng: RngStream, stats: RejectionStats | None = None) -> list[int]:
    """Topological ordering of a uniformly random acyclic moral orientation of the indexed graph."""
    out: list[int] = []
    stack = [index.root]
    while stack:
        key = stack.pop()
        plan = index.plans[key]
        node = plan.nodes[draw_clique_node(index, key, rng)]
        out.extend(draw_allowed_permutation(node.clique, node.chain, rng, stats))
        stack.extend(reversed(node.components))
    return out


def _component_indices(C: PartiallyDirectedGraph) -> list[SamplerIndex]:
    out = []
    for comp in undirected_components(C, include_singletons=False):
        adj = C.undirected_adjacency(comp)
        try:
            out.append(build_sampler_index(adj))
        except StructuralError:
            raise StructuralError(f"undirected component {sorted(comp)} is not chordal, so the input is not a CPDAG") from None
    return out


def _assemble(C: PartiallyDirectedGraph, orders: Sequence[Sequence[int]]) -> Dag:
    pos = {v: i for order in orders for i, v in enumerate(order)}
    edges = set(C.directed)
    edges.update((u, v) if pos[u] < pos[v] else (v, u) for u, v in C.undirected)
    return Dag(C.n, edges)


def sample_dag_from_mec(C: PartiallyDirectedGraph, rng: RngStream, stats: RejectionStats | None = None) -> Dag:
    """Uniformly random member of the Markov equivalence class of the CPDAG ``C``."""
    return MECSampler(rng).fit(C).sample_one(stats)


class MECSampler:
    """Reusable uniform sampler over the DAGs represented by a CPDAG.

    >>> from cliquepick.graph import PartiallyDirectedGraph
    >>> C = PartiallyDirectedGraph(3, undirected=[(1, 2), (2, 3)])
    >>> dags = MECSampler(seed=7).fit(C).sample(2)
    """

    def __init__(self, seed: int | RngStream | None = None):
        self.rng = seed if isinstance(seed, RngStream) else RngStream(seed)
        self.stats = RejectionStats()
        self.graph_: PartiallyDirectedGraph | None = None
        self.indices_: list[SamplerIndex] = []

    def fit(self, C: PartiallyDirectedGraph) -> "MECSampler":
        self.indices_ = _component_indices(C)
        self.graph_ = C
        return self

    @property
    def size(self) -> int:
        total = 1
        for idx in self.indices_:
            total *= idx.total
        return total

    def sample_orders(self, stats: RejectionStats | None = None) -> list[list[int]]:
        """One sampled topological ordering per undirected component."""
        stats = stats if stats is not None else self.stats
        return [sample_amo(idx, self.rng, stats) for idx in self.indices_]

    def sample_one(self, stats: RejectionStats | None = None) -> Dag:
        if self.graph_ is None:
            raise RuntimeError("call fit() before sampling")
        return _assemble(self.graph_, self.sample_orders(stats))

    def sample(self, k: int) -> list[Dag]:
        return [self.sample_one() for _ in range(k)]

    def iter_samples(self) -> Iterator[Dag]:
        while True:
            yield self.sample_one()

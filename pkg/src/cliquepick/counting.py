"""Counting acyclic moral orientations of chordal graphs and sizes of Markov equivalence classes.

The count of a connected chordal graph is a sum over the nodes of a rooted
clique tree: each clique may be placed first in a topological ordering in
``phi`` ways that avoid double counting, and the undirected components that
remain after orienting away from the clique are counted recursively.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import AbstractSet, Callable, Iterable, Sequence

from .chordal import Adjacency, PrefixChain, RootedCliqueTree, as_adjacency, build_clique_tree, forbidden_prefix_chains
from .errors import PreconditionError, StructuralError
from .graph import PartiallyDirectedGraph, undirected_components
from .orientation import clique_component_sets


def phi(s: int, chain_sizes: Sequence[int] = ()) -> int:
    """Permutations of an ``s``-set with none of the nested sets of the given sizes as a prefix.

    >>> phi(4, (2, 3))
    16
    """
    chain_sizes = tuple(chain_sizes)
    if s < 0:
        raise PreconditionError(f"set size must be nonnegative, got {s}")
    prev = 0
    for x in chain_sizes:
        if not prev < x < s:
            raise PreconditionError(f"chain sizes {chain_sizes} must be strictly increasing and below {s}")
        prev = x
    return _phi(s, chain_sizes)


@lru_cache(maxsize=None)
def _phi(s: int, chain: tuple[int, ...]) -> int:
    total = math.factorial(s)
    for i, x in enumerate(chain):
        total -= math.factorial(s - x) * _phi(x, chain[:i])
    return total


def phi_general(S: AbstractSet[int], forbidden: Iterable[AbstractSet[int]]) -> int:
    """Permutations of ``S`` with no member of ``forbidden`` as a prefix; the sets need not be nested."""
    S = frozenset(S)
    R = sorted({frozenset(x) for x in forbidden if x < S}, key=len)
    # g[Y]: permutations of Y with no proper prefix in R
    g = {}
    for Y in R:
        g[Y] = math.factorial(len(Y)) - sum(g[Z] * math.factorial(len(Y) - len(Z)) for Z in g if Z < Y)
    return math.factorial(len(S)) - sum(g[Y] * math.factorial(len(S) - len(Y)) for Y in R)


class CountMemo(dict):
    """Map from a vertex set (induced subgraph of the top-level graph) to its orientation count."""


@dataclass
class CliqueNode:
    clique: frozenset[int]
    chain: PrefixChain
    phi: int
    components: tuple[frozenset[int], ...]


@dataclass
class UccgPlan:
    """Clique tree of one connected chordal graph with everything the count and the sampler need."""

    vertices: frozenset[int]
    tree: RootedCliqueTree
    nodes: list[CliqueNode]
    weights: list[int] = field(default_factory=list)
    total: int = 0


def _induced(top: Adjacency, vs: frozenset[int]) -> dict[int, frozenset[int]]:
    return {v: top[v] & vs for v in vs}


def _is_clique(adj: Adjacency) -> bool:
    m = len(adj) - 1
    return all(len(nb) == m for nb in adj.values())


def _build_plan(top: Adjacency, vs: frozenset[int], pool: ThreadPoolExecutor | None) -> UccgPlan:
    adj = _induced(top, vs)
    tree = build_clique_tree(adj)
    chains = forbidden_prefix_chains(tree)
    if pool is not None and len(tree) > 1:
        comps = list(pool.map(lambda c: clique_component_sets(adj, c), tree.cliques))
    else:
        comps = [clique_component_sets(adj, c) for c in tree.cliques]
    nodes = [
        CliqueNode(c, ch, _phi(len(c), ch.sizes), cs)
        for c, ch, cs in zip(tree.cliques, chains, comps)
    ]
    return UccgPlan(vs, tree, nodes)


def _solve(
    top: Adjacency,
    memo: CountMemo,
    threads: int = 1,
    plans: dict | None = None,
    weight: Callable[[frozenset[int], CliqueNode], int] | None = None,
) -> int:
    """Count the whole of ``top`` with an explicit stack; fills ``memo`` and optionally ``plans``.

    ``weight`` replaces the per-node permutation count (used for ordering constraints).
    """
    root = frozenset(top)
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        stack = [root]
        building: dict[frozenset[int], UccgPlan] = {}
        while stack:
            key = stack[-1]
            if key in memo:
                stack.pop()
                continue
            if len(key) == 1 or (weight is None and _is_clique(_induced(top, key))):
                memo[key] = math.factorial(len(key))
                if plans is not None:
                    plans[key] = _clique_plan(key)
                stack.pop()
                continue
            plan = building.get(key)
            if plan is None:
                plan = building[key] = _build_plan(top, key, pool)
            missing = [c for node in plan.nodes for c in node.components if c not in memo]
            if missing:
                stack.extend(reversed(missing))
                continue
            weights = []
            for node in plan.nodes:
                w = node.phi if weight is None else weight(key, node)
                for c in node.components:
                    w *= memo[c]
                weights.append(w)
            plan.weights = weights
            plan.total = sum(weights)
            memo[key] = plan.total
            del building[key]
            if plans is not None:
                plans[key] = plan
            stack.pop()
    finally:
        if pool is not None:
            pool.shutdown()
    return memo[root]


def _clique_plan(key: frozenset[int]) -> UccgPlan:
    tree = RootedCliqueTree((key,), (None,), (None,))
    n = math.factorial(len(key))
    return UccgPlan(key, tree, [CliqueNode(key, PrefixChain(), n, ())], [n], n)


def _check_uccg(adj: Adjacency) -> None:
    if not adj:
        raise StructuralError("graph has no vertices")
    build_clique_tree(adj)  # raises on non-chordal or disconnected input


def count_amo(U, memo: CountMemo | None = None, threads: int = 1) -> int:
    """Number of acyclic orientations without v-structures of a connected chordal graph.

    Parameters
    ----------
    U : PartiallyDirectedGraph or mapping
        Undirected connected chordal graph.
    memo : CountMemo, optional
        Receives one entry per distinct subgraph counted.
    threads : int
        Worker threads for per-clique component computations.
    """
    adj = as_adjacency(U)
    _check_uccg(adj)
    if memo is None:
        memo = CountMemo()
    return _solve(adj, memo, threads)


def count_mec(C: PartiallyDirectedGraph, threads: int = 1) -> int:
    """Number of DAGs in the Markov equivalence class represented by the CPDAG ``C``."""
    comps = [c for c in undirected_components(C) if len(c) > 1]
    adjs = []
    for comp in comps:
        adj = C.undirected_adjacency(comp)
        try:
            build_clique_tree(adj)
        except StructuralError:
            raise StructuralError(
                f"undirected component {sorted(comp)} is not chordal, so the input is not a CPDAG; "
                "use count_with_background for general partially directed graphs"
            ) from None
        adjs.append(adj)
    if threads > 1 and len(adjs) > 1:
        with ThreadPoolExecutor(threads) as pool:
            counts = list(pool.map(lambda a: _solve(a, CountMemo()), adjs))
    else:
        counts = [_solve(a, CountMemo(), threads) for a in adjs]
    return math.prod(counts)


def count_amo_by_separators(U) -> int:
    """Independent count summing over maximal cliques and minimal separators.

    Slow; meant as a cross-check for :func:`count_amo` on small graphs.
    """
    adj = as_adjacency(U)
    _check_uccg(adj)
    return _by_separators(adj)


def _by_separators(adj: Adjacency) -> int:
    if len(adj) == 1:
        return 1
    tree = build_clique_tree(adj)
    seps = tree.minimal_separators()
    total = 0
    for S in set(tree.cliques) | seps:
        w = phi_general(S, (x for x in seps if x < S))
        for comp in clique_component_sets(adj, S):
            w *= _by_separators(_induced(adj, comp))
        total += w
    return total

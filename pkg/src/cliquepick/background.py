"""Counting consistent extensions of partially directed graphs carrying background knowledge.

Directed edges inside an undirected component of the CPDAG act as ordering
constraints on that component. The clique-tree count is reused with the
prefix-avoiding permutation count replaced by one that also respects the
constraints, which needs counts of linear extensions of small partial orders.
"""

from __future__ import annotations

import math
from collections import defaultdict
from typing import AbstractSet, Iterable

from .chordal import PrefixChain
from .counting import CliqueNode, CountMemo, _solve
from .errors import NotExtendableError, PreconditionError, ResourceError
from .graph import Dag, PartiallyDirectedGraph, is_consistent_extension, undirected_components, v_structures
from .orientation import meek_closure

DEFAULT_TO_CAP = 20

Pair = tuple[int, int]


def _restrict(pairs: Iterable[Pair], S: AbstractSet[int]) -> list[Pair]:
    return [(u, w) for u, w in pairs if u in S and w in S]


def count_topological_orderings(S: Iterable[int], order: Iterable[Pair] = (), cap: int = DEFAULT_TO_CAP) -> int:
    """Number of orderings of ``S`` in which ``u`` precedes ``w`` for every pair ``(u, w)`` of ``order``.

    Pairs with an endpoint outside ``S`` are ignored. Elements not related to
    each other are counted independently, so ``cap`` bounds the size of the
    largest connected block of the relation rather than of ``S``.
    """
    S = list(dict.fromkeys(S))
    pairs = _restrict(set(order), set(S))
    if not pairs:
        return math.factorial(len(S))
    blocks = _blocks(S, pairs)
    total = math.factorial(len(S))
    for block in blocks:
        total //= math.factorial(len(block))
    for block in blocks:
        if len(block) > cap:
            raise ResourceError(
                f"ordering constraints connect {len(block)} elements, above the cap of {cap}; raise the cap to proceed"
            )
        total *= _count_linear_extensions(block, _restrict(pairs, set(block)))
    return total


def _blocks(S: list[int], pairs: list[Pair]) -> list[list[int]]:
    parent = {x: x for x in S}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, w in pairs:
        parent[find(u)] = find(w)
    groups = defaultdict(list)
    for x in S:
        groups[find(x)].append(x)
    return list(groups.values())


def _count_linear_extensions(S: list[int], pairs: list[Pair]) -> int:
    if len(S) == 1:
        return 1
    idx = {x: i for i, x in enumerate(S)}
    pred = [0] * len(S)
    for u, w in pairs:
        pred[idx[w]] |= 1 << idx[u]
    # layer-by-layer over down-closed subsets
    layer = {0: 1}
    for _ in range(len(S)):
        nxt: dict[int, int] = defaultdict(int)
        for mask, c in layer.items():
            for i, p in enumerate(pred):
                bit = 1 << i
                if not mask & bit and p & mask == p:
                    nxt[mask | bit] += c
        if not nxt:
            raise PreconditionError("ordering constraints contain a cycle")
        layer = nxt
    return layer[(1 << len(S)) - 1]


def phi_prime(S: AbstractSet[int], chain: PrefixChain, order: Iterable[Pair] = (), cap: int = DEFAULT_TO_CAP) -> int:
    """Orderings of ``S`` that respect ``order`` and avoid every set of ``chain`` as a prefix."""
    S = frozenset(S)
    sets = list(chain)
    if sets and not sets[-1] < S:
        raise PreconditionError("chain sets must be proper subsets of S")
    pairs = _restrict(set(order), S)
    # inner[i]: the same count for X_i with the first i chain sets
    inner: list[int] = []
    for i, X in enumerate(sets):
        inner.append(_phi_prime_step(X, sets[:i], inner, _restrict(pairs, X), cap))
    return _phi_prime_step(S, sets, inner, pairs, cap)


def _phi_prime_step(S, sets, inner, pairs, cap) -> int:
    total = count_topological_orderings(S, pairs, cap)
    for X, sub in zip(sets, inner):
        if any(u not in X and w in X for u, w in pairs):
            continue  # X cannot be a prefix of any allowed ordering
        total -= count_topological_orderings(S - X, pairs, cap) * sub
    return total


def extend_pdag(G: PartiallyDirectedGraph) -> Dag:
    """A consistent extension, found by repeatedly removing an eligible sink."""
    alive = set(G.vertices)
    und = {v: set(G.undirected_neighbors(v)) for v in G.vertices}
    ch = {v: set(G.children(v)) for v in G.vertices}
    pa = {v: set(G.parents(v)) for v in G.vertices}
    edges = set(G.directed)
    while alive:
        for x in sorted(alive):
            if ch[x]:
                continue
            nbrs = und[x] | pa[x]
            if all(nbrs - {y} <= (und[y] | pa[y] | ch[y]) for y in und[x]):
                break
        else:
            raise NotExtendableError("graph admits no consistent extension")
        for y in und[x]:
            edges.add((y, x))
            und[y].discard(x)
        for y in pa[x]:
            ch[y].discard(x)
        alive.discard(x)
        und[x] = set()
        pa[x] = set()
    D = Dag(G.n, edges)
    if not is_consistent_extension(D, G):
        raise NotExtendableError("graph admits no consistent extension")
    return D


def dag_to_cpdag(D: PartiallyDirectedGraph) -> PartiallyDirectedGraph:
    """Essential graph of a DAG: keep v-structure edges directed, then close under the Meek rules."""
    keep = set()
    for a, b, c in v_structures(D):
        keep.add((a, b))
        keep.add((c, b))
    undirected = [(min(u, v), max(u, v)) for u, v in D.directed if (u, v) not in keep]
    return meek_closure(PartiallyDirectedGraph(D.n, keep, undirected))


def pdag_to_cpdag(G: PartiallyDirectedGraph) -> PartiallyDirectedGraph:
    """CPDAG of the equivalence class that holds every consistent extension of ``G``."""
    return dag_to_cpdag(extend_pdag(G))


def count_with_background(G: PartiallyDirectedGraph, to_cap: int = DEFAULT_TO_CAP) -> int:
    """Number of consistent extensions of a partially directed graph."""
    C = pdag_to_cpdag(G)
    total = 1
    for comp in undirected_components(C, include_singletons=False):
        pairs = _restrict(G.directed, comp)
        total *= _count_component(C.undirected_adjacency(comp), pairs, to_cap)
        if not total:
            break
    return total


def _count_component(adj, pairs: list[Pair], cap: int) -> int:
    if not pairs:
        return _solve(adj, CountMemo())

    def weight(key: frozenset[int], node: CliqueNode) -> int:
        K = node.clique
        comp_of = {x: j for j, c in enumerate(node.components) for x in c}
        inside = []
        for u, w in pairs:
            if u not in key or w not in key:
                continue
            if u in K and w in K:
                inside.append((u, w))
            elif w in K:
                return 0  # the clique comes first, so edges leave it
            elif u not in K and comp_of[u] > comp_of[w]:
                return 0  # contradicts the orientation between components
        try:
            return phi_prime(K, node.chain, inside, cap)
        except ResourceError:
            raise ResourceError(
                f"clique of size {len(K)} exceeds the ordering-count cap of {cap}; raise the cap to proceed"
            ) from None

    return _solve(adj, CountMemo(), weight=weight)

"""Orientations forced by putting a clique first, Meek closure, and intervention updates."""

from __future__ import annotations

import heapq
import operator
import warnings
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from .chordal import Adjacency, as_adjacency, is_chordal
from .errors import PreconditionError
from .graph import PartiallyDirectedGraph, undirected_components


@dataclass(frozen=True)
class LabelingStructure:
    """Label domain for Maximum Label Search.

    ``less`` must be a strict total preorder on labels; ``increase(label, i)``
    receives the countdown index ``n - i + 1`` of the visiting iteration.
    """

    initial: Any
    increase: Callable[[Any, int], Any]
    less: Callable[[Any, Any], bool] = operator.lt
    name: str = "custom"


MAXIMUM_CARDINALITY = LabelingStructure(0, lambda label, _: label + 1, name="mcs")
LEX_BFS = LabelingStructure((), lambda label, i: label + (i,), name="lexbfs")


@dataclass(frozen=True)
class CliqueComponents:
    """Undirected components left after orienting everything away from a clique.

    ``visit_index[x]`` is the iteration at which ``x`` was emitted;
    ``parent_sets[j]`` is the common parent set of ``components[j]``.
    """

    components: tuple[frozenset[int], ...]
    visit_index: dict[int, int] = field(repr=False)
    parent_sets: tuple[frozenset[int], ...] = field(repr=False)

    def directed_edges(self, adj: Adjacency, clique: Iterable[int]) -> list[tuple[int, int]]:
        """Edges oriented by the clique start: clique outwards, then by emission order."""
        clique = set(clique)
        comp_of = {x: j for j, c in enumerate(self.components) for x in c}
        out = []
        for x, nb in adj.items():
            for y in nb:
                if x in clique:
                    if y not in clique:
                        out.append((x, y))
                elif y not in clique and comp_of[x] != comp_of[y] and self.visit_index[x] < self.visit_index[y]:
                    out.append((x, y))
        return out


def _check_clique(adj: Adjacency, K) -> None:
    for x in K:
        if x not in adj:
            raise PreconditionError(f"vertex {x} is not in the graph")
        if len(adj[x] & K) != len(K) - 1:
            raise PreconditionError(f"{sorted(K)} is not a clique")


def components_after_clique(U, K: Iterable[int], labeling: LabelingStructure = MAXIMUM_CARDINALITY) -> CliqueComponents:
    """Undirected components of the union of all orientations whose topological order starts with ``K``.

    Runs Maximum Label Search forced to visit ``K`` first; every maximal-label
    set materialized afterwards contributes its not-yet-emitted part as components.
    """
    adj = as_adjacency(U)
    K = frozenset(K)
    _check_clique(adj, K)
    if labeling is MAXIMUM_CARDINALITY:
        return _mcs_components(adj, K, detail=True)
    return _mls_components(adj, K, labeling)


def clique_component_sets(adj: Adjacency, K: frozenset[int]) -> tuple[frozenset[int], ...]:
    """Fast path used by counting: components only, no precondition checks."""
    return _mcs_components(adj, K, detail=False).components


def _mcs_components(adj: Adjacency, K: frozenset[int], detail: bool) -> CliqueComponents:
    label = dict.fromkeys(adj, 0)
    visited = set()
    emitted = set()
    # fresh[l]: unvisited, not yet emitted vertices with label l
    fresh: dict[int, set[int]] = {0: set(adj) - K}
    heap = [(0, v) for v in adj if v not in K]
    heapq.heapify(heap)
    comps = []
    visit_index = {}
    parent_sets = []

    def visit(x):
        visited.add(x)
        for y in adj[x]:
            if y in visited:
                continue
            lab = label[y]
            label[y] = lab + 1
            if y not in emitted and y not in K:
                fresh[lab].discard(y)
                fresh.setdefault(lab + 1, set()).add(y)
            heapq.heappush(heap, (-lab - 1, y))

    for x in sorted(K):
        visit(x)
    it = len(K)
    while heap:
        neg, x = heap[0]
        if x in visited or -neg != label[x]:
            heapq.heappop(heap)
            continue
        it += 1
        new = fresh.pop(-neg, None)
        if new:
            emitted |= new
            for comp in _components_within(adj, new):
                comps.append(comp)
                if detail:
                    rep = next(iter(comp))
                    parent_sets.append(frozenset(adj[rep] & visited))
                    for y in comp:
                        visit_index[y] = it
        heapq.heappop(heap)
        visit(x)
    return CliqueComponents(tuple(comps), visit_index, tuple(parent_sets))


def _mls_components(adj: Adjacency, K: frozenset[int], labeling: LabelingStructure) -> CliqueComponents:
    # Generic quadratic variant for arbitrary label structures.
    n = len(adj)
    label = dict.fromkeys(adj, labeling.initial)
    visited = set()
    emitted = set()
    comps, parent_sets, visit_index = [], [], {}
    k_order = sorted(K)
    for i in range(1, n + 1):
        if i <= len(K):
            x = k_order[i - 1]
        else:
            rest = [v for v in adj if v not in visited]
            top = rest[0]
            for v in rest[1:]:
                if labeling.less(label[top], label[v]):
                    top = v
            X = {v for v in rest if not labeling.less(label[v], label[top])}
            new = X - emitted
            if new:
                emitted |= new
                for comp in _components_within(adj, new):
                    comps.append(comp)
                    parent_sets.append(frozenset(adj[next(iter(comp))] & visited))
                    for y in comp:
                        visit_index[y] = i
            x = min(X)
        for y in adj[x]:
            if y not in visited:
                label[y] = labeling.increase(label[y], n - i + 1)
        visited.add(x)
    return CliqueComponents(tuple(comps), visit_index, tuple(parent_sets))


def _components_within(adj: Adjacency, vs: set[int]) -> list[frozenset[int]]:
    seen = set()
    out = []
    for s in sorted(vs):
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in vs and y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        out.append(frozenset(comp))
    return out


def meek_closure(G: PartiallyDirectedGraph) -> PartiallyDirectedGraph:
    """Apply Meek rules R1-R4 until no undirected edge can be oriented."""
    n = G.n
    und = [set(G.undirected_neighbors(v)) for v in range(n + 1)]
    pa = [set(G.parents(v)) for v in range(n + 1)]
    ch = [set(G.children(v)) for v in range(n + 1)]

    def adjacent(a, b):
        return b in und[a] or b in pa[a] or b in ch[a]

    def forced(x, y):
        # True if x - y must become x -> y
        for z in pa[x]:  # R1: z -> x - y, z and y nonadjacent
            if not adjacent(z, y):
                return True
        if ch[x] & pa[y]:  # R2: x -> z -> y
            return True
        common = und[x] & pa[y]  # R3: x - u -> y, x - w -> y, u and w nonadjacent
        if len(common) >= 2:
            cs = sorted(common)
            for i, u in enumerate(cs):
                for w in cs[i + 1:]:
                    if not adjacent(u, w):
                        return True
        for w in pa[y]:  # R4: u -> w -> y, x - u, x adjacent w, u and y nonadjacent
            if adjacent(w, x):
                for u in pa[w]:
                    if u in und[x] and not adjacent(u, y):
                        return True
        return False

    changed = True
    while changed:
        changed = False
        for x in range(1, n + 1):
            for y in sorted(und[x]):
                if y not in und[x]:
                    continue
                if forced(x, y):
                    und[x].discard(y)
                    und[y].discard(x)
                    ch[x].add(y)
                    pa[y].add(x)
                    changed = True
    directed = [(x, y) for x in range(1, n + 1) for y in ch[x]]
    undirected = [(x, y) for x in range(1, n + 1) for y in und[x] if x < y]
    return PartiallyDirectedGraph(n, directed, undirected)


def orient_at_vertex(G: PartiallyDirectedGraph, v: int, K: Iterable[int]) -> PartiallyDirectedGraph:
    """Orient every undirected edge at ``v``: into ``v`` from ``K``, out of ``v`` otherwise."""
    K = set(K)
    nbrs = G.undirected_neighbors(v)
    if not K <= nbrs:
        raise PreconditionError(f"{sorted(K - nbrs)} are not undirected neighbors of {v}")
    return G.orient([(u, v) if u in K else (v, u) for u in nbrs])


def intervention_update(G: PartiallyDirectedGraph, v: int, K: Iterable[int]) -> PartiallyDirectedGraph:
    """Essential graph after intervening on ``v`` when the revealed parents (within its chain component) are ``K``.

    Only the undirected component ``H`` holding ``v`` changes. Vertices reachable
    from ``v`` in ``H - K`` (call them D) are oriented by a clique-first search of
    ``H[D | K]`` started at ``K + v``; the rest of ``H`` keeps its undirected
    edges and receives edges from ``K`` into D.
    """
    K = frozenset(K)
    nbrs = G.undirected_neighbors(v)
    if not nbrs:
        raise PreconditionError(f"vertex {v} has no undirected edges")
    if not K <= nbrs:
        raise PreconditionError(f"{sorted(K - nbrs)} are not undirected neighbors of {v}")
    for a in K:
        if len(G.undirected_neighbors(a) & K) != len(K) - 1:
            raise PreconditionError(f"{sorted(K)} is not a clique")
    H = next(c for c in undirected_components(G, include_singletons=False) if v in c)
    adj = G.undirected_adjacency(H)
    if not is_chordal(adj):
        warnings.warn(
            f"component of vertex {v} is not chordal, input is not an essential graph; "
            "falling back to Meek closure",
            RuntimeWarning,
            stacklevel=2,
        )
        return meek_closure(orient_at_vertex(G, v, K))

    D = {v}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in D and y not in K:
                D.add(y)
                queue.append(y)
    start = K | {v}
    sub = {x: adj[x] & (D | K) for x in D | K}
    cc = _mcs_components(sub, start, detail=True)

    new_directed = set(G.directed)
    new_directed.update((u, v) for u in K)
    new_directed.update((v, u) for u in adj[v] if u not in K)
    for x in K:
        new_directed.update((x, y) for y in adj[x] if y in D)
    new_directed.update(e for e in cc.directed_edges(sub, start) if e[0] != v and e[0] not in K)
    undirected = [e for e in G.undirected if not (e[0] in H and e[1] in H)]
    for x in H - D:
        undirected.extend((x, y) for y in adj[x] if y not in D and x < y)
    for comp in cc.components:
        for x in comp:
            undirected.extend((x, y) for y in sub[x] if y in comp and x < y)
    return PartiallyDirectedGraph(G.n, new_directed, undirected)

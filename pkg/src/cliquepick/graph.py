"""Partially directed graphs, the plain-text graph format, and v-structure checks.

Vertices are the dense integers ``1..n``. An undirected edge is stored once as
the sorted pair ``(u, v)`` with ``u < v``; a directed edge ``u -> v`` as the
ordered pair ``(u, v)``.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, NamedTuple

from .errors import ParseError, PreconditionError

Edge = tuple[int, int]


class VStructure(NamedTuple):
    """Induced ``a -> b <- c`` with ``a < c`` and ``a``, ``c`` nonadjacent."""

    a: int
    b: int
    c: int


class PartiallyDirectedGraph:
    """Immutable mixed graph on vertices ``1..n``."""

    __slots__ = ("n", "directed", "undirected", "_parents", "_children", "_undirected_nbrs")

    def __init__(self, n: int, directed: Iterable[Edge] = (), undirected: Iterable[Edge] = ()):
        if n < 0:
            raise PreconditionError(f"vertex count must be nonnegative, got {n}")
        self.n = n
        parents = [set() for _ in range(n + 1)]
        children = [set() for _ in range(n + 1)]
        nbrs = [set() for _ in range(n + 1)]
        und = set()
        for u, v in undirected:
            self._check_pair(u, v)
            key = (u, v) if u < v else (v, u)
            if key in und:
                raise PreconditionError(f"duplicate undirected edge {key[0]}-{key[1]}")
            und.add(key)
            nbrs[u].add(v)
            nbrs[v].add(u)
        dirs = set()
        for u, v in directed:
            self._check_pair(u, v)
            if (u, v) in dirs:
                raise PreconditionError(f"duplicate directed edge {u}->{v}")
            if (v, u) in dirs or v in nbrs[u]:
                raise PreconditionError(f"conflicting edges between {u} and {v}")
            dirs.add((u, v))
            children[u].add(v)
            parents[v].add(u)
        self.directed = frozenset(dirs)
        self.undirected = frozenset(und)
        self._parents = [frozenset(s) for s in parents]
        self._children = [frozenset(s) for s in children]
        self._undirected_nbrs = [frozenset(s) for s in nbrs]

    def _check_pair(self, u, v):
        if not (1 <= u <= self.n and 1 <= v <= self.n):
            raise PreconditionError(f"edge ({u}, {v}) has an endpoint outside 1..{self.n}")
        if u == v:
            raise PreconditionError(f"self-loop at vertex {u}")

    @classmethod
    def from_undirected(cls, n: int, edges: Iterable[Edge]) -> "PartiallyDirectedGraph":
        return cls(n, undirected=edges)

    @classmethod
    def from_adjacency(cls, adj: dict[int, Iterable[int]], n: int | None = None) -> "PartiallyDirectedGraph":
        """Undirected graph from a symmetric adjacency mapping."""
        if n is None:
            n = max(adj, default=0)
        edges = {(u, v) if u < v else (v, u) for u, nb in adj.items() for v in nb}
        return cls(n, undirected=edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def parents(self, v: int) -> frozenset[int]:
        return self._parents[v]

    def children(self, v: int) -> frozenset[int]:
        return self._children[v]

    def undirected_neighbors(self, v: int) -> frozenset[int]:
        return self._undirected_nbrs[v]

    def neighbors(self, v: int) -> frozenset[int]:
        return self._parents[v] | self._children[v] | self._undirected_nbrs[v]

    def is_adjacent(self, u: int, v: int) -> bool:
        return v in self._undirected_nbrs[u] or v in self._children[u] or v in self._parents[u]

    def has_directed(self, u: int, v: int) -> bool:
        return v in self._children[u]

    def has_undirected(self, u: int, v: int) -> bool:
        return v in self._undirected_nbrs[u]

    @property
    def is_fully_directed(self) -> bool:
        return not self.undirected

    def skeleton(self) -> frozenset[Edge]:
        return self.undirected | frozenset((min(e), max(e)) for e in self.directed)

    def undirected_adjacency(self, vertices: Iterable[int] | None = None) -> dict[int, frozenset[int]]:
        """Adjacency of the undirected part, optionally induced on ``vertices``."""
        if vertices is None:
            return {v: self._undirected_nbrs[v] for v in self.vertices}
        vs = frozenset(vertices)
        return {v: self._undirected_nbrs[v] & vs for v in vs}

    def orient(self, pairs: Iterable[Edge]) -> "PartiallyDirectedGraph":
        """Copy with each listed undirected edge ``(u, v)`` turned into ``u -> v``."""
        und = set(self.undirected)
        dirs = set(self.directed)
        for u, v in pairs:
            key = (u, v) if u < v else (v, u)
            if key not in und:
                raise PreconditionError(f"{u}-{v} is not an undirected edge")
            und.discard(key)
            dirs.add((u, v))
        return PartiallyDirectedGraph(self.n, dirs, und)

    def edges(self) -> list[tuple[int, int, str]]:
        """All edges as ``(u, v, type)``, sorted by (min endpoint, max endpoint, type)."""
        rows = [(u, v, "d") for u, v in self.directed] + [(u, v, "u") for u, v in self.undirected]
        rows.sort(key=lambda r: (min(r[0], r[1]), max(r[0], r[1]), r[2]))
        return rows

    def __eq__(self, other):
        if not isinstance(other, PartiallyDirectedGraph):
            return NotImplemented
        return self.n == other.n and self.directed == other.directed and self.undirected == other.undirected

    def __hash__(self):
        return hash((self.n, self.directed, self.undirected))

    def __repr__(self):
        parts = [f"{u}->{v}" if t == "d" else f"{u}-{v}" for u, v, t in self.edges()]
        return f"{type(self).__name__}(n={self.n}, [{', '.join(parts)}])"


class Dag(PartiallyDirectedGraph):
    """Fully directed acyclic graph."""

    __slots__ = ()

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        super().__init__(n, directed=edges)
        if topological_order(self) is None:
            raise PreconditionError("edge set contains a directed cycle")

    @classmethod
    def from_order(cls, skeleton: Iterable[Edge], order: Iterable[int], n: int) -> "Dag":
        """Orient every skeleton edge from the earlier to the later vertex of ``order``."""
        pos = {v: i for i, v in enumerate(order)}
        return cls(n, ((u, v) if pos[u] < pos[v] else (v, u) for u, v in skeleton))


def topological_order(G: PartiallyDirectedGraph) -> list[int] | None:
    """Kahn ordering of the directed part, smallest id first; None if cyclic."""
    indeg = [len(G.parents(v)) for v in range(G.n + 1)]
    ready = [v for v in G.vertices if indeg[v] == 0]
    ready.sort(reverse=True)
    out = []
    while ready:
        v = ready.pop()
        out.append(v)
        for w in sorted(G.children(v), reverse=True):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
        ready.sort(reverse=True)
    return out if len(out) == G.n else None


def _significant_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def parse_graph(text: str | bytes) -> PartiallyDirectedGraph:
    """Parse the ``n m`` / ``u v t`` text format (``t`` is ``d`` or ``u``)."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    lines = _significant_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("empty input, expected header 'n m'") from None
    fields = header.split()
    if len(fields) != 2 or not all(f.isdigit() for f in fields):
        raise ParseError(f"expected header 'n m', got {header!r}", lineno)
    n, m = int(fields[0]), int(fields[1])
    directed: dict[Edge, int] = {}
    undirected: dict[Edge, int] = {}
    count = 0
    for lineno, line in lines:
        count += 1
        if count > m:
            raise ParseError(f"more than the declared {m} edge lines", lineno)
        fields = line.split()
        if len(fields) != 3 or not fields[0].isdigit() or not fields[1].isdigit() or fields[2] not in ("d", "u"):
            raise ParseError(f"expected 'u v d' or 'u v u', got {line!r}", lineno)
        u, v, t = int(fields[0]), int(fields[1]), fields[2]
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex id out of range 1..{n}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in undirected or (u, v) in directed or (v, u) in directed:
            if t == "d" and (u, v) in directed or t == "u" and key in undirected:
                raise ParseError(f"duplicate edge {u} {v}", lineno)
            raise ParseError(f"conflicting edge between {u} and {v}", lineno)
        if t == "d":
            directed[(u, v)] = lineno
        else:
            undirected[key] = lineno
    if count < m:
        raise ParseError(f"declared {m} edges but found {count}")
    return PartiallyDirectedGraph(n, directed, undirected)


def format_graph(G: PartiallyDirectedGraph) -> str:
    rows = G.edges()
    lines = [f"{G.n} {len(rows)}"] + [f"{u} {v} {t}" for u, v, t in rows]
    return "\n".join(lines) + "\n"


def undirected_components(G: PartiallyDirectedGraph, include_singletons: bool = True) -> list[frozenset[int]]:
    """Connected components of the undirected part, ordered by smallest vertex."""
    seen = [False] * (G.n + 1)
    comps = []
    for s in G.vertices:
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in G.undirected_neighbors(x):
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        if include_singletons or len(comp) > 1:
            comps.append(frozenset(comp))
    return comps


def v_structures(G: PartiallyDirectedGraph) -> set[VStructure]:
    out = set()
    for b in G.vertices:
        pa = sorted(G.parents(b))
        for i, a in enumerate(pa):
            for c in pa[i + 1:]:
                if not G.is_adjacent(a, c):
                    out.add(VStructure(a, b, c))
    return out


def is_consistent_extension(D: PartiallyDirectedGraph, G: PartiallyDirectedGraph) -> bool:
    """True iff ``D`` is an acyclic, v-structure-preserving orientation of ``G``."""
    if D.n != G.n:
        raise PreconditionError(f"vertex counts differ: {D.n} vs {G.n}")
    if D.undirected:
        return False
    if D.skeleton() != G.skeleton():
        return False
    if not G.directed <= D.directed:
        return False
    if topological_order(D) is None:
        return False
    return v_structures(D) == v_structures(G)

import itertools
import random
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliquepick import (
    LEX_BFS,
    PartiallyDirectedGraph,
    PreconditionError,
    brute_force_amo_count,
    components_after_clique,
    enumerate_intervention_results,
    intervention_update,
    meek_closure,
    orient_at_vertex,
    undirected_components,
)

from _support import example3, random_connected_chordal, rhombus


def brute_clique_components(G, K):
    """Undirected components left by the union of all orientations whose ordering starts with K."""
    K = frozenset(K)
    _, amos = brute_force_amo_count(G)
    starting = []
    for amo in amos:
        # K first means no edge enters K from outside; parents of K members stay in K
        if all(u in K for u, v in amo if v in K):
            starting.append(amo)
    union = set().union(*starting)
    und = [(u, v) for u, v in union if (v, u) in union and u < v and u not in K and v not in K]
    H = PartiallyDirectedGraph.from_undirected(G.n, und)
    return {c for c in undirected_components(H) if c <= set(G.vertices) - K}


def all_cliques(G):
    vs = sorted(G.vertices)
    for r in range(1, len(vs) + 1):
        for c in itertools.combinations(vs, r):
            if all(G.has_undirected(a, b) for a, b in itertools.combinations(c, 2)):
                yield frozenset(c)


class TestComponentsAfterClique:
    def test_example3(self):
        cc = components_after_clique(example3(), {1, 2, 3})
        assert cc.components == (frozenset({4, 5, 6}),)
        assert cc.parent_sets == (frozenset({2, 3}),)

    def test_whole_clique(self):
        K3 = PartiallyDirectedGraph.from_undirected(3, [(1, 2), (1, 3), (2, 3)])
        assert components_after_clique(K3, {1, 2, 3}).components == ()

    def test_branching_graph(self):
        # clique {1,2,3,4}; 5-6 both attached to {3,4}; 7 attached to {4,5,6}
        edges = list(itertools.combinations([1, 2, 3, 4], 2))
        edges += [(3, 5), (4, 5), (3, 6), (4, 6), (5, 6), (4, 7), (5, 7), (6, 7)]
        G = PartiallyDirectedGraph.from_undirected(7, edges)
        cc = components_after_clique(G, {1, 2, 3, 4})
        assert set(cc.components) == {frozenset({5, 6}), frozenset({7})}
        assert set(cc.components) == brute_clique_components(G, {1, 2, 3, 4})

    def test_not_a_clique(self):
        with pytest.raises(PreconditionError):
            components_after_clique(rhombus(), {1, 4})

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 2**32), st.integers(1, 7))
    def test_matches_brute_force_union(self, seed, n):
        G = random_connected_chordal(random.Random(seed), n)
        for K in all_cliques(G):
            assert set(components_after_clique(G, K).components) == brute_clique_components(G, K)

    @settings(max_examples=150, deadline=None)
    @given(st.integers(0, 2**32), st.integers(1, 12))
    def test_structure(self, seed, n):
        G = random_connected_chordal(random.Random(seed), n)
        adj = G.undirected_adjacency()
        for K in all_cliques(G):
            cc = components_after_clique(G, K)
            covered = [x for c in cc.components for x in c]
            assert sorted(covered) == sorted(set(G.vertices) - K)
            for comp, P in zip(cc.components, cc.parent_sets):
                # every member sees the same earlier vertices
                for x in comp:
                    earlier = {y for y in adj[x] if y in K or (y not in comp and cc.visit_index[y] < cc.visit_index[x])}
                    assert earlier == P
            # the generic label search gives the same components
            assert set(components_after_clique(G, K, LEX_BFS).components) == set(cc.components)

    def test_directed_edges_follow_emission_order(self):
        G = example3()
        cc = components_after_clique(G, {2, 3, 4, 5})
        edges = set(cc.directed_edges(G.undirected_adjacency(), {2, 3, 4, 5}))
        assert (2, 1) in edges and (5, 6) in edges and (1, 2) not in edges


class TestMeek:
    def test_rule1(self):
        G = PartiallyDirectedGraph(3, [(1, 2)], [(2, 3)])
        assert meek_closure(G).has_directed(2, 3)

    def test_rule2(self):
        G = PartiallyDirectedGraph(3, [(1, 2), (2, 3)], [(1, 3)])
        assert meek_closure(G).has_directed(1, 3)

    def test_rule3(self):
        G = PartiallyDirectedGraph(4, [(2, 4), (3, 4)], [(1, 2), (1, 3), (1, 4)])
        assert meek_closure(G).has_directed(1, 4)

    def test_rule4(self):
        # 3 -> 2 -> 4 with 1-3, 1 adjacent to 2, 3 and 4 nonadjacent
        G = PartiallyDirectedGraph(4, [(3, 2), (2, 4)], [(1, 3), (1, 2), (1, 4)])
        assert meek_closure(G).has_directed(1, 4)

    def test_rhombus_with_parents_of_1(self):
        G = meek_closure(rhombus().orient([(2, 1), (3, 1)]))
        assert G == PartiallyDirectedGraph(4, [(2, 1), (3, 1)], [(2, 3), (2, 4), (3, 4)])

    @settings(max_examples=150, deadline=None)
    @given(st.integers(0, 2**32), st.integers(2, 9))
    def test_idempotent_and_monotone(self, seed, n):
        rng = random.Random(seed)
        G = random_connected_chordal(rng, n)
        order = list(G.vertices)
        rng.shuffle(order)
        pos = {v: i for i, v in enumerate(order)}
        part = [(u, v) if pos[u] < pos[v] else (v, u) for u, v in sorted(G.undirected) if rng.random() < 0.3]
        H = G.orient(part)
        M = meek_closure(H)
        assert meek_closure(M) == M
        assert H.directed <= M.directed


class TestInterventionUpdate:
    @pytest.mark.parametrize(
        "K, directed, undirected",
        [
            ((), [(1, 2), (1, 3), (2, 4), (3, 4)], [(2, 3)]),
            ((2,), [(2, 1), (1, 3), (2, 3), (2, 4), (3, 4)], []),
            ((3,), [(3, 1), (1, 2), (3, 2), (2, 4), (3, 4)], []),
            ((2, 3), [(2, 1), (3, 1)], [(2, 3), (2, 4), (3, 4)]),
        ],
    )
    def test_rhombus_outcomes(self, K, directed, undirected):
        expected = PartiallyDirectedGraph(4, directed, undirected)
        assert intervention_update(rhombus(), 1, K) == expected

    def test_preconditions(self):
        G = rhombus()
        with pytest.raises(PreconditionError):
            intervention_update(G, 1, {4})
        with pytest.raises(PreconditionError):
            intervention_update(G.orient([(1, 2), (1, 3)]), 1, ())
        path = PartiallyDirectedGraph.from_undirected(3, [(1, 2), (2, 3)])
        with pytest.raises(PreconditionError):
            intervention_update(path, 2, {1, 3})

    def test_other_components_untouched(self):
        G = PartiallyDirectedGraph(5, [(3, 4)], [(1, 2), (4, 5)])
        H = intervention_update(G, 1, ())
        assert H == PartiallyDirectedGraph(5, [(3, 4), (1, 2)], [(4, 5)])

    def test_non_chordal_falls_back_with_warning(self):
        C4 = PartiallyDirectedGraph.from_undirected(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
        with pytest.warns(RuntimeWarning):
            H = intervention_update(C4, 1, ())
        assert H == meek_closure(orient_at_vertex(C4, 1, ()))

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32), st.integers(2, 10))
    def test_matches_meek_oracle(self, seed, n):
        G = random_connected_chordal(random.Random(seed), n)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            for v in G.vertices:
                for K in enumerate_intervention_results(G, v):
                    assert intervention_update(G, v, K) == meek_closure(orient_at_vertex(G, v, K))

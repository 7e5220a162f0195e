import math
import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliquepick import (
    Dag,
    PartiallyDirectedGraph,
    PreconditionError,
    ResourceError,
    RngStream,
    brute_force_extensions,
    count_mec,
    enumerate_intervention_results,
    evaluate_vertex,
    ida_multiplicities,
    is_consistent_extension,
    select_target,
    simulate_active_learning,
    strategy_report,
)

from _support import random_cpdag, rhombus


class TestEnumerate:
    def test_rhombus_vertex_1(self):
        assert enumerate_intervention_results(rhombus(), 1) == [
            frozenset(),
            frozenset({2}),
            frozenset({3}),
            frozenset({2, 3}),
        ]

    def test_rhombus_vertex_2(self):
        got = enumerate_intervention_results(rhombus(), 2)
        assert got == [frozenset(s) for s in ([], [1], [3], [4], [1, 3], [3, 4])]

    def test_no_undirected_neighbours(self):
        assert enumerate_intervention_results(PartiallyDirectedGraph(2, [(1, 2)]), 1) == [frozenset()]

    def test_cap(self):
        with pytest.raises(ResourceError):
            enumerate_intervention_results(rhombus(), 2, max_outcomes=5)


class TestEvaluate:
    @pytest.mark.parametrize("v", [1, 4])
    def test_degree_two_vertices(self, v):
        outs = evaluate_vertex(rhombus(), v)
        assert sorted(o.size for o in outs) == [1, 1, 2, 6]
        assert sorted(o.undirected_edge_count for o in outs) == [0, 0, 1, 3]

    @pytest.mark.parametrize("v", [2, 3])
    def test_degree_three_vertices(self, v):
        outs = evaluate_vertex(rhombus(), v)
        assert sorted(o.size for o in outs) == [1, 1, 1, 2, 2, 3]
        assert sorted(o.undirected_edge_count for o in outs) == [0, 0, 0, 1, 1, 2]

    def test_parents_23_outcome_has_six_members(self):
        outs = {o.K: o for o in evaluate_vertex(rhombus(), 1)}
        assert outs[frozenset({2, 3})].size == 6

    def test_fully_directed(self):
        assert evaluate_vertex(PartiallyDirectedGraph(2, [(1, 2)]), 1) == []


class TestSelect:
    def test_report_values(self):
        report = strategy_report(rhombus(), "entropy")
        by_v = {c.v: c for c in report.candidates}
        assert by_v[1].entropy == pytest.approx(1.57, abs=0.005)
        assert by_v[2].entropy == pytest.approx(2.45, abs=0.005)
        assert by_v[1].entropy == by_v[4].entropy and by_v[2].entropy == by_v[3].entropy
        assert [by_v[v].max_size for v in (1, 2, 3, 4)] == [6, 3, 3, 6]
        assert [by_v[v].max_undirected for v in (1, 2, 3, 4)] == [3, 2, 2, 3]

    @pytest.mark.parametrize("strategy", ["minmax", "entropy", "optsingle"])
    def test_ties_go_to_smallest_id(self, strategy):
        assert select_target(rhombus(), strategy) == 2

    def test_random_is_seeded(self):
        picks = [select_target(rhombus(), "random", RngStream(s)) for s in range(20)]
        assert picks == [select_target(rhombus(), "random", RngStream(s)) for s in range(20)]
        assert set(picks) <= {1, 2, 3, 4}

    def test_errors(self):
        with pytest.raises(PreconditionError):
            select_target(PartiallyDirectedGraph(2, [(1, 2)]), "minmax")
        with pytest.raises(PreconditionError):
            select_target(rhombus(), "best")

    def test_threads_give_same_report(self):
        assert strategy_report(rhombus(), "minmax", threads=3) == strategy_report(rhombus(), "minmax")


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32), st.integers(2, 7))
def test_outcomes_partition_the_class(seed, n):
    C, _ = random_cpdag(random.Random(seed), n)
    total = count_mec(C)
    for v in C.vertices:
        outs = evaluate_vertex(C, v)
        if outs:
            sizes = [o.size for o in outs]
            assert sum(sizes) == total
            assert min(sizes) >= 1
    if C.undirected:
        for c in strategy_report(C, "entropy").candidates:
            assert 0 <= c.entropy <= math.log2(len(c.sizes)) + 1e-12


class TestSimulate:
    def test_fully_directed_needs_nothing(self):
        D = Dag(3, [(1, 2), (2, 3)])
        assert simulate_active_learning(D, D, "minmax")[0] == 0

    @pytest.mark.parametrize("strategy", ["minmax", "entropy", "optsingle", "random"])
    def test_single_edge(self, strategy):
        C = PartiallyDirectedGraph.from_undirected(2, [(1, 2)])
        n, trace = simulate_active_learning(C, Dag(2, [(1, 2)]), strategy, RngStream(0))
        assert n == 1 and trace[0].essential == Dag(2, [(1, 2)])

    def test_rhombus_minmax_within_two(self):
        # exhaustive over all ten members
        for D in brute_force_extensions(rhombus())[1]:
            assert simulate_active_learning(rhombus(), D, "minmax")[0] <= 2

    def test_trace_format(self):
        D = Dag(4, [(2, 1), (3, 1), (2, 3), (2, 4), (3, 4)])
        _, trace = simulate_active_learning(rhombus(), D, "minmax")
        assert [s.format(i + 1) for i, s in enumerate(trace)] == ["1 2 - 3", "2 3 - 1"]

    def test_rejects_non_member(self):
        with pytest.raises(PreconditionError):
            simulate_active_learning(rhombus(), Dag(4, [(1, 2), (4, 2), (1, 3), (2, 3), (4, 3)]), "minmax")

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32), st.integers(2, 8), st.sampled_from(["minmax", "entropy", "optsingle", "random"]))
    def test_soundness(self, seed, n, strategy):
        C, D = random_cpdag(random.Random(seed), n)
        a = simulate_active_learning(C, D, strategy, RngStream(seed))
        b = simulate_active_learning(C, D, strategy, RngStream(seed))
        assert a == b
        prev = count_mec(C)
        for step in a[1]:
            assert is_consistent_extension(D, step.essential)
            assert step.size < prev
            prev = step.size
        assert prev == 1


class TestIda:
    def test_rhombus_vertex_1(self):
        got = dict(ida_multiplicities(rhombus(), 1))
        assert got[frozenset({2, 3})] == 6
        assert sorted(got.values()) == [1, 1, 2, 6]
        assert sum(got.values()) == 10

    def test_oriented_vertex(self):
        C = PartiallyDirectedGraph(4, [(1, 3), (2, 3)], [(1, 4)])
        assert ida_multiplicities(C, 3) == [(frozenset({1, 2}), 2)]

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32), st.integers(1, 6))
    def test_matches_grouped_extensions(self, seed, n):
        C, _ = random_cpdag(random.Random(seed), n)
        i = random.Random(seed).randint(1, n)
        expected = Counter(frozenset(D.parents(i)) for D in brute_force_extensions(C)[1])
        assert Counter(dict(ida_multiplicities(C, i))) == expected

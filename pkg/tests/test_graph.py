import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliquepick import (
    Dag,
    ParseError,
    PartiallyDirectedGraph,
    PreconditionError,
    VStructure,
    format_graph,
    is_consistent_extension,
    parse_graph,
    topological_order,
    undirected_components,
    v_structures,
)

from _support import two_component_cpdag


class TestParse:
    def test_round_trip(self):
        G = two_component_cpdag()
        assert parse_graph(format_graph(G)) == G

    def test_comments_and_blank_lines_from_bytes(self):
        G = parse_graph(b"# a comment\n3 2\n\n1 2 d\n# another\n2 3 u\n")
        assert G.directed == {(1, 2)} and G.undirected == {(2, 3)}

    @pytest.mark.parametrize(
        "text, line",
        [
            ("", None),
            ("3\n", 1),
            ("3 1\n1 2 x\n", 2),
            ("3 1\n1 4 u\n", 2),
            ("3 1\n2 2 u\n", 2),
            ("3 2\n1 2 u\n2 1 u\n", 3),
            ("3 2\n1 2 d\n2 1 d\n", 3),
            ("3 2\n1 2 d\n1 2 u\n", 3),
            ("3 1\n1 2 u\n2 3 u\n", 3),
            ("3 2\n1 2 u\n", None),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(ParseError) as info:
            parse_graph(text)
        assert info.value.line == line

    def test_duplicate_vs_conflict_messages(self):
        with pytest.raises(ParseError, match="duplicate"):
            parse_graph("2 2\n1 2 d\n1 2 d\n")
        with pytest.raises(ParseError, match="conflicting"):
            parse_graph("2 2\n1 2 d\n2 1 d\n")

    def test_format_is_sorted_and_newline_terminated(self):
        G = PartiallyDirectedGraph(3, [(3, 1)], [(2, 3)])
        assert format_graph(G) == "3 2\n3 1 d\n2 3 u\n"

    def test_comments_only_on_whole_lines(self):
        with pytest.raises(ParseError):
            parse_graph("2 1\n1 2 d # trailing\n")

    def test_rejects_non_utf8(self):
        with pytest.raises(ParseError):
            parse_graph(b"\xff\xfe")


@st.composite
def pdags(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    directed, undirected = [], []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            kind = draw(st.sampled_from("nnduf"))
            if kind == "d":
                directed.append((u, v))
            elif kind == "f":
                directed.append((v, u))
            elif kind == "u":
                undirected.append((u, v))
    return PartiallyDirectedGraph(n, directed, undirected)


@settings(max_examples=200, deadline=None)
@given(pdags())
def test_format_parse_round_trip(G):
    assert parse_graph(format_graph(G)) == G


class TestGraph:
    def test_constructor_validation(self):
        with pytest.raises(PreconditionError):
            PartiallyDirectedGraph(2, [(1, 3)])
        with pytest.raises(PreconditionError):
            PartiallyDirectedGraph(2, [(1, 1)])
        with pytest.raises(PreconditionError):
            PartiallyDirectedGraph(2, [(1, 2)], [(1, 2)])
        with pytest.raises(PreconditionError):
            Dag(3, [(1, 2), (2, 3), (3, 1)])

    def test_accessors(self):
        G = two_component_cpdag()
        assert G.parents(5) == {2, 4, 6}
        assert G.undirected_neighbors(1) == {2, 4}
        assert G.neighbors(2) == {1, 5}
        assert G.is_adjacent(5, 2) and not G.is_adjacent(1, 3)
        assert G.skeleton() == {(1, 2), (1, 4), (3, 6), (2, 5), (4, 5), (5, 6)}

    def test_orient_returns_new_graph(self):
        G = two_component_cpdag()
        H = G.orient([(2, 1)])
        assert H.has_directed(2, 1) and G.has_undirected(1, 2)
        with pytest.raises(PreconditionError):
            G.orient([(2, 5)])

    def test_components_and_vstructures(self):
        G = two_component_cpdag()
        assert undirected_components(G) == [frozenset({1, 2, 4}), frozenset({3, 6}), frozenset({5})]
        assert v_structures(G) == {VStructure(2, 5, 4), VStructure(2, 5, 6), VStructure(4, 5, 6)}

    def test_topological_order(self):
        assert topological_order(Dag(3, [(3, 1), (2, 1)])) == [2, 3, 1]
        assert topological_order(PartiallyDirectedGraph(2, [(2, 1)], [])) == [2, 1]

    def test_from_order(self):
        D = Dag.from_order([(1, 2), (2, 3)], [3, 2, 1], 3)
        assert D.directed == {(3, 2), (2, 1)}


class TestConsistentExtension:
    def test_accepts_member_and_rejects_new_vstructure(self):
        C = PartiallyDirectedGraph(3, undirected=[(1, 2), (2, 3)])
        assert is_consistent_extension(Dag(3, [(1, 2), (2, 3)]), C)
        assert not is_consistent_extension(Dag(3, [(1, 2), (3, 2)]), C)

    def test_rejects_reversed_directed_edge_and_wrong_skeleton(self):
        C = PartiallyDirectedGraph(3, [(1, 2)], [(2, 3)])
        assert not is_consistent_extension(Dag(3, [(2, 1), (2, 3)]), C)
        assert not is_consistent_extension(Dag(3, [(1, 2)]), C)

    def test_size_mismatch_raises(self):
        with pytest.raises(PreconditionError):
            is_consistent_extension(Dag(2), Dag(3))

import pytest
from hypothesis import given

from chaingroup import GraphClass, HybridGraph, classify, components, immoralities, neighborhoods, parse_graph, serialize_graph, skeleton
from chaingroup.errors import (
    ConflictingLink,
    DuplicateLink,
    LoopError,
    ParseError,
    TooManyVertices,
    VertexOutOfRange,
)
from chaingroup.graph import component_order, format_set, is_dag, set_key

from graphs import ALL_ESSENTIAL, CHAIN, CHAIN_ESSENTIAL, COLLIDER, E, SPRINKLE, SPRINKLE_ESSENTIAL
from strategies import chain_graphs, hybrid_graphs, nf_chain_graphs


class TestParse:
    def test_directed_chain(self):
        h = parse_graph("vertices: 3\n1 -> 2\n2 -> 3\n")
        assert h == CHAIN
        assert h.m == 3

    def test_single_undirected_edge(self):
        assert parse_graph("vertices: 2\n1 -- 2\n") == E(2, undirected=[(1, 2)])

    def test_conflicting_link(self):
        with pytest.raises(ConflictingLink):
            parse_graph("vertices: 2\n1 -> 2\n1 -- 2\n")

    def test_opposite_arrows_conflict(self):
        with pytest.raises(ConflictingLink):
            parse_graph("vertices: 2\n1 -> 2\n2 -> 1\n")

    def test_duplicate_link(self):
        with pytest.raises(DuplicateLink):
            parse_graph("vertices: 2\n1 -- 2\n2 -- 1\n")

    def test_comments_blank_lines_and_whitespace(self):
        text = "# header\n\nvertices:   3\n  1   ->  2 \n# note\n\n3 -- 2\n"
        assert parse_graph(text) == E(3, [(1, 2)], [(2, 3)])

    def test_syntax_error_reports_line(self):
        with pytest.raises(ParseError) as exc:
            parse_graph("vertices: 3\n1 -> 2\n2 => 3\n")
        assert exc.value.line == 3
        assert "line 3" in str(exc.value)

    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse_graph("1 -> 2\n")

    def test_vertex_out_of_range(self):
        with pytest.raises(VertexOutOfRange):
            parse_graph("vertices: 2\n1 -> 3\n")

    def test_loop(self):
        with pytest.raises(LoopError):
            parse_graph("vertices: 2\n2 -- 2\n")

    def test_too_many_vertices(self):
        with pytest.raises(TooManyVertices):
            parse_graph("vertices: 65\n")

    def test_sixty_four_vertices_accepted(self):
        assert parse_graph("vertices: 64\n1 -> 64\n").m == 64


def test_serialize_order():
    h = E(4, [(3, 1), (1, 2)], [(4, 2), (3, 4)])
    assert serialize_graph(h) == "vertices: 4\n1 -> 2\n3 -> 1\n2 -- 4\n3 -- 4\n"


@given(hybrid_graphs())
def test_round_trip(h):
    assert parse_graph(serialize_graph(h)) == h


class TestClassify:
    @pytest.mark.parametrize(
        "h, expected",
        [
            (CHAIN, GraphClass.DAG),
            (E(3, [(1, 2)], [(2, 3)]), GraphClass.CHAIN_GRAPH_WITH_FLAGS),
            (E(3, [(1, 2)], [(2, 3), (1, 3)]), GraphClass.NOT_CHAIN_GRAPH),
            (CHAIN_ESSENTIAL, GraphClass.UNDIRECTED),
            (SPRINKLE_ESSENTIAL, GraphClass.NF_CHAIN_GRAPH),
            (E(3, [(1, 2), (2, 3), (3, 1)]), GraphClass.NOT_CHAIN_GRAPH),
        ],
    )
    def test_examples(self, h, expected):
        assert classify(h) == expected

    def test_nf_refinements(self):
        assert GraphClass.DAG.is_nf_chain_graph
        assert GraphClass.UNDIRECTED.is_nf_chain_graph
        assert not GraphClass.CHAIN_GRAPH_WITH_FLAGS.is_nf_chain_graph

    def test_edgeless(self):
        h = HybridGraph(3)
        assert classify(h) == GraphClass.UNDIRECTED
        assert is_dag(h)

    @given(hybrid_graphs())
    def test_skeleton_is_undirected(self, h):
        assert classify(skeleton(h)) == GraphClass.UNDIRECTED


class TestComponents:
    def test_path(self):
        assert components(E(3, undirected=[(1, 2), (2, 3)])).blocks == (frozenset({1, 2, 3}),)

    def test_collider(self):
        assert components(E(3, [(1, 2), (3, 2)])).blocks == tuple(frozenset({v}) for v in (1, 2, 3))

    def test_sprinkle_essential(self):
        part = components(SPRINKLE_ESSENTIAL)
        assert set(part.blocks) == {frozenset({1, 2, 3}), frozenset({4}), frozenset({5})}
        assert part.component_index[2] == part.component_index[3]

    @given(chain_graphs())
    def test_no_arrow_inside_block(self, h):
        part = components(h)
        for i, j in h.directed:
            assert part.component_index[i] != part.component_index[j]

    @given(chain_graphs())
    def test_component_order_is_topological(self, h):
        part = components(h)
        order = component_order(h, part)
        pos = {b: k for k, b in enumerate(order)}
        for i, j in h.directed:
            assert pos[part.component_index[i]] < pos[part.component_index[j]]

    @given(nf_chain_graphs())
    def test_parents_constant_on_components(self, h):
        for block in components(h).blocks:
            assert len({h.parents(v) for v in block}) == 1


class TestNeighborhoods:
    def test_collider_centre(self):
        nb = neighborhoods(COLLIDER, 2)
        assert nb.parents == {1, 3}
        assert nb.children == set()
        assert nb.neighbors == set()
        assert nb.N == {2}

    def test_chain_essential(self):
        assert neighborhoods(CHAIN_ESSENTIAL, 2).N == {1, 2, 3}

    def test_sprinkle(self):
        nb = neighborhoods(SPRINKLE, 4)
        assert nb.parents == {2, 3}
        assert nb.children == {5}
        assert nb.N == {4, 5}


class TestSkeleton:
    def test_chain(self):
        assert skeleton(CHAIN) == CHAIN_ESSENTIAL

    def test_collider(self):
        assert skeleton(COLLIDER) == CHAIN_ESSENTIAL

    def test_undirected_fixed(self):
        assert skeleton(CHAIN_ESSENTIAL) == CHAIN_ESSENTIAL


class TestImmoralities:
    def test_collider(self):
        assert immoralities(COLLIDER) == {(1, 2, 3)}

    def test_chain(self):
        assert immoralities(CHAIN) == set()

    def test_all_essential(self):
        assert immoralities(ALL_ESSENTIAL) == {(1, 2, 4)}

    def test_shielded_collider(self):
        assert immoralities(E(3, [(1, 2), (3, 2), (1, 3)])) == set()


def test_set_helpers():
    assert set_key({1, 3}) == 0b101
    assert format_set({3, 1}) == "{1,3}"
    assert format_set(()) == "{}"


def test_graph_str_and_relabel():
    assert str(COLLIDER) == "vertices: 3; 1 -> 2; 3 -> 2"
    assert COLLIDER.relabel(lambda v: 4 - v) == COLLIDER

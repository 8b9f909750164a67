import pytest
from hypothesis import given, settings

from bcolor.graph import (
    INF,
    DuplicateEdgeError,
    Graph,
    GraphFormatError,
    MalformedHeaderError,
    SelfLoopError,
    VertexRangeError,
    bfs_distances,
    complement,
    connected_components,
    cycle_rank,
    degeneracy_order,
    feedback_edge_set,
    format_graph,
    induced_subgraph,
    is_tree,
    m_degree,
    parse_graph,
    remove_edge,
    remove_vertices,
    two_core,
)
from helpers import graphs, trees


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


class TestParsing:
    def test_basic(self):
        g = parse_graph("c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
        assert (g.n, g.m) == (3, 3)
        assert g.has_edge(0, 1) and g.has_edge(1, 2) and g.has_edge(0, 2)

    def test_comments_and_blanks(self):
        g = parse_graph("\nc hi\n\np edge 2 1\nc mid\ne 1 2\n")
        assert g.m == 1

    def test_reversed_edge_canonicalised(self):
        g = parse_graph("p edge 3 1\ne 3 1\n")
        assert g.has_edge(0, 2)

    def test_missing_header(self):
        with pytest.raises(MalformedHeaderError):
            parse_graph("e 1 2\n")

    def test_bad_header(self):
        with pytest.raises(MalformedHeaderError):
            parse_graph("p edge x 1\n")
        with pytest.raises(MalformedHeaderError):
            parse_graph("p edges 2 1\ne 1 2\n")

    def test_vertex_out_of_range(self):
        with pytest.raises(VertexRangeError):
            parse_graph("p edge 2 1\ne 1 3\n")
        with pytest.raises(VertexRangeError):
            parse_graph("p edge 2 1\ne 0 1\n")

    def test_self_loop(self):
        with pytest.raises(SelfLoopError):
            parse_graph("p edge 2 1\ne 2 2\n")

    def test_duplicate_edge_either_orientation(self):
        with pytest.raises(DuplicateEdgeError):
            parse_graph("p edge 2 2\ne 1 2\ne 1 2\n")
        with pytest.raises(DuplicateEdgeError):
            parse_graph("p edge 2 2\ne 1 2\ne 2 1\n")

    def test_edge_count_mismatch(self):
        with pytest.raises(GraphFormatError):
            parse_graph("p edge 3 2\ne 1 2\n")

    def test_junk_line(self):
        with pytest.raises(GraphFormatError):
            parse_graph("p edge 2 1\nq 1 2\n")

    def test_empty_graph(self):
        g = parse_graph("p edge 0 0\n")
        assert g.n == 0 and g.m == 0

    @settings(max_examples=100)
    @given(graphs(max_n=7))
    def test_round_trip(self, g):
        assert parse_graph(format_graph(g)) == g


class TestGraphType:
    def test_constructor_rejects_bad_edges(self):
        with pytest.raises(ValueError):
            Graph(2, [(0, 2)])
        with pytest.raises(ValueError):
            Graph(2, [(1, 1)])
        with pytest.raises(ValueError):
            Graph(2, [(0, 1), (1, 0)])

    def test_neighbors_sorted(self):
        g = Graph(4, [(2, 0), (0, 3), (0, 1)])
        assert g.neighbors(0) == (1, 2, 3)
        assert g.degree(0) == 3
        assert g.closed(1) == {0, 1}


class TestTraversal:
    def test_bfs_path(self):
        assert bfs_distances(path(4), [0]) == [0, 1, 2, 3]

    def test_bfs_unreachable_is_inf(self):
        g = Graph(3, [(0, 1)])
        d = bfs_distances(g, [0])
        assert d[2] is INF

    def test_bfs_multi_source_and_allowed(self):
        g = path(5)
        assert bfs_distances(g, [0, 4]) == [0, 1, 2, 1, 0]
        d = bfs_distances(g, [0], allowed={0, 1, 2})
        assert d[3] is INF

    def test_components_deterministic(self):
        g = Graph(5, [(3, 4), (0, 1)])
        assert connected_components(g) == [[0, 1], [2], [3, 4]]
        assert connected_components(g, allowed=[4, 3, 1]) == [[1], [3, 4]]


class TestStructure:
    def test_induced_subgraph(self):
        g = cycle(5)
        sub, back = induced_subgraph(g, [1, 2, 4])
        assert back == [1, 2, 4]
        assert sub.edges() == [(0, 1)]

    def test_complement_small(self):
        g = complement(path(3))
        assert g.edges() == [(0, 2)]

    @settings(max_examples=60)
    @given(graphs(max_n=7))
    def test_complement_involution(self, g):
        assert complement(complement(g)) == g

    def test_remove_helpers(self):
        g = cycle(4)
        assert remove_edge(g, 0, 1).m == 3
        assert remove_vertices(g, [0]).n == 3

    def test_two_core_tree_is_empty(self):
        core, rest = two_core(path(6))
        assert core == frozenset() and len(rest) == 6

    def test_two_core_cycle_with_tail(self):
        g = Graph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (3, 5)])
        core, rest = two_core(g)
        assert core == {0, 1, 2} and rest == {3, 4, 5}

    def test_feedback_edges_tree(self):
        assert feedback_edge_set(path(5)) == []
        assert is_tree(path(5))

    def test_feedback_edges_cycle(self):
        assert len(feedback_edge_set(cycle(6))) == 1

    @settings(max_examples=80)
    @given(graphs(max_n=8))
    def test_feedback_count_is_cycle_rank(self, g):
        fes = feedback_edge_set(g)
        assert len(fes) == cycle_rank(g)
        assert len(set(fes)) == len(fes)
        kept = [e for e in g.edges() if e not in set(fes)]
        assert cycle_rank(Graph(g.n, kept)) == 0

    @settings(max_examples=60)
    @given(graphs(max_n=8))
    def test_feedback_edges_within_allowed(self, g):
        keep = [v for v in range(g.n) if v % 2 == 0]
        fes = feedback_edge_set(g, allowed=keep)
        sub, back = induced_subgraph(g, keep)
        assert len(fes) == cycle_rank(sub)


class TestDegreeBounds:
    def test_m_degree_known(self):
        assert m_degree(Graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])) == 4
        assert m_degree(Graph(4, [(0, 1), (0, 2), (0, 3)])) == 2
        assert m_degree(cycle(5)) == 3
        assert m_degree(Graph(1, [])) == 1
        assert m_degree(Graph(0, [])) == 0

    @settings(max_examples=60)
    @given(trees(max_n=10))
    def test_degeneracy_order_trees(self, t):
        order = degeneracy_order(t)
        pos = {v: i for i, v in enumerate(order)}
        for v in range(t.n):
            earlier = sum(1 for w in t.neighbors(v) if pos[w] < pos[v])
            assert earlier <= 1

import pytest
from hypothesis import given, settings, strategies as st

from bcolor.coloring import verify_b_coloring
from bcolor.errors import InstanceTooLarge
from bcolor.graph import Graph, m_degree
from bcolor.reference import (
    NotATreeError,
    b_chromatic_brute,
    b_chromatic_tree,
    brute_force_b_coloring,
    heuristic_descent,
    pivoted_tree_report,
)
from helpers import exists_b_coloring_unpruned, graphs, greedy_proper_coloring, trees


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


class TestBruteKnownValues:
    def test_k44_minus_matching_spectrum_has_gap(self, g_im):
        # b-colourable with 2 and 4 colours but not 3
        for k in (2, 4):
            w = brute_force_b_coloring(g_im, k)
            assert w is not None
            assert verify_b_coloring(g_im, w, k).is_b_coloring
        assert brute_force_b_coloring(g_im, 3) is None

    def test_complete_graph(self):
        assert brute_force_b_coloring(complete(4), 4) is not None
        assert b_chromatic_brute(complete(4)) == 4

    def test_single_vertex(self):
        assert brute_force_b_coloring(Graph(1, []), 1) == {0: 1}

    def test_k_above_degree_bound(self):
        assert brute_force_b_coloring(path(3), 3) is None

    def test_cap_enforced(self):
        with pytest.raises(InstanceTooLarge):
            brute_force_b_coloring(path(17), 2)
        assert brute_force_b_coloring(path(17), 2, cap=17) is not None

    def test_bad_k(self):
        with pytest.raises(ValueError):
            brute_force_b_coloring(path(2), 0)


class TestBruteAgainstOracle:
    @settings(max_examples=120, deadline=None)
    @given(graphs(max_n=6, min_n=1), st.integers(1, 6))
    def test_existence_agrees_unpruned(self, g, k):
        got = brute_force_b_coloring(g, k)
        assert (got is not None) == exists_b_coloring_unpruned(g, k)
        if got is not None:
            assert verify_b_coloring(g, got, k).is_b_coloring

    @settings(max_examples=40, deadline=None)
    @given(graphs(max_n=7, min_n=1))
    def test_b_chromatic_is_maximal(self, g):
        k = b_chromatic_brute(g)
        assert 1 <= k <= m_degree(g)
        w = brute_force_b_coloring(g, k)
        assert verify_b_coloring(g, w, k).is_b_coloring
        for bigger in range(k + 1, m_degree(g) + 1):
            assert brute_force_b_coloring(g, bigger) is None


class TestHeuristic:
    def test_three_path_collapses_to_two(self):
        # colour 1 is dropped first (ascending scan), then renumbering
        t, c = heuristic_descent(path(3), {0: 1, 1: 2, 2: 3})
        assert t == 2 and c == {0: 2, 1: 1, 2: 2}
        assert verify_b_coloring(path(3), c, t).is_b_coloring

    def test_complete_graph_fixed(self):
        k4 = complete(4)
        t, c = heuristic_descent(k4, {v: v + 1 for v in range(4)})
        assert t == 4 and c == {v: v + 1 for v in range(4)}

    def test_rejects_improper_start(self):
        with pytest.raises(ValueError):
            heuristic_descent(path(2), {0: 1, 1: 1})
        with pytest.raises(ValueError):
            heuristic_descent(path(2), {0: 1})

    def test_b_coloring_is_a_fixpoint(self, g_im):
        w = brute_force_b_coloring(g_im, 4)
        t, c = heuristic_descent(g_im, w)
        assert t == 4 and c == w

    @settings(max_examples=100, deadline=None)
    @given(graphs(max_n=8, min_n=1))
    def test_output_verifies_at_own_count(self, g):
        start = greedy_proper_coloring(g)
        t, c = heuristic_descent(g, start)
        assert 1 <= t <= len(set(start.values()))
        assert verify_b_coloring(g, c, t).is_b_coloring

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=7, min_n=1))
    def test_all_distinct_start_lands_in_range(self, g):
        t, c = heuristic_descent(g, {v: v + 1 for v in range(g.n)})
        assert t <= m_degree(g)


class TestTrees:
    def test_small_pivot_fixture(self, t_piv):
        rep = pivoted_tree_report(t_piv)
        assert rep.pivoted and rep.pivot == 0
        assert rep.m_degree == 4 and len(rep.candidates) == 4
        assert b_chromatic_tree(t_piv) == 3
        assert b_chromatic_brute(t_piv) == 3

    def test_small_unpivoted_fixture(self, t_np):
        rep = pivoted_tree_report(t_np)
        assert not rep.pivoted and rep.pivot is None
        assert b_chromatic_tree(t_np) == 4

    def test_deep_fixtures(self, t_piv18, t_np18):
        assert t_piv18.n == 291
        assert m_degree(t_piv18) == 18 and m_degree(t_np18) == 18
        assert pivoted_tree_report(t_piv18).pivot == 0
        assert b_chromatic_tree(t_piv18) == 17
        assert not pivoted_tree_report(t_np18).pivoted
        assert b_chromatic_tree(t_np18) == 18

    def test_paths_and_stars(self):
        # P5: three candidates, neither leaf works as a pivot
        rep = pivoted_tree_report(path(5))
        assert not rep.pivoted and rep.m_degree == 3
        assert sorted(rep.candidates) == [1, 2, 3]
        assert b_chromatic_tree(path(5)) == 3
        # P2: every vertex is a candidate, so no pivot can exist
        assert not pivoted_tree_report(path(2)).pivoted
        assert b_chromatic_tree(path(2)) == 2
        star = Graph(6, [(0, i) for i in range(1, 6)])
        assert b_chromatic_tree(star) == 2

    def test_not_a_tree_rejected(self):
        with pytest.raises(NotATreeError):
            b_chromatic_tree(Graph(3, [(0, 1), (1, 2), (0, 2)]))
        with pytest.raises(NotATreeError):
            b_chromatic_tree(Graph(2, []))

    @settings(max_examples=120, deadline=None)
    @given(trees(max_n=9))
    def test_formula_matches_brute(self, t):
        assert b_chromatic_tree(t) == b_chromatic_brute(t)

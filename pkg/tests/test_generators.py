"""Generator families: determinism plus the structural promise of each kind."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bcolor.cocluster import cluster_modulator
from bcolor.coloring import verify_b_coloring
from bcolor.generators import (
    forest_plus_edges,
    multipartite_with_modulator,
    pivoted_tree,
    planted_stars,
    random_tree,
)
from bcolor.graph import complement, cycle_rank, is_tree, m_degree
from bcolor.reference import b_chromatic_tree, pivoted_tree_report


class TestRandomTree:
    def test_always_a_tree(self):
        for seed in range(25):
            assert is_tree(random_tree(1 + seed % 13, seed))

    def test_deterministic_under_seed(self):
        assert random_tree(30, 9) == random_tree(30, 9)
        assert random_tree(30, 9) != random_tree(30, 10)

    def test_single_vertex(self):
        assert random_tree(1).n == 1

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            random_tree(0)


class TestPivotedTree:
    def test_small_family_is_the_known_eleven_vertex_tree(self, t_piv):
        assert pivoted_tree(4) == t_piv

    def test_deep_family_matches_the_deep_fixtures(self, t_piv18, t_np18):
        assert pivoted_tree(18) == t_piv18
        assert pivoted_tree(18, unpivot=True) == t_np18

    def test_one_leaf_swings_the_palette(self):
        for k in (4, 5, 7):
            assert b_chromatic_tree(pivoted_tree(k)) == k - 1
            assert b_chromatic_tree(pivoted_tree(k, unpivot=True)) == k

    def test_decoration_preserves_the_obstruction(self):
        for k in (4, 6, 18):
            for seed in (1, 2, 3):
                blocked = pivoted_tree(k, decorate=k, seed=seed)
                report = pivoted_tree_report(blocked)
                assert report.pivoted and report.m_degree == k
                open_ = pivoted_tree(k, unpivot=True, decorate=k, seed=seed)
                report = pivoted_tree_report(open_)
                assert not report.pivoted and report.m_degree == k

    def test_rejects_degree_bound_below_four(self):
        with pytest.raises(ValueError):
            pivoted_tree(3)


class TestForestPlusEdges:
    @given(st.integers(2, 24), st.integers(0, 4), st.integers(0, 50))
    @settings(max_examples=120, deadline=None)
    def test_feedback_count_is_exact(self, n, extra, seed):
        if extra > n * (n - 1) // 2 - (n - 1):
            with pytest.raises(ValueError):
                forest_plus_edges(n, extra, seed)
            return
        assert cycle_rank(forest_plus_edges(n, extra, seed)) == extra

    def test_deterministic_under_seed(self):
        assert forest_plus_edges(50, 3, 4) == forest_plus_edges(50, 3, 4)

    def test_zero_extra_gives_a_forest(self):
        g = forest_plus_edges(12, 0, 8)
        assert cycle_rank(g) == 0


class TestMultipartiteWithModulator:
    def test_planted_set_really_is_a_modulator(self):
        for seed in range(20):
            mod = seed % 3
            parts = 2 + seed % 3
            g = multipartite_with_modulator(parts + mod + 2 + seed % 5, parts, mod, seed)
            found = cluster_modulator(complement(g), mod)
            assert found is not None and len(found) <= mod

    def test_zero_modulator_is_pure_multipartite(self):
        g = multipartite_with_modulator(9, 3, 0, seed=5)
        assert cluster_modulator(complement(g), 0) == []

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            multipartite_with_modulator(3, 4, 0)
        with pytest.raises(ValueError):
            multipartite_with_modulator(5, 0, 1)


class TestPlantedStars:
    def test_witness_is_a_b_colouring(self):
        for seed in range(20):
            k = 1 + seed % 5
            g, witness = planted_stars(k, seed=seed)
            assert g.n == k * k
            assert verify_b_coloring(g, witness, k).is_b_coloring

    def test_cross_edges_land_on_top_of_the_stars(self):
        g, _ = planted_stars(4, extra=6, seed=1)
        assert g.m == 4 * 3 + 6

    def test_deterministic_under_seed(self):
        assert planted_stars(4, seed=3) == planted_stars(4, seed=3)

    def test_single_colour_is_a_point(self):
        g, witness = planted_stars(1)
        assert g.n == 1 and witness == {0: 1}

    def test_rejects_impossible_cross_count(self):
        with pytest.raises(ValueError):
            planted_stars(2, extra=1000)

import pytest
from hypothesis import given, settings

from bcolor.coloring import (
    BColoringReport,
    ColoringFormatError,
    format_coloring,
    is_proper,
    normalize_colors,
    parse_coloring,
    verify_b_coloring,
)
from bcolor.graph import Graph
from helpers import graphs, greedy_proper_coloring


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


class TestColoringFormat:
    def test_round_trip(self):
        k, c = parse_coloring("c note\ns bcol 3\n1 2\n2 3\n3 1\n")
        assert k == 3 and c == {0: 2, 1: 3, 2: 1}
        assert parse_coloring(format_coloring(k, c)) == (k, c)

    def test_missing_header(self):
        with pytest.raises(ColoringFormatError):
            parse_coloring("1 1\n")

    def test_color_out_of_range(self):
        with pytest.raises(ColoringFormatError):
            parse_coloring("s bcol 2\n1 3\n")
        with pytest.raises(ColoringFormatError):
            parse_coloring("s bcol 2\n1 0\n")

    def test_vertex_checked_against_n(self):
        with pytest.raises(ColoringFormatError):
            parse_coloring("s bcol 2\n5 1\n", n=4)

    def test_duplicate_vertex(self):
        with pytest.raises(ColoringFormatError):
            parse_coloring("s bcol 2\n1 1\n1 2\n")

    def test_partial_is_allowed(self):
        k, c = parse_coloring("s bcol 2\n2 1\n", n=3)
        assert c == {1: 1}


class TestChecks:
    def test_is_proper(self):
        g = path(3)
        assert is_proper(g, {0: 1, 1: 2, 2: 1})
        assert not is_proper(g, {0: 1, 1: 1})
        assert is_proper(g, {0: 1, 2: 1})  # uncoloured middle

    def test_normalize(self):
        t, c = normalize_colors({0: 5, 1: 2, 2: 5})
        assert t == 2 and c == {0: 2, 1: 1, 2: 2}


class TestVerifier:
    def test_complete_bipartite_minus_matching(self, g_im):
        two = {v: 1 if v < 4 else 2 for v in range(8)}
        assert verify_b_coloring(g_im, two, 2).is_b_coloring
        four = {v: (v % 4) + 1 for v in range(8)}
        rep = verify_b_coloring(g_im, four, 4)
        assert rep.is_b_coloring and rep.proper and rep.total
        assert rep.b_vertices[1] == [0, 4]

    def test_missing_b_vertex(self):
        # with k=3 nobody can see three colours, so every colour is flagged
        rep = verify_b_coloring(path(3), {0: 1, 1: 2, 2: 1}, 3)
        assert not rep.is_b_coloring and rep.proper and rep.total
        assert [v.kind for v in rep.violations] == ["missing-b-vertex"] * 3
        assert [v.color for v in rep.violations] == [1, 2, 3]

    def test_improper_and_uncolored(self):
        g = path(3)
        rep = verify_b_coloring(g, {0: 1, 1: 1}, 1)
        kinds = {v.kind for v in rep.violations}
        assert kinds == {"uncolored", "improper-edge"}
        assert not rep.proper and not rep.total
        assert rep.describe_lines()  # human-readable, 1-indexed
        assert "3" in rep.describe_lines()[0]

    def test_color_out_of_range(self):
        rep = verify_b_coloring(Graph(1, []), {0: 4}, 2)
        assert any(v.kind == "color-out-of-range" for v in rep.violations)

    @settings(max_examples=80)
    @given(graphs(max_n=7, min_n=1))
    def test_greedy_coloring_is_proper_and_total(self, g):
        c = greedy_proper_coloring(g)
        k = max(c.values())
        rep = verify_b_coloring(g, c, k)
        assert rep.proper and rep.total

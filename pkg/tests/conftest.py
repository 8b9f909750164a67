"""Canonical fixture graphs used across the suite."""

from __future__ import annotations

import pytest

from bcolor.graph import Graph


@pytest.fixture
def g_im() -> Graph:
    """K4,4 minus a perfect matching: b-colourable with 2 and 4 colours, not 3."""
    edges = [(i, 4 + j) for i in range(4) for j in range(4) if i != j]
    return Graph(8, edges)


def _deep_pivot_tree(extra_leaf_on_gate: bool = False) -> Graph:
    """The 18-candidate pivot tree on 291 vertices (``extra_leaf_on_gate``
    breaks the pivot by over-padding the first gate)."""
    edges = []
    nxt = 19  # 0 = pivot, 1..2 gates, 3..18 outer candidates
    edges.append((0, 1))
    edges.append((0, 2))
    for c in range(3, 11):
        edges.append((1, c))
    for c in range(11, 19):
        edges.append((2, c))
    # pad gates to degree exactly 17: they have 9 edges so far
    for gate in (1, 2):
        for _ in range(8):
            edges.append((gate, nxt))
            nxt += 1
    # pad outer candidates to degree exactly 17 (1 tree edge so far)
    for c in range(3, 19):
        for _ in range(16):
            edges.append((c, nxt))
            nxt += 1
    if extra_leaf_on_gate:
        edges.append((1, nxt))
        nxt += 1
    return Graph(nxt, edges)


@pytest.fixture
def t_piv() -> Graph:
    """Small pivoted tree: degree bound 4 but only 3 colours achievable."""
    edges = [(0, 1), (0, 2), (1, 3), (1, 5), (2, 4), (2, 6),
             (3, 7), (3, 8), (4, 9), (4, 10)]
    return Graph(11, edges)


@pytest.fixture
def t_np() -> Graph:
    """t_piv with one extra leaf on vertex 1 -- no longer pivoted."""
    edges = [(0, 1), (0, 2), (1, 3), (1, 5), (2, 4), (2, 6),
             (3, 7), (3, 8), (4, 9), (4, 10), (1, 11)]
    return Graph(12, edges)


@pytest.fixture(scope="session")
def t_piv18() -> Graph:
    return _deep_pivot_tree()


@pytest.fixture(scope="session")
def t_np18() -> Graph:
    return _deep_pivot_tree(extra_leaf_on_gate=True)

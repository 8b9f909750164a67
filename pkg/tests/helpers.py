"""Shared test utilities: hypothesis strategies and independent oracles.

The oracles here are deliberately dumb -- no symmetry breaking, no pruning,
no shared code with the solvers under test -- so they can arbitrate.
"""

from __future__ import annotations

from hypothesis import strategies as st

from bcolor.graph import Graph


@st.composite
def graphs(draw, max_n: int = 8, min_n: int = 0) -> Graph:
    """Arbitrary simple graph; edge set drawn as a bitmask (shrinks to sparse)."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.integers(0, (1 << len(pairs)) - 1))
    return Graph(n, [e for i, e in enumerate(pairs) if mask >> i & 1])


@st.composite
def trees(draw, max_n: int = 12, min_n: int = 1) -> Graph:
    """Random labelled tree via random parent attachment."""
    n = draw(st.integers(min_n, max_n))
    edges = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    return Graph(n, edges)


@st.composite
def sparse_graphs(draw, max_n: int = 24, max_extra: int = 5, min_n: int = 1) -> Graph:
    """Random forest plus at most ``max_extra`` chords: cycle rank <= max_extra."""
    n = draw(st.integers(min_n, max_n))
    edges = []
    for v in range(1, n):
        parent = draw(st.integers(-1, v - 1))
        if parent >= 0:
            edges.append((parent, v))
    present = set(edges)
    for _ in range(draw(st.integers(0, max_extra))):
        if n < 2:
            break
        u = draw(st.integers(0, n - 2))
        v = draw(st.integers(u + 1, n - 1))
        if (u, v) not in present:
            present.add((u, v))
            edges.append((u, v))
    return Graph(n, edges)


@st.composite
def connected_graphs(draw, max_n: int = 8, min_n: int = 1) -> Graph:
    """Random connected graph: a spanning tree plus an arbitrary edge subset."""
    t = draw(trees(max_n=max_n, min_n=min_n))
    n = t.n
    present = set(t.edges())
    rest = [
        (u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in present
    ]
    mask = draw(st.integers(0, (1 << len(rest)) - 1))
    extra = [e for i, e in enumerate(rest) if mask >> i & 1]
    return Graph(n, list(present) + extra)


def exists_b_coloring_unpruned(g: Graph, k: int) -> bool:
    """Backtrack over *all* proper colourings (no symmetry breaking, no
    b-pruning) and test the b-condition only at the leaves.  Cap: n <= 8."""
    assert g.n <= 8, "oracle is exponential; keep it tiny"
    assert k >= 1
    color: dict[int, int] = {}
    full = set(range(1, k + 1))

    def leaf_is_b() -> bool:
        for c in full:
            if not any(
                color[v] == c and full <= {color[w] for w in g.closed(v)}
                for v in range(g.n)
            ):
                return False
        return True

    def rec(v: int) -> bool:
        if v == g.n:
            return leaf_is_b()
        for c in range(1, k + 1):
            if all(color.get(w) != c for w in g.neighbors(v)):
                color[v] = c
                if rec(v + 1):
                    return True
                del color[v]
        return False

    return rec(0)


def max_matching_exhaustive(nleft: int, adj) -> int:
    """Optimum matching size by trying every assignment (tiny sides only)."""
    assert nleft <= 10
    best = 0

    def rec(u: int, used: frozenset, size: int) -> None:
        nonlocal best
        if u == nleft:
            best = max(best, size)
            return
        rec(u + 1, used, size)
        for v in adj[u]:
            if v not in used:
                rec(u + 1, used | {v}, size + 1)

    rec(0, frozenset(), 0)
    return best


def greedy_proper_coloring(g: Graph) -> dict[int, int]:
    """Smallest-available greedy colouring in vertex order (always proper)."""
    coloring: dict[int, int] = {}
    for v in range(g.n):
        taken = {coloring[w] for w in g.neighbors(v) if w in coloring}
        c = 1
        while c in taken:
            c += 1
        coloring[v] = c
    return coloring

"""Core graph type, file format and basic structural routines.

Graphs are simple and undirected.  Vertices are ``0 .. n-1`` internally;
the text format is 1-indexed (see :func:`parse_graph`).

The text format is the classic edge-list dialect::

    c optional comment lines
    p edge <n> <m>
    e <u> <v>

with one ``e`` line per edge, ``1 <= u < v <= n``, whitespace separated.
Reversed endpoints are tolerated and canonicalised; self-loops and repeated
edges are rejected with distinct error types so callers (and tests) can tell
the failure modes apart.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

#: Explicit "unreachable" distance sentinel used by the traversal helpers.
INF = float("inf")


class GraphFormatError(ValueError):
    """Base class for graph text that does not parse."""


class MalformedHeaderError(GraphFormatError):
    """Missing or unparsable ``p edge <n> <m>`` header line."""


class VertexRangeError(GraphFormatError):
    """An edge endpoint lies outside ``1 .. n``."""


class SelfLoopError(GraphFormatError):
    """An edge joins a vertex to itself."""


class DuplicateEdgeError(GraphFormatError):
    """The same edge (in either orientation) appears twice."""


class Graph:
    """An immutable simple undirected graph on vertices ``0 .. n-1``.

    Neighbour lists are kept sorted, so iteration order is deterministic
    everywhere; a parallel tuple of frozensets serves membership tests.
    """

    __slots__ = ("n", "m", "_nbrs", "_nbr_sets")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.m = len(seen)
        self._nbrs = tuple(tuple(sorted(a)) for a in adj)
        self._nbr_sets = tuple(frozenset(a) for a in adj)

    # -- basic accessors -------------------------------------------------

    def neighbors(self, u: int) -> tuple[int, ...]:
        """Sorted tuple of neighbours of ``u``."""
        return self._nbrs[u]

    def nbr_set(self, u: int) -> frozenset[int]:
        return self._nbr_sets[u]

    def closed(self, u: int) -> frozenset[int]:
        """Closed neighbourhood ``N[u]`` as a frozenset."""
        return self._nbr_sets[u] | {u}

    def degree(self, u: int) -> int:
        return len(self._nbrs[u])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._nbrs]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr_sets[u]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, v)`` with ``u < v``, lexicographically sorted."""
        return [(u, v) for u in range(self.n) for v in self._nbrs[u] if u < v]

    def vertices(self) -> range:
        return range(self.n)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._nbrs == other._nbrs

    def __hash__(self) -> int:
        return hash((self.n, self._nbrs))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# -- text format ---------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse edge-list text into a :class:`Graph`.

    Raises a subclass of :class:`GraphFormatError` describing the first
    problem found: :class:`MalformedHeaderError`, :class:`VertexRangeError`,
    :class:`SelfLoopError` or :class:`DuplicateEdgeError`.  Other structural
    problems (wrong edge count, junk lines) raise plain
    :class:`GraphFormatError`.
    """
    n = m = -1
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if n < 0:
            if tokens[0] != "p":
                raise MalformedHeaderError(f"line {lineno}: expected 'p edge <n> <m>' header")
            if len(tokens) != 4 or tokens[1] != "edge":
                raise MalformedHeaderError(f"line {lineno}: malformed header {raw!r}")
            try:
                n, m = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise MalformedHeaderError(f"line {lineno}: non-integer counts in header") from None
            if n < 0 or m < 0:
                raise MalformedHeaderError(f"line {lineno}: negative counts in header")
            continue
        if tokens[0] != "e":
            raise GraphFormatError(f"line {lineno}: unexpected line {raw!r}")
        if len(tokens) != 3:
            raise GraphFormatError(f"line {lineno}: edge line needs two endpoints")
        try:
            u, v = int(tokens[1]), int(tokens[2])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer endpoint") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise VertexRangeError(f"line {lineno}: endpoint out of range 1..{n}")
        if u == v:
            raise SelfLoopError(f"line {lineno}: self-loop at {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdgeError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add(key)
        edges.append((u - 1, v - 1))
    if n < 0:
        raise MalformedHeaderError("missing 'p edge <n> <m>' header")
    if len(edges) != m:
        raise GraphFormatError(f"header promised {m} edges, found {len(edges)}")
    return Graph(n, edges)


def format_graph(g: Graph, comment: str | None = None) -> str:
    """Serialise ``g`` in the edge-list format (inverse of :func:`parse_graph`)."""
    lines = []
    if comment:
        lines.extend(f"c {c}" for c in comment.splitlines())
    lines.append(f"p edge {g.n} {g.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# -- traversal and structure --------------------------------------------


def bfs_distances(g: Graph, sources: Iterable[int], allowed: frozenset[int] | set[int] | None = None) -> list:
    """Multi-source BFS distances; unreachable vertices get :data:`INF`.

    ``allowed`` restricts the traversal to an induced vertex set (sources
    outside it are ignored).
    """
    dist: list = [INF] * g.n
    queue: list[int] = []
    for s in sorted(set(sources)):
        if allowed is not None and s not in allowed:
            continue
        dist[s] = 0
        queue.append(s)
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        for v in g.neighbors(u):
            if dist[v] is INF and (allowed is None or v in allowed):
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def connected_components(g: Graph, allowed: Iterable[int] | None = None) -> list[list[int]]:
    """Components (of the induced subgraph on ``allowed``, if given).

    Deterministic: components ordered by smallest member, members ascending.
    """
    verts = range(g.n) if allowed is None else sorted(set(allowed))
    vset = None if allowed is None else set(verts)
    seen: set[int] = set()
    comps: list[list[int]] = []
    for s in verts:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        head = 0
        while head < len(comp):
            u = comp[head]
            head += 1
            for v in g.neighbors(u):
                if v not in seen and (vset is None or v in vset):
                    seen.add(v)
                    comp.append(v)
        comps.append(sorted(comp))
    return comps


def induced_subgraph(g: Graph, verts: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph plus the new-index -> old-index map."""
    order = sorted(set(verts))
    idx = {v: i for i, v in enumerate(order)}
    edges = [(idx[u], idx[v]) for u, v in g.edges() if u in idx and v in idx]
    return Graph(len(order), edges), order


def complement(g: Graph) -> Graph:
    edges = [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if not g.has_edge(u, v)
    ]
    return Graph(g.n, edges)


def remove_vertices(g: Graph, drop: Iterable[int]) -> Graph:
    """New graph without ``drop``; remaining vertices are renumbered densely."""
    keep = [v for v in range(g.n) if v not in set(drop)]
    sub, _ = induced_subgraph(g, keep)
    return sub


def remove_edge(g: Graph, u: int, v: int) -> Graph:
    key = (u, v) if u < v else (v, u)
    return Graph(g.n, [e for e in g.edges() if e != key])


def two_core(g: Graph) -> tuple[frozenset[int], frozenset[int]]:
    """Split vertices into (2-core, rest).

    The rest is exactly the union of the maximal subtrees hanging off the
    core (and whole tree components), i.e. what repeatedly deleting vertices
    of degree <= 1 removes.
    """
    deg = g.degrees()
    dropped = [False] * g.n
    stack = [v for v in range(g.n) if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if dropped[v]:
            continue
        dropped[v] = True
        for w in g.neighbors(v):
            if not dropped[w]:
                deg[w] -= 1
                if deg[w] <= 1:
                    stack.append(w)
    core = frozenset(v for v in range(g.n) if not dropped[v])
    return core, frozenset(v for v in range(g.n) if dropped[v])


def feedback_edge_set(g: Graph, allowed: Iterable[int] | None = None) -> list[tuple[int, int]]:
    """Non-tree edges of a BFS spanning forest (deterministic, sorted).

    The size of the result is the cycle rank ``m - n + #components`` of the
    (induced) graph; an empty result means a forest.
    """
    verts = range(g.n) if allowed is None else sorted(set(allowed))
    vset = None if allowed is None else set(verts)
    parent: dict[int, int] = {}
    visited: set[int] = set()
    feedback: list[tuple[int, int]] = []
    for s in verts:
        if s in visited:
            continue
        visited.add(s)
        parent[s] = -1
        queue = [s]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for v in g.neighbors(u):
                if vset is not None and v not in vset:
                    continue
                if v not in visited:
                    visited.add(v)
                    parent[v] = u
                    queue.append(v)
                elif parent[u] != v and u < v:
                    feedback.append((u, v))
    return sorted(feedback)


def cycle_rank(g: Graph) -> int:
    """``m - n + #components`` -- the number of independent cycles."""
    return g.m - g.n + len(connected_components(g))


def is_tree(g: Graph) -> bool:
    return g.n > 0 and g.m == g.n - 1 and len(connected_components(g)) == 1


def m_degree(g: Graph) -> int:
    """Largest ``k`` such that at least ``k`` vertices have degree >= ``k - 1``.

    Every colour class of a b-coloring needs a vertex adjacent to all other
    colours, so this is an upper bound on the achievable number of colours.
    """
    degs = sorted(g.degrees(), reverse=True)
    best = 0
    for k in range(1, g.n + 1):
        if degs[k - 1] >= k - 1:
            best = k
    return best


def degeneracy_order(g: Graph) -> list[int]:
    """Smallest-last vertex order (repeatedly remove a minimum-degree vertex).

    Returned so that each vertex has few neighbours *earlier* in the list;
    ties break towards the smaller vertex index.
    """
    deg = g.degrees()
    removed = [False] * g.n
    out: list[int] = []
    for _ in range(g.n):
        v = min((x for x in range(g.n) if not removed[x]), key=lambda x: (deg[x], x))
        removed[v] = True
        out.append(v)
        for w in g.neighbors(v):
            if not removed[w]:
                deg[w] -= 1
    out.reverse()
    return out

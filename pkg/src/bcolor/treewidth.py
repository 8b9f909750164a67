"""Tree decompositions from feedback edges, and an exact DP over them.

The decomposition puts one fixed endpoint of every non-tree edge into every
bag, so its width is (number of feedback edges) + 1 -- small exactly on the
sparse graphs the rest of the library cares about.  The solver is a textbook
nice-decomposition dynamic program whose states remember, per bag vertex,
which colours its processed closed neighbourhood has seen, plus the set of
colours already certified to own a b-vertex.  State count is capped by an
explicit budget; callers fall back to brute force on small instances.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional

from .errors import StateBudgetExceeded
from .graph import (
    Graph,
    connected_components,
    feedback_edge_set,
    induced_subgraph,
    m_degree,
)

#: Default cap on the total number of DP states across all nice-tree nodes.
DEFAULT_STATE_BUDGET = 150_000


class DisconnectedGraphError(ValueError):
    """td_from_feedback_edges needs a connected graph."""


@dataclass
class TreeDecomposition:
    """Bags indexed by node; ``tree`` is the node adjacency (a tree)."""

    bags: list[frozenset[int]]
    tree: list[list[int]]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


def td_from_feedback_edges(g: Graph) -> TreeDecomposition:
    """Decomposition of width <= (feedback edges) + 1 for a connected graph.

    Every vertex v gets the bag {v, parent(v)} over a BFS spanning tree,
    plus one fixed endpoint (the smaller) of every feedback edge; those
    shared endpoints sit in all bags, which is what makes every cycle edge
    land inside a bag.
    """
    if len(connected_components(g)) != 1:
        raise DisconnectedGraphError("graph must be connected (decompose per component)")
    fes = set(feedback_edge_set(g))
    pinned = frozenset(min(u, v) for u, v in fes)
    # BFS spanning tree from vertex 0 over non-feedback edges
    parent = [-2] * g.n
    parent[0] = -1
    queue = [0]
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        for v in g.neighbors(u):
            e = (u, v) if u < v else (v, u)
            if e in fes or parent[v] != -2:
                continue
            parent[v] = u
            queue.append(v)
    tree: list[list[int]] = [[] for _ in range(g.n)]
    for v in range(g.n):
        if parent[v] >= 0:
            tree[v].append(parent[v])
            tree[parent[v]].append(v)
    bags = [
        frozenset({v} | pinned | ({parent[v]} if parent[v] >= 0 else set()))
        for v in range(g.n)
    ]
    return TreeDecomposition(bags, tree)


def combined_decomposition(g: Graph) -> TreeDecomposition:
    """A single decomposition for any graph: per-component decompositions
    chained together through empty bags (all validator invariants survive)."""
    comps = connected_components(g)
    if not comps:
        return TreeDecomposition([frozenset()], [[]])
    bags: list[frozenset[int]] = []
    tree: list[list[int]] = []
    roots = []
    for comp in comps:
        sub, back = induced_subgraph(g, comp)
        td = td_from_feedback_edges(sub)
        off = len(bags)
        bags.extend(frozenset(back[v] for v in bag) for bag in td.bags)
        tree.extend([x + off for x in adj] for adj in td.tree)
        roots.append(off)
    if len(roots) == 1:
        return TreeDecomposition(bags, tree)
    # chain the component roots below empty connector bags
    hub = len(bags)
    bags.append(frozenset())
    tree.append([])
    for r in roots:
        tree[hub].append(r)
        tree[r].append(hub)
    return TreeDecomposition(bags, tree)


def validate_tree_decomposition(g: Graph, td: TreeDecomposition) -> list[str]:
    """All reasons ``td`` is not a tree decomposition of ``g`` (empty = valid)."""
    problems = []
    t = len(td.bags)
    if len(td.tree) != t:
        return ["bag list and tree adjacency disagree on node count"]
    # the host tree must actually be a tree
    deg_sum = sum(len(a) for a in td.tree)
    seen = set()
    if t:
        stack = [0]
        seen.add(0)
        while stack:
            x = stack.pop()
            for y in td.tree[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    if len(seen) != t or deg_sum != 2 * (t - 1):
        problems.append("host graph is not a tree")
    covered = set().union(*td.bags) if td.bags else set()
    if covered != set(range(g.n)):
        problems.append("some vertex is in no bag")
    for u, v in g.edges():
        if not any(u in b and v in b for b in td.bags):
            problems.append(f"edge {u}-{v} is inside no bag")
            break
    for v in range(g.n):
        nodes = [i for i in range(t) if v in td.bags[i]]
        if not nodes:
            continue
        reach = {nodes[0]}
        stack = [nodes[0]]
        node_set = set(nodes)
        while stack:
            x = stack.pop()
            for y in td.tree[x]:
                if y in node_set and y not in reach:
                    reach.add(y)
                    stack.append(y)
        if reach != node_set:
            problems.append(f"bags containing vertex {v} are not connected")
            break
    return problems


# -- nice form -----------------------------------------------------------

_LEAF, _INTRO, _FORGET, _JOIN = range(4)


def _nice_ops(td: TreeDecomposition, root: int = 0):
    """Flatten the rooted decomposition into leaf/introduce/forget/join ops.

    Returns ``(ops, top)`` where each op is
    ``(kind, bag_tuple, vertex_or_child, child_or_sibling)`` and children
    always precede parents in the list.  The op at ``top`` has an empty bag.
    """
    ops: list[tuple] = []

    def emit(kind, bag, a=-1, b=-1) -> int:
        ops.append((kind, bag, a, b))
        return len(ops) - 1

    def chain(top: int, src: tuple, dst: tuple) -> int:
        cur, bag = top, list(src)
        for v in sorted(set(src) - set(dst)):
            bag.remove(v)
            cur = emit(_FORGET, tuple(bag), v, cur)
        for v in sorted(set(dst) - set(src)):
            bag = sorted(bag + [v])
            cur = emit(_INTRO, tuple(bag), v, cur)
        return cur

    # iterative post-order over the rooted td tree
    order = []
    parent = {root: -1}
    stack = [root]
    while stack:
        x = stack.pop()
        order.append(x)
        for y in td.tree[x]:
            if y != parent.get(x, -2):
                parent[y] = x
                stack.append(y)
    tops: Dict[int, int] = {}
    for x in reversed(order):
        bag = tuple(sorted(td.bags[x]))
        child_tops = [
            chain(tops[y], tuple(sorted(td.bags[y])), bag)
            for y in td.tree[x]
            if y != parent[x]
        ]
        if not child_tops:
            cur = emit(_LEAF, ())
            cur = chain(cur, (), bag)
        else:
            cur = child_tops[0]
            for other in child_tops[1:]:
                cur = emit(_JOIN, bag, cur, other)
        tops[x] = cur
    return ops, chain(tops[root], tuple(sorted(td.bags[root])), ())


# -- the dynamic program -------------------------------------------------


def solve_twdp(
    g: Graph,
    k: int,
    td: TreeDecomposition,
    *,
    state_budget: int = DEFAULT_STATE_BUDGET,
) -> Optional[Dict[int, int]]:
    """Exact k-b-colouring over a tree decomposition, or ``None``.

    State per nice node: (bag colouring, per-bag-vertex seen-colour bitmask,
    certified-colour bitmask).  A vertex certifies its colour the moment it
    is forgotten with a full seen set; the root accepts iff every colour got
    certified.  Raises :class:`StateBudgetExceeded` past ``state_budget``
    total states; one global symmetry is cut by pinning the first introduced
    vertex to colour 1 (any witness can be relabelled to match).
    """
    if k < 1:
        raise ValueError("colour count must be positive")
    if k > m_degree(g):
        return None
    ops, top = _nice_ops(td)
    full = ((1 << k) - 1) << 1  # bits 1..k
    states: list[dict] = [dict() for _ in ops]
    total = 0
    first_intro = next((i for i, op in enumerate(ops) if op[0] == _INTRO), -1)

    def over_budget(out: dict) -> bool:
        return total + len(out) > state_budget

    bust = StateBudgetExceeded(
        f"tree-width DP exceeded its budget of {state_budget} states"
    )
    for i, (kind, bag, a, b) in enumerate(ops):
        out = states[i]
        if kind == _LEAF:
            out[((), (), 0)] = None
        elif kind == _INTRO:
            v, child = a, b
            pos = bag.index(v)
            cbag = bag[:pos] + bag[pos + 1 :]
            nbrs = [j for j, w in enumerate(cbag) if g.has_edge(v, w)]
            palette = (1,) if i == first_intro else tuple(range(1, k + 1))
            for key in states[child]:
                cols, seen, done = key
                for c in palette:
                    if any(cols[j] == c for j in nbrs):
                        continue
                    sv = 1 << c
                    newseen = list(seen)
                    for j in nbrs:
                        sv |= 1 << cols[j]
                        newseen[j] |= 1 << c
                    newcols = cols[:pos] + (c,) + cols[pos:]
                    newseen.insert(pos, sv)
                    nk = (newcols, tuple(newseen), done)
                    if nk not in out:
                        out[nk] = (key, c)
                if over_budget(out):
                    raise bust
        elif kind == _FORGET:
            v, child = a, b
            cbag = tuple(sorted(set(bag) | {v}))
            pos = cbag.index(v)
            for key in states[child]:
                cols, seen, done = key
                if seen[pos] == full:
                    done |= 1 << cols[pos]
                nk = (
                    cols[:pos] + cols[pos + 1 :],
                    seen[:pos] + seen[pos + 1 :],
                    done,
                )
                if nk not in out:
                    out[nk] = (key,)
            if over_budget(out):
                raise bust
        else:  # _JOIN
            left, right = a, b
            by_cols: dict = {}
            for key in states[right]:
                by_cols.setdefault(key[0], []).append(key)
            work = 0
            for lkey in states[left]:
                cols, lseen, ldone = lkey
                for rkey in by_cols.get(cols, ()):
                    _, rseen, rdone = rkey
                    nk = (
                        cols,
                        tuple(x | y for x, y in zip(lseen, rseen)),
                        ldone | rdone,
                    )
                    if nk not in out:
                        out[nk] = (lkey, rkey)
                work += len(by_cols.get(cols, ()))
                if work > 20 * state_budget or over_budget(out):
                    raise bust
        total += len(out)
        if total > state_budget:
            raise bust

    accept = next(
        (key for key in states[top] if key[2] == full), None
    )
    if accept is None:
        return None

    # -- witness reconstruction by parent pointers ----------------------
    coloring: Dict[int, int] = {}
    stack = [(top, accept)]
    while stack:
        i, key = stack.pop()
        kind, bag, a, b = ops[i]
        pred = states[i][key]
        if kind == _LEAF:
            continue
        if kind == _INTRO:
            child_key, c = pred
            coloring[a] = c
            stack.append((b, child_key))
        elif kind == _FORGET:
            stack.append((b, pred[0]))
        else:
            stack.append((a, pred[0]))
            stack.append((b, pred[1]))
    return coloring


def b_coloring_twdp(
    g: Graph,
    k: int,
    *,
    state_budget: int = DEFAULT_STATE_BUDGET,
    brute_cap: int | None = None,
) -> Optional[Dict[int, int]]:
    """Convenience entry: build the decomposition, run the DP, and on budget
    exhaustion fall back to brute force when the instance is small enough."""
    from .reference import BRUTE_VERTEX_CAP, brute_force_b_coloring

    cap = BRUTE_VERTEX_CAP if brute_cap is None else brute_cap
    td = combined_decomposition(g)
    try:
        return solve_twdp(g, k, td, state_budget=state_budget)
    except StateBudgetExceeded:
        if g.n <= cap:
            return brute_force_b_coloring(g, k, cap=cap)
        raise

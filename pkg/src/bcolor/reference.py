"""Reference solvers: brute force, colour-descent heuristic, and trees.

The brute-force search is the ground truth everything else is compared
against.  It backtracks over vertices in degeneracy order with two sound
reductions: colours must first appear in ascending order (pure symmetry
breaking), and a branch is cut once some colour provably cannot end up with
a b-vertex any more.  Neither reduction can lose solutions, so "no" answers
are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional

from .errors import InstanceTooLarge
from .graph import Graph, degeneracy_order, is_tree, m_degree

#: Hard vertex cap for the exponential search.
BRUTE_VERTEX_CAP = 16


def brute_force_b_coloring(g: Graph, k: int, *, cap: int = BRUTE_VERTEX_CAP) -> Optional[Dict[int, int]]:
    """Find a b-colouring of ``g`` with exactly ``k`` colours, or ``None``.

    Raises :class:`InstanceTooLarge` above the vertex cap.  The returned
    witness is deterministic (first solution in the symmetry-broken search
    order).
    """
    if k < 1:
        raise ValueError("colour count must be positive")
    if g.n > cap:
        raise InstanceTooLarge(f"{g.n} vertices exceeds the brute-force cap of {cap}")
    if k > m_degree(g):
        # every colour class needs a vertex adjacent to k-1 other colours
        return None
    n = g.n
    deg = g.degrees()
    hosts = [v for v in range(n) if deg[v] >= k - 1]
    order = degeneracy_order(g)
    amask = [0] * n
    for v in range(n):
        for w in g.neighbors(v):
            amask[v] |= 1 << w
    cmask = [amask[v] | (1 << v) for v in range(n)]

    color = [0] * n
    cls = [0] * (k + 1)  # vertex bitmask per colour class
    unc = (1 << n) - 1 if n else 0  # uncoloured vertices

    def hosts_viable() -> bool:
        # Upper-bound, per colour, the number of distinct colours any
        # potential b-vertex could still see; once all are colored this is
        # the exact b-condition.
        info = []
        for u in hosts:
            cm = cmask[u]
            seen = 0
            for c in range(1, k + 1):
                if cls[c] & cm:
                    seen |= 1 << c
            info.append((u, seen, (cm & unc).bit_count()))
        for c in range(1, k + 1):
            bit = 1 << c
            for u, seen, freebies in info:
                cu = color[u]
                if cu == c:
                    if seen.bit_count() + freebies >= k:
                        break
                elif cu == 0 and not (cls[c] & amask[u]):
                    # u could still take colour c itself
                    if (seen | bit).bit_count() + freebies - 1 >= k:
                        break
            else:
                return False
        return True

    def rec(i: int, used: int) -> bool:
        nonlocal unc
        if i == n:
            return hosts_viable()
        v = order[i]
        am = amask[v]
        vb = 1 << v
        top = used + 1 if used < k else k
        for c in range(1, top + 1):
            if cls[c] & am:
                continue
            color[v] = c
            cls[c] |= vb
            unc ^= vb
            if hosts_viable() and rec(i + 1, used if c <= used else c):
                return True
            color[v] = 0
            cls[c] &= ~vb
            unc ^= vb
        return False

    if rec(0, 0):
        return {v: color[v] for v in range(n)}
    return None


def b_chromatic_brute(g: Graph, *, cap: int = BRUTE_VERTEX_CAP) -> int:
    """Largest ``k`` admitting a b-colouring.

    Sweeps candidates downward from the degree bound; the sweep always
    terminates at or above the chromatic number (a proper colouring with
    chromatically few colours can always be descended to a b-colouring).
    Returns 0 for the empty graph.
    """
    for k in range(m_degree(g), 0, -1):
        if brute_force_b_coloring(g, k, cap=cap) is not None:
            return k
    return 0


# -- descent heuristic ---------------------------------------------------


def heuristic_descent(g: Graph, start: Dict[int, int]) -> tuple[int, Dict[int, int]]:
    """Greedily merge away colours until the colouring becomes a b-colouring.

    ``start`` must be a total proper colouring.  A colour can be dropped
    when every vertex wearing it has some other in-use colour missing from
    its neighbourhood; all such vertices are then recoloured at once (the
    class is independent, so simultaneous recolouring stays proper).  Colours
    are scanned ascending and each vertex takes the smallest available
    replacement.  A colouring survives untouched exactly when it already is
    a b-colouring.

    Returns ``(t, colouring)`` with colours renumbered onto ``1 .. t``.
    """
    if len(start) != g.n:
        raise ValueError("starting colouring must be total")
    for u, v in g.edges():
        if start[u] == start[v]:
            raise ValueError(f"starting colouring is not proper on edge {u}-{v}")
    coloring = dict(start)
    while True:
        used = sorted(set(coloring.values()))
        if len(used) <= 1:
            break
        dropped = False
        for c in used:
            plan: Dict[int, int] = {}
            for v, cv in coloring.items():
                if cv != c:
                    continue
                nb = {coloring[w] for w in g.neighbors(v)}
                repl = next((d for d in used if d != c and d not in nb), None)
                if repl is None:
                    break
                plan[v] = repl
            else:
                coloring.update(plan)
                dropped = True
                break
        if not dropped:
            break
    remap = {c: i for i, c in enumerate(sorted(set(coloring.values())), start=1)}
    return len(remap), {v: remap[c] for v, c in coloring.items()}


# -- trees ---------------------------------------------------------------


class NotATreeError(ValueError):
    """Input to a tree-only routine was not a tree."""


@dataclass
class PivotReport:
    """Outcome of the pivot test on a tree.

    ``candidates`` are the vertices of degree >= m_degree - 1; when
    ``pivoted`` is true there are exactly ``m_degree`` of them and ``pivot``
    is the (smallest) obstructing non-candidate vertex.
    """

    pivoted: bool
    pivot: Optional[int]
    candidates: list[int]
    m_degree: int


def pivoted_tree_report(t: Graph) -> PivotReport:
    """Test whether a tree is pivoted (quadratic scan over pivot choices).

    With ``m`` the degree bound and "candidate" meaning degree >= m - 1, the
    tree is pivoted iff there are exactly m candidates and some
    non-candidate u satisfies all of:

    1. u is not a candidate;
    2. every candidate is adjacent to u, or to another candidate that is
       adjacent to u;
    3. every candidate adjacent to u and to another candidate has degree
       exactly m - 1.

    A pivoted tree admits no b-colouring with m colours (u soaks up the one
    colour the tight candidates around it would all need to see), so its
    b-chromatic number drops to m - 1.
    """
    if not is_tree(t):
        raise NotATreeError("pivot detection is defined for trees only")
    m = m_degree(t)
    deg = t.degrees()
    candidates = [v for v in range(t.n) if deg[v] >= m - 1]
    if len(candidates) != m:
        return PivotReport(False, None, candidates, m)
    cand_set = set(candidates)
    for u in range(t.n):
        if u in cand_set:
            continue
        nu = t.nbr_set(u)
        ok = True
        for v in candidates:
            if v in nu:
                # adjacent to u and to another candidate => must be tight
                if deg[v] != m - 1 and any(w in cand_set for w in t.neighbors(v)):
                    ok = False
                    break
                continue
            if not any(w in cand_set and w in nu for w in t.neighbors(v)):
                ok = False
                break
        if ok:
            return PivotReport(True, u, candidates, m)
    return PivotReport(False, None, candidates, m)


def b_chromatic_tree(t: Graph) -> int:
    """b-chromatic number of a tree: the degree bound, minus one if pivoted."""
    report = pivoted_tree_report(t)
    return report.m_degree - 1 if report.pivoted else report.m_degree

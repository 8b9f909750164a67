"""Maximum bipartite matching (Hopcroft-Karp).

Small, dependency-free and deterministic: adjacency lists are scanned in the
order given, so equal-size matchings always come out the same way.  Sides are
addressed as ``0 .. nleft-1`` and ``0 .. nright-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import INF

#: Marker for an unmatched endpoint.
UNMATCHED = -1


@dataclass
class Matching:
    size: int
    #: for each left vertex, its partner on the right (or UNMATCHED)
    pair_left: list[int]
    #: for each right vertex, its partner on the left (or UNMATCHED)
    pair_right: list[int]


def max_bipartite_matching(nleft: int, nright: int, adj: Sequence[Sequence[int]]) -> Matching:
    """Maximum matching of the bipartite graph ``adj[left] = rights``.

    Runs the usual phase structure: BFS builds alternating-path layers from
    free left vertices, then DFS augments along vertex-disjoint shortest
    paths until no augmenting path remains.
    """
    pair_l = [UNMATCHED] * nleft
    pair_r = [UNMATCHED] * nright
    dist = [INF] * nleft

    def bfs() -> bool:
        queue = []
        for u in range(nleft):
            if pair_l[u] == UNMATCHED:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = INF
        found = False
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for v in adj[u]:
                w = pair_r[v]
                if w == UNMATCHED:
                    found = True
                elif dist[w] is INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adj[u]:
            w = pair_r[v]
            if w == UNMATCHED or (dist[w] == dist[u] + 1 and dfs(w)):
                pair_l[u] = v
                pair_r[v] = u
                return True
        dist[u] = INF
        return False

    size = 0
    while bfs():
        for u in range(nleft):
            if pair_l[u] == UNMATCHED and dfs(u):
                size += 1
    return Matching(size, pair_l, pair_r)

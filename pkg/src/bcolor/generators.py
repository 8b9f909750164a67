"""Deterministic instance generators for the CLI and the test harness.

Every generator is a pure function of its parameters and ``seed``; the same
call always yields the same graph, so any instance appearing in a report can
be regenerated from its parameter line.  Five families are covered:

* uniform random attachment trees,
* the parameterized pivoted-tree family (degree bound ``k`` but only
  ``k - 1`` colours achievable, until one extra leaf restores ``k``),
* random forests closed up with a prescribed number of cycle edges,
* complete multipartite graphs with a planted co-cluster modulator,
* star clusters built around a planted b-colouring, witness included.
"""

from __future__ import annotations

import random
from typing import Dict, Optional

from .graph import Graph


def random_tree(n: int, seed: int = 0) -> Graph:
    """Random attachment tree: vertex ``v`` joins a uniform earlier vertex."""
    if n < 1:
        raise ValueError("a tree needs at least one vertex")
    rng = random.Random(seed)
    return Graph(n, [(rng.randrange(v), v) for v in range(1, n)])


def _random_composition(rng: random.Random, total: int, parts: int) -> list[int]:
    """Split ``total`` into ``parts`` positive summands, uniformly over cuts."""
    cuts = sorted(rng.sample(range(1, total), parts - 1)) if parts > 1 else []
    bounds = [0] + cuts + [total]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def pivoted_tree(k: int, *, unpivot: bool = False, decorate: int = 0, seed: int = 0) -> Graph:
    """Tree with degree bound ``k`` whose b-chromatic number is ``k - 1``.

    The skeleton is rigid: a low-degree hub joined to two gate vertices of
    degree exactly ``k - 1``, the remaining ``k - 2`` high-degree vertices
    split across the gates, and leaves padding every high-degree vertex up to
    degree ``k - 1``.  The hub blocks any b-colouring with ``k`` colours by
    starving the gates of a free colour.  ``unpivot`` hangs one extra leaf on
    the first gate, which lifts the obstruction and restores ``k``.

    ``decorate`` grows up to that many second-level leaves under distinct
    padding leaves (seeded choice of spots); this varies the tree without
    touching any of the degrees the obstruction argument relies on.
    """
    if k < 4:
        raise ValueError("the pivoted family needs a degree bound of at least 4")
    if decorate < 0:
        raise ValueError("decoration count must be non-negative")
    edges = [(0, 1), (0, 2)]
    outers = list(range(3, k + 1))
    split = (len(outers) + 1) // 2
    per_gate = {1: outers[:split], 2: outers[split:]}
    for gate, hosted in per_gate.items():
        edges.extend((gate, c) for c in hosted)
    nxt = k + 1
    pads: list[int] = []
    for gate, hosted in per_gate.items():
        for _ in range((k - 1) - 1 - len(hosted)):
            edges.append((gate, nxt))
            pads.append(nxt)
            nxt += 1
    for c in outers:
        for _ in range(k - 2):
            edges.append((c, nxt))
            pads.append(nxt)
            nxt += 1
    if unpivot:
        edges.append((1, nxt))
        nxt += 1
    if decorate:
        rng = random.Random(seed)
        for pad in rng.sample(pads, min(decorate, len(pads))):
            edges.append((pad, nxt))
            nxt += 1
    return Graph(nxt, edges)


def forest_plus_edges(n: int, extra: int, seed: int = 0) -> Graph:
    """Random forest with exactly ``extra`` additional cycle-closing edges.

    The extra edges join non-adjacent pairs inside a single tree component,
    so each contributes one independent cycle and the feedback edge number of
    the result is exactly ``extra``.  Raises ``ValueError`` when ``n`` is too
    small to host that many cycles.
    """
    if n < 1:
        raise ValueError("graph needs at least one vertex")
    if extra < 0:
        raise ValueError("extra edge count must be non-negative")
    if extra > n * (n - 1) // 2 - (n - 1):
        raise ValueError(f"{n} vertices cannot host {extra} independent cycles")
    rng = random.Random(seed)

    def build(parts: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
        sizes = _random_composition(rng, n, parts)
        tree_edges: list[tuple[int, int]] = []
        pool: list[tuple[int, int]] = []
        offset = 0
        for size in sizes:
            tree_edges.extend((rng.randrange(offset, v), v) for v in range(offset + 1, offset + size))
            present = {(min(e), max(e)) for e in tree_edges}
            pool.extend(
                (u, v)
                for u in range(offset, offset + size)
                for v in range(u + 1, offset + size)
                if (u, v) not in present
            )
            offset += size
        return tree_edges, pool

    tree_edges, pool = build(rng.randint(1, min(3, n)))
    if len(pool) < extra:
        # a fine-grained split starved the pool; one component always suffices
        tree_edges, pool = build(1)
    return Graph(n, tree_edges + rng.sample(pool, extra))


def multipartite_with_modulator(n: int, parts: int, modulator: int, seed: int = 0) -> Graph:
    """Complete multipartite graph plus ``modulator`` planted extra vertices.

    The first ``n - modulator`` vertices form ``parts`` independent classes
    with all cross-class edges present; the final ``modulator`` vertices get
    coin-flip edges everywhere.  Deleting the planted vertices provably
    leaves a complement-of-clusters graph, so the smallest modulator is never
    larger than the planted one.
    """
    if parts < 1:
        raise ValueError("need at least one class")
    if modulator < 0:
        raise ValueError("modulator size must be non-negative")
    if n - modulator < parts:
        raise ValueError("not enough vertices for the requested classes")
    rng = random.Random(seed)
    sizes = _random_composition(rng, n - modulator, parts)
    part_of: list[int] = []
    for idx, size in enumerate(sizes):
        part_of.extend([idx] * size)
    edges = [
        (u, v)
        for u in range(len(part_of))
        for v in range(u + 1, len(part_of))
        if part_of[u] != part_of[v]
    ]
    for w in range(n - modulator, n):
        edges.extend((u, w) for u in range(w) if rng.random() < 0.5)
    return Graph(n, edges)


def planted_stars(k: int, extra: Optional[int] = None, seed: int = 0) -> tuple[Graph, Dict[int, int]]:
    """Graph with a planted b-colouring on ``k`` colours, witness included.

    Vertices ``0 .. k-1`` are star centres, centre ``i`` coloured ``i + 1``
    and joined to ``k - 1`` private leaves wearing the other colours, so
    every colour class holds a centre adjacent to all the rest.  ``extra``
    cross edges (seeded random count when omitted) are then added between
    differently-coloured vertices, which can only enrich neighbourhoods:
    the planted colouring stays a b-colouring throughout.
    """
    if k < 1:
        raise ValueError("colour count must be positive")
    rng = random.Random(seed)
    colors: Dict[int, int] = {i: i + 1 for i in range(k)}
    edges = []
    nxt = k
    for center in range(k):
        for c in range(1, k + 1):
            if c == colors[center]:
                continue
            colors[nxt] = c
            edges.append((center, nxt))
            nxt += 1
    present = {(min(e), max(e)) for e in edges}
    pool = [
        (u, v)
        for u in range(nxt)
        for v in range(u + 1, nxt)
        if colors[u] != colors[v] and (u, v) not in present
    ]
    if extra is None:
        extra = rng.randint(0, min(len(pool), k * (k - 1)))
    elif extra > len(pool):
        raise ValueError(f"only {len(pool)} cross pairs available, not {extra}")
    edges.extend(rng.sample(pool, extra))
    return Graph(nxt, edges), colors

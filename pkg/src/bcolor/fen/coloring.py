"""Growing a feasible realization into a complete b-coloring.

Two stages.  The first colors exactly the neighbourhoods of the promised
b-vertices: seats are processed outward from the cycles, and for each seat
a bipartite matching decides which uncolored neighbour supplies which of
the seat's still-missing colors.  Occasionally one seat must jump the
queue -- either a *crowded* seat whose neighbourhood contains almost every
other seat, or the seat beside a *squeezed* vertex that can already see
nearly all colors through its ties; resolving those last would strand an
uncolored vertex with every color forbidden.  The second stage colors the
rest of the graph greedily, again outward from the cycles, after first
handling the one vertex the safety bookkeeping flagged as over-passed.
Feasibility bounds how many colors any remaining vertex can see, so a free
color always exists; every shortfall here is a bug upstream and raises
:class:`~bcolor.errors.InternalInvariantError` with a replayable dump.
"""

from __future__ import annotations

from typing import Dict

from ..coloring import verify_b_coloring
from ..errors import InternalInvariantError
from ..graph import Graph
from ..matching import UNMATCHED, max_bipartite_matching
from .core import FenCore
from .profiles import redundancy
from .realization import Realization, reproducer


def _fail(check: str, re: Realization, g: Graph, k: int, **info):
    raise InternalInvariantError(check, **info, **reproducer(re, g, k))


def _tied_colors(g: Graph, full: Dict[int, int], k: int, v: int, seats) -> set:
    """Colors unavailable to ``v``: on a neighbour, or on anything reachable
    through a tight colored seat next to ``v`` (coloring ``v`` with such a
    color would spend the tight seat's last missing color twice)."""
    seen = {full[w] for w in g.nbr_set(v) if w in full}
    for x in sorted(g.nbr_set(v) & seats):
        if redundancy(g, full, x, k) != 0:
            continue
        seen.update(full[w] for w in g.nbr_set(x) if w in full)
    return seen


def _resolve_seat(
    full: Dict[int, int], u: int, seats, re: Realization, g: Graph, k: int
) -> None:
    """Color every open neighbour of the seat ``u`` (mutates ``full``).

    The seat's missing colors are matched against the open neighbours that
    may still take them; leftovers get their lowest workable color.  On
    return ``u`` sees all ``k`` colors -- anything less is raised."""
    open_nbrs = [v for v in sorted(g.neighbors(u)) if v not in full]
    palette = set(range(1, k + 1))
    allowed = {
        v: palette - _tied_colors(g, full, k, v, seats) for v in open_nbrs
    }
    held = {full[w] for w in g.closed(u) if w in full}
    missing = sorted(palette - held)
    slots = [
        [j for j, c in enumerate(missing) if c in allowed[v]]
        for v in open_nbrs
    ]
    mate = max_bipartite_matching(len(open_nbrs), len(missing), slots)
    for i, v in enumerate(open_nbrs):
        j = mate.pair_left[i]
        if j != UNMATCHED:
            full[v] = missing[j]
            continue
        if not allowed[v]:
            _fail("open-neighbour-out-of-colors", re, g, k, seat=u, vertex=v)
        full[v] = min(allowed[v])
    spectrum = {full[w] for w in g.closed(u) if w in full}
    if not palette <= spectrum:
        _fail(
            "resolved-seat-missing-colors",
            re,
            g,
            k,
            seat=u,
            absent=sorted(palette - spectrum),
        )


def _queue_jumper(full, seats, core: FenCore, re, g: Graph, k: int):
    """The seat that must be resolved before all others, if any.

    Either the unique seat with almost every other seat beside it, or --
    when no such seat exists -- the lowest seat beside the unique uncolored
    vertex already restricted by nearly ``k`` colored vertices (counting
    both its neighbours and anything one seat-hop away)."""
    threshold = k - core.size - 8
    crowded = [u for u in sorted(seats) if len(g.nbr_set(u) & seats) >= threshold]
    if len(crowded) > 1:
        _fail("crowded-seat-not-unique", re, g, k, seats=crowded)
    if crowded:
        return crowded[0]
    colored = set(full)
    squeezed = []
    for v in range(g.n):
        if v in colored:
            continue
        limiters = g.nbr_set(v) & colored
        for x in g.nbr_set(v) & seats:
            limiters |= g.nbr_set(x) & colored
        if len(limiters) >= k - 3:
            squeezed.append(v)
    if len(squeezed) > 1:
        _fail("squeezed-vertex-not-unique", re, g, k, vertices=squeezed)
    if not squeezed:
        return None
    anchors = sorted(g.nbr_set(squeezed[0]) & seats)
    if not anchors:
        _fail("squeezed-vertex-without-seat", re, g, k, vertex=squeezed[0])
    return anchors[0]


def partial_b_coloring(
    re: Realization, core: FenCore, g: Graph, k: int
) -> Dict[int, int]:
    """Extend a feasible realization over the promised neighbourhoods.

    Returns a proper partial coloring whose domain is exactly the colored
    backbone-plus-seats set together with every seat's neighbourhood, in
    which each seat is a finished b-vertex.  Input must have come out of
    the repair stage (flags set); everything the feasibility arguments
    promise is re-checked and failures raise, they never pass silently.
    """
    if not (re.pivot_free and re.block_free and re.damage_free):
        _fail(
            "partial-coloring-needs-feasible-input",
            re,
            g,
            k,
            flags=[re.damage_free, re.pivot_free, re.block_free],
        )
    full = re.coloring()
    base = set(full)
    seats = re.seats
    order = sorted(seats, key=lambda u: (core.dist[u], u))
    first = _queue_jumper(full, seats, core, re, g, k)
    if first is not None:
        order.remove(first)
        order.insert(0, first)
    for u in order:
        _resolve_seat(full, u, seats, re, g, k)

    want = base | {v for u in seats for v in g.nbr_set(u)}
    if set(full) != want:
        _fail(
            "partial-domain-mismatch",
            re,
            g,
            k,
            unexpected=sorted(set(full) - want),
            unreached=sorted(want - set(full)),
        )
    for a, b in g.edges():
        if a in full and full.get(b) == full[a]:
            _fail("partial-coloring-improper", re, g, k, edge=[a, b])
    return full


def finish_coloring(
    re: Realization, partial: Dict[int, int], core: FenCore, g: Graph, k: int
) -> Dict[int, int]:
    """Complete a partial coloring to a verified b-coloring.

    The one possibly over-passed vertex recorded on the realization is
    colored first (it is the only vertex whose free color the safety
    arguments do not directly bound); everything else proceeds greedily by
    distance from the cycles, lowest free color each time.  The result is
    re-verified from scratch before being returned.
    """
    full = dict(partial)
    special = re.almost_safe_witness
    if special is not None and special not in full:
        c = _lowest_free(g, full, special, k)
        if c is None:
            _fail("special-vertex-out-of-colors", re, g, k, vertex=special)
        full[special] = c
    rest = sorted(
        (v for v in range(g.n) if v not in full),
        key=lambda v: (core.dist[v], v),
    )
    for v in rest:
        c = _lowest_free(g, full, v, k)
        if c is None:
            _fail("finishing-out-of-colors", re, g, k, vertex=v)
        full[v] = c
    report = verify_b_coloring(g, full, k)
    if not report.is_b_coloring:
        _fail(
            "finished-coloring-rejected",
            re,
            g,
            k,
            problems=report.describe_lines(),
        )
    return full


def _lowest_free(g: Graph, full: Dict[int, int], v: int, k: int):
    used = {full[w] for w in g.nbr_set(v) if w in full}
    for c in range(1, k + 1):
        if c not in used:
            return c
    return None

"""Seating one future b-vertex per color above the promised range.

A *realization* extends a profile: every color ``b+1 .. k`` gets a concrete
candidate (its *seat*) that is meant to end up as the color's b-vertex.
The constructor follows the color plan and keeps the high colors as close
to the cycles as possible; the repair stages then reshuffle seats until
the realization is *feasible*.  This module holds the constructor, literal
re-checkers for every invariant the repair stages assume, and the two
detectors that trigger repairs:

* a *pivot* -- an uncolored vertex that already sees all ``k`` colors,
  directly or through tight common neighbours, so no proper extension
  could ever color it;
* a *blocked* seat -- a promised b-vertex one of whose missing colors can
  no longer be placed on any uncolored neighbour.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from ..errors import InternalInvariantError
from ..graph import Graph
from ..matching import UNMATCHED, max_bipartite_matching
from .core import FenCore
from .profiles import (
    Plan,
    PivotWitness,
    Profile,
    _checked_plan,
    is_described_pivot,
    links_of,
    redundancy,
    tight_links,
)


@dataclass
class Realization:
    """Seats for the colors the backbone does not own, plus status flags.

    ``choices[c]`` is the candidate seated for color ``c``; the backbone
    coloring extended by the seats is the working partial coloring
    (:meth:`coloring`).  The flags cache what the constructor or the last
    repair step established -- each one is recomputable from scratch
    (see :func:`realization_defects`):

    * ``damage_free``: no seat doubles as the tie between a far seat and
      a backbone vertex of the same color;
    * ``safety_level`` / ``almost_safe_witness``: every unseated candidate
      is passed over by at most ``safety_level`` farther seats, except
      possibly the witness vertex;
    * ``pivot_free`` / ``block_free``: detector outcomes (None = not run).
    """

    choices: dict[int, int]
    plan: Plan
    profile: Profile
    core: FenCore
    damage_free: bool = True
    safety_level: int = 0
    almost_safe_witness: Optional[int] = None
    pivot_free: Optional[bool] = None
    block_free: Optional[bool] = None

    @property
    def chosen(self) -> frozenset:
        """The seated vertices."""
        return frozenset(self.choices.values())

    @property
    def seats(self) -> frozenset:
        """All vertices promised to become b-vertices: seated plus promised."""
        return self.chosen | frozenset(self.profile.b_targets)

    @property
    def colored(self) -> frozenset:
        """Domain of the working coloring: backbone plus seated."""
        return self.chosen | frozenset(self.profile.colors)

    def coloring(self) -> dict[int, int]:
        """The working partial coloring (backbone colors plus seats)."""
        full = dict(self.profile.colors)
        for c, v in self.choices.items():
            full[v] = c
        return full

    def describe(self) -> str:
        flags = "damage-free" if self.damage_free else "DAMAGED"
        almost = (
            "" if self.almost_safe_witness is None
            else f" except {self.almost_safe_witness}"
        )
        return (
            f"{len(self.choices)} seats, {flags}, "
            f"{self.safety_level}-safe{almost}"
        )


def reproducer(re: Realization, g: Graph, k: int) -> dict:
    """Machine-readable replay context for invariant failures."""
    return {
        "edges": sorted(list(e) for e in g.edges()),
        "k": k,
        "backbone_colors": {str(v): c for v, c in sorted(re.profile.colors.items())},
        "promised": list(re.profile.b_targets),
        "plan": ["*" if t is None else t for t in re.plan.assigned],
        "choices": {str(c): v for c, v in sorted(re.choices.items())},
    }


# -- constructing a fresh realization ------------------------------------


def build_realization(
    plan: Plan, profile: Profile, core: FenCore, g: Graph, k: int
) -> Realization:
    """Seat every color of ``[b+1, k]`` so that the plan is realized.

    Plan targets are honoured color by color: a backbone target gets its
    lowest free candidate neighbour, far marks are covered by a maximum
    matching that avoids seating a vertex tied to the color's own class,
    and the critical color (when any) gets a reserved far candidate whose
    tie vertex is withheld from seating altogether.  The leftover colors
    ``p+1 .. k`` take the free candidates nearest the extended backbone.

    The result is damage-free and, unless the plan is critical, no
    unseated candidate is ever passed over by a farther seat.
    """
    b = len(profile.b_targets)
    p = core.size
    colors = profile.colors
    kplus = profile.candidates_plus

    def fail(check: str, **ctx):
        ctx.setdefault("edges", sorted(list(e) for e in g.edges()))
        ctx.setdefault("k", k)
        ctx.setdefault("plan", ["*" if t is None else t for t in plan.assigned])
        raise InternalInvariantError(check, **ctx)

    if p > k:
        fail("color-budget-below-backbone", backbone=p)

    crit_seat = crit_tie = None
    if plan.critical:
        anchor = plan.anchor
        linked = [
            v
            for v in profile.far_candidates
            if tight_links(g, colors, k, kplus, v, anchor)
        ]
        if not linked:
            fail("critical-anchor-unlinked", anchor=anchor)
        crit_seat = linked[0]
        ties = tight_links(g, colors, k, kplus, crit_seat, anchor)
        if len(ties) != 1:
            fail("critical-tie-not-unique", ties=ties)
        crit_tie = ties[0]

    usable = [v for v in profile.candidates if v != crit_tie]
    usable_set = set(usable)

    # Far colors are seated along a maximum matching: color c may take v
    # only if no tie binds v to a backbone vertex of color c.  The critical
    # seat stays out of the pool so the seats stay pairwise distinct.
    far_pool = [v for v in profile.far_candidates if v != crit_seat]
    match_colors = [c for c in plan.far_colors() if c != plan.critical_color]
    adj = []
    for c in match_colors:
        owners = profile.color_class(c)
        adj.append(
            [
                j
                for j, v in enumerate(far_pool)
                if not any(
                    tight_links(g, colors, k, kplus, v, w) for w in owners
                )
            ]
        )
    mu = max_bipartite_matching(len(match_colors), len(far_pool), adj)
    matched = {}
    for i, c in enumerate(match_colors):
        j = mu.pair_left[i]
        if j == UNMATCHED:
            fail("far-color-unmatched", color=c)
        matched[c] = far_pool[j]

    choices: dict[int, int] = {}
    taken: set = set()
    for c in range(b + 1, p + 1):
        target = plan.target(c)
        if target is not None:
            pick = next(
                (
                    v
                    for v in sorted(g.nbr_set(target) & usable_set)
                    if v not in taken
                ),
                None,
            )
            if pick is None:
                fail("no-free-neighbour-seat", color=c, target=target)
        elif c == plan.critical_color:
            pick = crit_seat
        else:
            pick = matched[c]
        choices[c] = pick
        taken.add(pick)

    order = sorted(usable, key=lambda v: (core.dist[v], v))
    cursor = iter(order)
    for c in range(p + 1, k + 1):
        pick = next((v for v in cursor if v not in taken), None)
        if pick is None:
            fail("candidate-pool-exhausted", color=c)
        choices[c] = pick
        taken.add(pick)

    re = Realization(
        choices=choices,
        plan=plan,
        profile=profile,
        core=core,
        damage_free=True,
        safety_level=0,
        almost_safe_witness=crit_tie,
    )
    defects = realization_defects(g, re, k)
    if defects:
        fail("fresh-realization-defective", defects=defects, **reproducer(re, g, k))
    return re


# -- literal invariant re-checkers ---------------------------------------


def damaged_vertices(g: Graph, re: Realization, k: int) -> list:
    """Vertices serving as the tie between a far seat and a same-colored
    backbone vertex.  Such a vertex can never become a b-vertex once the
    seat keeps its color, so no seat may be damaged."""
    colors = re.profile.colors
    kplus = re.profile.candidates_plus
    far = set(re.profile.far_candidates)
    out = set()
    b = len(re.profile.b_targets)
    for c in range(b + 1, re.core.size + 1):
        seat = re.choices.get(c)
        if seat is None or seat not in far:
            continue
        for v in re.profile.color_class(c):
            out.update(tight_links(g, colors, k, kplus, v, seat))
    return sorted(out)


def passed_over(re: Realization, v: int, p: int, k: int) -> int:
    """How many high-color seats sit strictly farther from the extended
    backbone than ``v`` does."""
    dist = re.core.dist
    return sum(
        1
        for c in range(p + 1, k + 1)
        if c in re.choices and dist[v] < dist[re.choices[c]]
    )


def unsafe_vertices(re: Realization, k: int, slack: int) -> list:
    """Unseated candidates passed over by more than ``slack`` farther
    high-color seats."""
    p = re.core.size
    seats = re.seats
    return [
        v
        for v in re.profile.candidates
        if v not in seats and passed_over(re, v, p, k) > slack
    ]


def realization_defects(g: Graph, re: Realization, k: int) -> list:
    """Every way ``re`` could violate its contract, as human-readable
    strings (empty = healthy).

    Checks, in order: seat structure (one seat per color, injective, drawn
    from the candidates), plan agreement (far marks seat far candidates,
    backbone targets seat their neighbours -- both directions), properness
    of the working coloring, the promise that every seat keeps non-negative
    slack, and finally that the stored flags match a from-scratch recount.
    """
    out = []
    profile, plan, core = re.profile, re.plan, re.core
    b = len(profile.b_targets)
    p = core.size
    want = set(range(b + 1, k + 1))
    if set(re.choices) != want:
        out.append(f"seated colors {sorted(re.choices)} != [{b + 1}, {k}]")
        return out
    if len(re.chosen) != len(re.choices):
        out.append("seats are not pairwise distinct")
    kset = set(profile.candidates)
    for c in sorted(re.choices):
        if re.choices[c] not in kset:
            out.append(f"seat {re.choices[c]} (color {c}) is not a candidate")
    far = set(profile.far_candidates)
    for c in plan.colors:
        seat = re.choices[c]
        target = plan.target(c)
        if (target is None) != (seat in far):
            out.append(f"color {c}: far mark and far seat disagree ({seat})")
        for u in core.backbone:
            if (target == u) != g.has_edge(seat, u):
                out.append(
                    f"color {c}: target {target} but seat {seat} "
                    f"{'misses' if target == u else 'touches'} {u}"
                )
    full = re.coloring()
    for v in sorted(re.chosen):
        for w in g.nbr_set(v):
            cw = full.get(w)
            if cw is not None and cw == full[v] and w != v:
                out.append(f"seats give neighbours {v},{w} the same color {cw}")
    for v in sorted(re.seats):
        if redundancy(g, full, v, k) < 0:
            out.append(f"seat {v} lost its slack under the working coloring")
    damaged = [v for v in damaged_vertices(g, re, k) if v in re.chosen]
    if bool(damaged) == re.damage_free:
        out.append(
            f"damage flag {re.damage_free} but damaged seats {damaged}"
        )
    bad = unsafe_vertices(re, k, re.safety_level)
    witness = re.almost_safe_witness
    for v in bad:
        if v != witness:
            out.append(
                f"{v} passed over by {passed_over(re, v, p, k)} seats "
                f"(allowed {re.safety_level}, witness {witness})"
            )
            continue
        near = g.nbr_set(v)
        seat_halo = set()
        for s in re.seats:
            seat_halo |= g.nbr_set(s)
        if not (near & re.seats) and len(near & seat_halo) > p + 2:
            out.append(f"witness {v} is too entangled to stay unsafe")
    return out


def derive_plan(g: Graph, re: Realization, k: int) -> Plan:
    """The plan the current seats realize, re-validated from scratch.

    Every repair step proves its output still realizes *some* valid plan;
    this recovers it (far seats mean far marks, near seats mean their
    unique backbone neighbour) and re-runs the plan validator.
    """
    profile, core = re.profile, re.core
    far = set(profile.far_candidates)
    b = len(profile.b_targets)
    assigned = []
    for c in range(b + 1, core.size + 1):
        seat = re.choices[c]
        if seat in far:
            assigned.append(None)
            continue
        owners = sorted(g.nbr_set(seat) & core.backbone_set)
        if len(owners) != 1:
            raise InternalInvariantError(
                "seat-with-ambiguous-owner",
                seat=seat,
                owners=owners,
                **reproducer(re, g, k),
            )
        assigned.append(owners[0])
    plan = _checked_plan(tuple(assigned), profile, core, g, k)
    if plan is None:
        raise InternalInvariantError(
            "realized-plan-invalid",
            assigned=["*" if t is None else t for t in assigned],
            **reproducer(re, g, k),
        )
    return plan


# -- pivot detection -----------------------------------------------------


def maximal_pivot_region(
    g: Graph,
    u: int,
    ground,
    coloring: Mapping[int, int],
    candidates_plus,
    k: int,
):
    """Largest subset of ``ground`` that ``u`` pivots, as a set.

    Start from everything reachable (neighbours of ``u``, plus vertices
    tied to ``u`` through a tight candidate inside the ground set), then
    defensively delete vertices whose certifying condition fails until
    nothing changes.  On a healthy core the deletions never fire: short
    cycles all live inside the backbone, so each non-neighbour has exactly
    one possible tie and the start set is already consistent.
    """
    kplus = set(candidates_plus)
    gset = set(ground)
    gset.discard(u)
    near = g.nbr_set(u) & gset

    def ties(v):
        return g.nbr_set(u) & g.nbr_set(v)

    def qualifies(w):
        return w in kplus and redundancy(g, coloring, w, k) == 0

    region = set(near)
    for v in gset - near:
        if any(w in gset and qualifies(w) for w in ties(v)):
            region.add(v)
    while True:
        bad = {
            w
            for w in region & near
            if (g.nbr_set(w) & region) and not qualifies(w)
        }
        if bad:
            region -= bad
            continue
        lost = {
            v
            for v in region - near
            if not any(w in region and qualifies(w) for w in ties(v))
        }
        if lost:
            region -= lost
            continue
        return region


def find_pivot(re: Realization, g: Graph, k: int) -> Optional[PivotWitness]:
    """Lowest uncolored vertex that pivots a full-spectrum region, if any.

    A hit means the realization cannot survive: the vertex sees all ``k``
    colors through its neighbourhood and tight ties, so the repair cascade
    must reshuffle seats first.  The witness region is the maximal one.
    """
    colored = re.colored
    full = re.coloring()
    kplus = re.profile.candidates_plus
    spectrum = set(range(1, k + 1))
    for u in range(g.n):
        if u in colored:
            continue
        region = maximal_pivot_region(g, u, colored, full, kplus, k)
        if {full[v] for v in region} != spectrum:
            continue
        if not is_described_pivot(g, u, region, full, kplus, k):
            raise InternalInvariantError(
                "pivot-region-not-closed",
                u=u,
                region=sorted(region),
                **reproducer(re, g, k),
            )
        return PivotWitness(
            u=u,
            pivoted=tuple(sorted(region)),
            links=links_of(g, u, region),
            maximal=True,
        )
    return None


# -- block detection -----------------------------------------------------


def block_check(re: Realization, g: Graph, k: int):
    """Lowest (seat, color) pair where the color can no longer be added
    to the seat's neighbourhood, or None.

    A seat is blocked by a missing color when every uncolored neighbour
    either touches that color directly or is tied to it through a tight
    seat.  A seat whose neighbours are all colored is blocked by any
    missing color outright.
    """
    full = re.coloring()
    colored = re.colored
    seats = re.seats
    kplus = set(re.profile.candidates_plus)

    def tied(w, v):
        return any(
            x in seats and x in kplus and redundancy(g, full, x, k) == 0
            for x in g.nbr_set(w) & g.nbr_set(v)
        )

    carriers: dict[int, list] = {}
    for v, c in full.items():
        carriers.setdefault(c, []).append(v)
    for u in sorted(seats):
        seen = {full[w] for w in g.nbr_set(u) & colored}
        seen.add(full[u])
        uncolored = sorted(g.nbr_set(u) - colored)
        for c in range(1, k + 1):
            if c in seen:
                continue
            if all(
                any(
                    g.has_edge(w, v) or tied(w, v)
                    for w in carriers.get(c, ())
                )
                for v in uncolored
            ):
                return (u, c)
    return None

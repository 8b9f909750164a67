"""Backbone colorings and their bookkeeping.

Once the backbone is fixed, the solver tries every way it could look inside
a finished coloring: a proper coloring of the backbone together with the
subset of backbone vertices promised to end up as b-vertices.  Each such
*profile* induces the candidate pools that all later stages draw from, plus
three exact rejection tests (the "failing" checks): a failing profile
describes no b-coloring at all, so the solver may skip it, and a
non-failing one is guaranteed to work out.

Everything here is parameterized by the target color count ``k``; colors
are 1-based, the backbone uses colors ``1..p`` (``p`` = backbone size) and
the promised vertices own colors ``1..b``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional

from ..graph import Graph
from .core import FenCore


def redundancy(g: Graph, coloring: Mapping[int, int], v: int, k: int) -> int:
    """Slack of ``v`` towards seeing all ``k`` colors on its closed
    neighbourhood: uncolored closed neighbours plus distinct colors seen,
    minus ``k``.

    Non-negative slack makes ``v`` a *candidate* (it may still become a
    b-vertex when the coloring is extended); zero slack makes it *tight*
    (every uncolored neighbour must then receive a fresh color).
    """
    uncolored = 0
    seen = set()
    for w in g.closed(v):
        c = coloring.get(w)
        if c is None:
            uncolored += 1
        else:
            seen.add(c)
    return uncolored + len(seen) - k


@dataclass
class Profile:
    """A proper backbone coloring plus the promised b-vertices.

    ``colors`` maps each backbone vertex to its color; ``b_targets`` are the
    backbone vertices promised to become b-vertices, renumbered so that they
    hold colors ``1..len(b_targets)``.  Derived pools: ``candidates`` are
    the non-backbone vertices with non-negative slack, ``candidates_plus``
    adds the promised vertices, ``far_candidates`` are candidates without a
    backbone neighbour.
    """

    colors: dict[int, int]
    b_targets: tuple[int, ...]
    candidates: tuple[int, ...]
    candidates_plus: tuple[int, ...]
    far_candidates: tuple[int, ...]

    def color_class(self, c: int) -> list[int]:
        """Backbone vertices carrying color ``c``."""
        return sorted(v for v, d in self.colors.items() if d == c)

    def describe(self) -> str:
        return (
            f"{len(self.colors)} backbone vertices, "
            f"{len(self.b_targets)} promised, "
            f"{len(self.candidates)} outside candidates"
        )


def build_profile(
    g: Graph, core: FenCore, k: int, colors: Mapping[int, int], b_targets
) -> Profile:
    """Assemble a :class:`Profile`, computing the candidate pools."""
    bset = core.backbone_set
    cand = tuple(
        v
        for v in range(g.n)
        if v not in bset and redundancy(g, colors, v, k) >= 0
    )
    near: set[int] = set()
    for s in bset:
        near |= g.nbr_set(s)
    return Profile(
        colors=dict(colors),
        b_targets=tuple(sorted(b_targets)),
        candidates=cand,
        candidates_plus=tuple(sorted(set(cand) | set(b_targets))),
        far_candidates=tuple(v for v in cand if v not in near),
    )


def _canonical_colorings(g: Graph, backbone: list[int]) -> Iterator[dict[int, int]]:
    """Proper colorings of the backbone, one per color-permutation class.

    Scanning the backbone in ascending vertex order, every newly introduced
    color is the smallest unused positive integer.
    """
    assigned: dict[int, int] = {}

    def rec(i: int, used: int) -> Iterator[dict[int, int]]:
        if i == len(backbone):
            yield dict(assigned)
            return
        v = backbone[i]
        taken = {assigned[w] for w in g.neighbors(v) if w in assigned}
        for c in range(1, used + 2):
            if c in taken:
                continue
            assigned[v] = c
            yield from rec(i + 1, max(used, c))
            del assigned[v]

    yield from rec(0, 0)


def _targets_first(
    base: Mapping[int, int], targets, backbone: list[int]
) -> dict[int, int]:
    """Renumber colors so the promised vertices hold ``1..b`` (in vertex
    order) and the remaining used colors follow in first-use order."""
    perm: dict[int, int] = {}
    for v in sorted(targets):
        perm[base[v]] = len(perm) + 1
    for v in backbone:
        if base[v] not in perm:
            perm[base[v]] = len(perm) + 1
    return {v: perm[base[v]] for v in backbone}


def enumerate_profiles(core: FenCore, g: Graph, k: int) -> Iterator[Profile]:
    """All profiles of the backbone, one per recoloring class.

    For each canonical proper coloring, every subset of slack-positive
    backbone vertices with pairwise distinct colors becomes a choice of
    promised b-vertices; the colors are then renumbered targets-first.  An
    empty backbone yields exactly one (entirely empty) profile.
    """
    backbone = list(core.backbone)
    for base in _canonical_colorings(g, backbone):
        eligible = [v for v in backbone if redundancy(g, base, v, k) >= 0]
        for r in range(len(eligible) + 1):
            for targets in itertools.combinations(eligible, r):
                if len({base[v] for v in targets}) < len(targets):
                    continue
                colors = _targets_first(base, targets, backbone)
                yield build_profile(g, core, k, colors, targets)


# -- links and pivots ----------------------------------------------------


def tight_links(
    g: Graph, coloring: Mapping[int, int], k: int, candidates_plus, u: int, v: int
) -> list[int]:
    """Vertices tying ``u`` and ``v`` together: tight candidates adjacent to
    both.  Such a vertex cannot become a b-vertex while ``u`` and ``v``
    share a color, which is what most of the pivot machinery exploits."""
    if u == v:
        raise ValueError("links are defined for distinct vertices")
    kp = set(candidates_plus)
    return [
        w
        for w in sorted(g.nbr_set(u) & g.nbr_set(v))
        if w in kp and redundancy(g, coloring, w, k) == 0
    ]


def are_linked(
    g: Graph, coloring: Mapping[int, int], k: int, candidates_plus, u: int, v: int
) -> bool:
    return bool(tight_links(g, coloring, k, candidates_plus, u, v))


def links_of(g: Graph, u: int, region) -> tuple[int, ...]:
    """The region vertices adjacent to ``u`` that also have a neighbour in
    the region (the *links* of the pivot candidate ``u``)."""
    rset = set(region)
    return tuple(
        sorted(w for w in g.nbr_set(u) & rset if g.nbr_set(w) & rset)
    )


def is_pivot(g: Graph, u: int, region) -> bool:
    """Does ``u`` reach every region vertex directly or through a common
    region neighbour?  (``u`` itself must lie outside the region.)"""
    rset = frozenset(region)
    if u in rset:
        return False
    for v in rset:
        if g.has_edge(u, v):
            continue
        if not (g.nbr_set(u) & g.nbr_set(v) & rset):
            return False
    return True


def is_described_pivot(
    g: Graph,
    u: int,
    region,
    coloring: Mapping[int, int],
    candidates_plus,
    k: int,
) -> bool:
    """Pivot whose every link stays tight under ``coloring`` and belongs to
    the candidate pool -- the variant all the elimination machinery uses."""
    if not is_pivot(g, u, region):
        return False
    kp = set(candidates_plus)
    return all(
        w in kp and redundancy(g, coloring, w, k) == 0
        for w in links_of(g, u, region)
    )


@dataclass(frozen=True)
class PivotWitness:
    """A pivot vertex together with the set it pivots and its links."""

    u: int
    pivoted: tuple[int, ...]
    links: tuple[int, ...]
    maximal: bool = False


# -- failing checks ------------------------------------------------------


@dataclass
class FailingReport:
    """Outcome of the three exact rejection tests for a profile."""

    candidate_failing: bool
    pivot_failing: Optional[PivotWitness]
    plan_failing: bool

    @property
    def failing(self) -> bool:
        return (
            self.candidate_failing
            or self.pivot_failing is not None
            or self.plan_failing
        )


def _pivot_failing_witness(
    profile: Profile, core: FenCore, g: Graph, k: int
) -> Optional[PivotWitness]:
    """Search for a pivot that rejects the whole profile.

    The pivoted region must contain every outside candidate; backbone
    vertices enter only to cover the promised colors, and one per color
    suffices (a backbone vertex serving as a link must itself be a promised
    vertex, and promised vertices have pairwise distinct colors).  So the
    search runs over at most ``p^b`` cover combinations per pivot vertex,
    after a cheap compatibility prune of the mandatory part.
    """
    kset = set(profile.candidates)
    kplus = set(profile.candidates_plus)
    bset = core.backbone_set
    b = len(profile.b_targets)
    per_color = [profile.color_class(c) for c in range(1, b + 1)]
    coverable = set(v for vs in per_color for v in vs)
    reachable = kset | coverable
    for u in range(g.n):
        if u in bset or u in kset:
            continue
        nu = g.nbr_set(u)
        if any(
            not g.has_edge(u, v) and not (nu & g.nbr_set(v) & reachable)
            for v in kset
        ):
            continue
        for cover in itertools.product(*per_color):
            region = kset | set(cover)
            if not is_described_pivot(g, u, region, profile.colors, kplus, k):
                continue
            if len(kplus) <= k or _pairwise_backbone_condition(
                g, u, region, bset
            ):
                return PivotWitness(
                    u=u,
                    pivoted=tuple(sorted(region)),
                    links=links_of(g, u, region),
                    maximal=False,
                )
    return None


def _pairwise_backbone_condition(g: Graph, u: int, region, bset) -> bool:
    """Every linked pair (region vertex, its link) touches the backbone."""
    rset = set(region)
    for w in links_of(g, u, region):
        for v in g.nbr_set(w) & rset:
            if w not in bset and v not in bset:
                return False
    return True


def failing_check(
    profile: Profile, core: FenCore, g: Graph, k: int
) -> FailingReport:
    """Run all three rejection tests for a profile.

    ``candidate_failing``: fewer candidates than colors.
    ``pivot_failing``: some vertex pivots a region that must absorb every
    candidate, making one of its links unable to become a b-vertex.
    ``plan_failing``: no valid color plan exists (decided by exhausting the
    plan enumeration).
    """
    candidate_failing = len(profile.candidates_plus) < k
    pivot = _pivot_failing_witness(profile, core, g, k)
    plan_failing = (
        next(enumerate_color_plans(profile, core, g, k), None) is None
    )
    return FailingReport(candidate_failing, pivot, plan_failing)


# -- color plans ---------------------------------------------------------


@dataclass(frozen=True)
class Plan:
    """Where the b-vertex of each middle color should sit.

    ``assigned[i]`` decides color ``first_color + i``: a backbone vertex
    means "adjacent to that vertex", ``None`` means "far from the backbone"
    (drawn from the far candidates).  ``critical_color`` is the lowest color
    whose far choice is forced to collide with a link (with ``anchor`` the
    backbone vertex reserved to repair that), when any.
    """

    first_color: int
    assigned: tuple
    critical_color: Optional[int] = None
    anchor: Optional[int] = None

    @property
    def colors(self) -> range:
        return range(self.first_color, self.first_color + len(self.assigned))

    def target(self, c: int):
        return self.assigned[c - self.first_color]

    def far_colors(self) -> list[int]:
        return [c for c in self.colors if self.target(c) is None]

    @property
    def critical(self) -> bool:
        return self.critical_color is not None


def _checked_plan(
    assigned: tuple,
    profile: Profile,
    core: FenCore,
    g: Graph,
    k: int,
) -> Optional[Plan]:
    """Validate one assignment; return the finished plan or None.

    The five validity conditions: enough far candidates for the far marks;
    enough candidate neighbours per backbone vertex; no color planned onto
    the vertex carrying it; promised vertices keep their slack; and a
    critical plan needs spare candidates plus an anchor.
    """
    b = len(profile.b_targets)
    first = b + 1
    counts = Counter(assigned)
    kset = set(profile.candidates)
    colors = profile.colors
    if counts[None] > len(profile.far_candidates):
        return None
    for u in core.backbone:
        if counts[u] > len(g.nbr_set(u) & kset):
            return None
    for u in core.backbone:
        cu = colors[u]
        if first <= cu and assigned[cu - first] == u:
            return None
    for u in profile.b_targets:
        planned = {
            first + i for i, t in enumerate(assigned) if t == u
        }
        nearby = {colors[w] for w in g.nbr_set(u) if w in colors}
        if len(planned & nearby) > redundancy(g, colors, u, k):
            return None

    kplus = profile.candidates_plus
    far = profile.far_candidates
    critical = []
    for i, t in enumerate(assigned):
        if t is not None or not far:
            continue
        owners = profile.color_class(first + i)
        if owners and all(
            any(are_linked(g, colors, k, kplus, x, v) for v in owners)
            for x in far
        ):
            critical.append(first + i)
    if not critical:
        return Plan(first, assigned)
    if len(kplus) <= k:
        return None
    anchors = [
        u
        for u in core.backbone
        if counts[u] < len(g.nbr_set(u) & kset)
        and any(are_linked(g, colors, k, kplus, x, u) for x in far)
    ]
    if not anchors:
        return None
    return Plan(first, assigned, critical[0], anchors[0])


def enumerate_color_plans(
    profile: Profile, core: FenCore, g: Graph, k: int
) -> Iterator[Plan]:
    """Yield exactly the valid plans, far marker first and backbone vertices
    ascending within each color, colors varying lexicographically."""
    b = len(profile.b_targets)
    slots = core.size - b
    options = [None] + list(core.backbone)
    for combo in itertools.product(options, repeat=slots):
        plan = _checked_plan(combo, profile, core, g, k)
        if plan is not None:
            yield plan

"""Repairing a fresh seat assignment until no obstruction survives.

Two obstructions can keep a realization from extending to a full
coloring.  A *pivot* is an uncolored vertex that already sees every
color through its neighbours and their tight ties -- it could never be
colored at all.  A *block* is a chosen seat with a missing color that
no uncolored neighbour could ever carry.  Both are repaired the same
way: trade the colors of two seats, or move one color to a fresh
candidate, a bounded number of times.

Every mutation here goes through one helper that rebuilds the
bookkeeping from scratch: the realized plan is re-derived and
re-validated, the damage detector is re-run, and the safety count is
recomputed against the level the step promised (color trades raise the
promise by two, single-color moves by one and may introduce one
exceptional passed-over vertex).  Nothing is patched incrementally, so
a wrong step fails loudly with a reproducer instead of corrupting
later stages.

The entry point is :func:`eliminate_pivot`; everything else is a step
of its case analysis.
"""

from __future__ import annotations

from dataclasses import replace

from ..errors import InternalInvariantError
from ..graph import Graph, connected_components
from .profiles import is_described_pivot, redundancy
from .realization import (
    Realization,
    block_check,
    damaged_vertices,
    derive_plan,
    find_pivot,
    maximal_pivot_region,
    realization_defects,
    reproducer,
    unsafe_vertices,
)

# The repair cascade never chains more than five elementary steps, so the
# safety promise stays within these bounds (trades add 2, moves add 1).
CASCADE_SAFETY_BUDGET = 11
FEASIBLE_SAFETY_BUDGET = 13


def _fail(check: str, re: Realization, g: Graph, k: int, **info):
    raise InternalInvariantError(check, **info, **reproducer(re, g, k))


def _backbone_halo(g: Graph, core) -> set:
    """The backbone together with everything adjacent to it."""
    halo = set(core.backbone_set)
    for v in core.backbone:
        halo |= g.nbr_set(v)
    return halo


def _tethered(g: Graph, halo: set, u: int, v: int) -> bool:
    """Does ``v`` touch the backbone halo other than through ``u``?

    A tethered seat cannot simply walk away from its color: some of its
    closed neighbourhood is pinned near the backbone, so trading it
    needs care.  The exempted vertex ``u`` is the pivot under repair.
    """
    return bool((g.closed(v) & halo) - {u})


def _spectrum(coloring, vertices) -> set:
    return {coloring[v] for v in vertices if v in coloring}


def _still_pivoted(g, u, region, coloring, kplus, k) -> bool:
    return _spectrum(coloring, region) >= set(
        range(1, k + 1)
    ) and is_described_pivot(g, u, region, coloring, kplus, k)


# -- the one honest mutation path -----------------------------------------


def _moved(re, g, k, choices, level, witness, may_mint, op):
    """Assemble the realization with ``choices`` and recheck everything.

    ``level`` is the safety promise of the step, ``witness`` the one
    exceptional vertex carried in (None when the input was fully safe).
    Steps that move a color to a fresh candidate pass ``may_mint`` and
    are allowed to create a single new exception, provided it stays
    adjacent to a seat or close to few seat neighbourhoods.
    """
    out = Realization(
        choices=choices,
        plan=re.plan,
        profile=re.profile,
        core=re.core,
        damage_free=True,
        safety_level=level,
        almost_safe_witness=witness,
    )
    full = out.coloring()
    for v in sorted(out.chosen):
        clash = [
            w for w in g.nbr_set(v) if w != v and full.get(w) == full[v]
        ]
        if clash:
            _fail(f"{op}-made-coloring-improper", out, g, k, seat=v, against=clash)
    out.plan = derive_plan(g, out, k)
    hurt = [v for v in damaged_vertices(g, out, k) if v in out.chosen]
    if hurt:
        _fail(f"{op}-damaged-a-seat", out, g, k, hurt=hurt)
    bad = unsafe_vertices(out, k, level)
    if witness is not None:
        allowed = {witness}
    elif may_mint:
        allowed = set(bad[:1])
    else:
        allowed = set()
    if not set(bad) <= allowed:
        _fail(f"{op}-overran-safety", out, g, k, violators=bad, budget=level)
    if bad:
        exc = bad[0]
        seats = out.seats
        near = g.nbr_set(exc)
        seat_halo = set()
        for s in seats:
            seat_halo |= g.nbr_set(s)
        if not (near & seats) and len(near & seat_halo) > re.core.size + 2:
            _fail(f"{op}-exception-entangled", out, g, k, exception=exc)
        out.almost_safe_witness = exc
    else:
        out.almost_safe_witness = None
    return out


def _swapped(re, g, k, c1, c2, op):
    """Trade the seats of colors ``c1`` and ``c2`` (identity is a no-op)."""
    if c1 == c2:
        return re
    ch = dict(re.choices)
    ch[c1], ch[c2] = ch[c2], ch[c1]
    return _moved(
        re, g, k, ch, re.safety_level + 2, re.almost_safe_witness, False, op
    )


def _shifted(re, g, k, c, v, op):
    """Reseat color ``c`` on the unseated candidate ``v``.

    Only allowed while no exceptional vertex is carried: the displaced
    seat may itself become the one new exception.
    """
    if re.almost_safe_witness is not None:
        _fail(
            f"{op}-shift-under-carried-exception",
            re,
            g,
            k,
            carried=re.almost_safe_witness,
        )
    if v in re.chosen:
        _fail(f"{op}-shift-target-already-seated", re, g, k, moved_to=v)
    ch = dict(re.choices)
    ch[c] = v
    return _moved(re, g, k, ch, re.safety_level + 1, None, True, op)


def _swap_conflict(re, g, halo, c1, c2, p):
    """The seat that would violate the generic trade rule, if any.

    A seat whose neighbourhood meets both the backbone halo and the
    colored set may only trade up to a color above the backbone size;
    the trades that bypass this rule justify their harmlessness
    directly and do not call this.
    """
    colored = re.colored
    for ci, other in ((c1, c2), (c2, c1)):
        vi = re.choices[ci]
        if other <= p and (g.nbr_set(vi) & halo & colored):
            return vi
    return None


def _assert_legal_swap(re, g, k, c1, c2, op):
    halo = _backbone_halo(g, re.core)
    bad = _swap_conflict(re, g, halo, c1, c2, re.core.size)
    if bad is not None:
        _fail(f"{op}-breaks-trade-rule", re, g, k, seat=bad, trade=[c1, c2])


# -- block repair ----------------------------------------------------------


def clear_blocks(re: Realization, g: Graph, k: int) -> Realization:
    """Remove the unique block of a pivot-free realization, if present.

    On damage-free pivot-free states a block has a rigid shape: the
    blocked seat misses exactly one color, that color is owned by a
    backbone vertex, and the seat has a high-color neighbour to trade
    with.  One trade clears it and cannot create a new pivot or block.
    """
    if re.pivot_free is not True:
        _fail("block-repair-before-pivot-repair", re, g, k)
    hit = block_check(re, g, k)
    if hit is None:
        out = replace(re, block_free=True)
        return out
    u, c = hit
    p = re.core.size
    b = len(re.profile.b_targets)
    if not (b < c <= p):
        _fail("blocked-color-outside-middle-range", re, g, k, vertex=u, color=c)
    displaced = re.choices[c]
    open_nbrs = sorted(g.nbr_set(u) - re.colored)
    if len(open_nbrs) != 2:
        _fail(
            "block-without-two-open-neighbours",
            re,
            g,
            k,
            vertex=u,
            open_neighbours=open_nbrs,
        )
    owners = [w for w in re.core.backbone if re.profile.colors.get(w) == c]
    if not owners:
        _fail("blocked-color-missing-backbone-owner", re, g, k, color=c)
    d = next(
        (d for d in range(p + 1, k + 1) if re.choices[d] in g.nbr_set(u)),
        None,
    )
    if d is None:
        _fail("no-high-seat-beside-block", re, g, k, vertex=u)
    halo = _backbone_halo(g, re.core)
    touching = [v for v in (u, displaced, re.choices[d]) if v in halo]
    if touching:
        _fail("block-shape-touches-backbone", re, g, k, touching=touching)
    out = _swapped(re, g, k, c, d, "block-clearing")
    if block_check(out, g, k) is not None:
        _fail("block-clearing-left-a-block", out, g, k)
    if find_pivot(out, g, k) is not None:
        _fail("block-clearing-created-a-pivot", out, g, k)
    out.pivot_free = True
    out.block_free = True
    return out


# -- the pivot repair steps ------------------------------------------------


def release_stale_link(re, u, region, g, k) -> Realization:
    """Repair a pivot that leans on a link made tight by the seats alone.

    Some link of the region is tight under the working coloring but not
    under the bare backbone coloring; trading the colliding middle color
    away from its neighbourhood restores the slack the link should have
    had and the pivot disappears.
    """
    profile, core = re.profile, re.core
    chi = profile.colors
    full = re.coloring()
    p = core.size
    b = len(profile.b_targets)
    rset = set(region)
    links = [
        w for w in sorted(g.nbr_set(u) & rset) if g.nbr_set(w) & rset
    ]
    stale = [
        v
        for v in links
        if redundancy(g, full, v, k) == 0 and redundancy(g, chi, v, k) != 0
    ]
    if not stale:
        _fail("stale-link-missing", re, g, k, pivot=u, links=links)
    v = stale[0]
    chi_near = {chi[w] for w in g.closed(v) if w in chi}
    c = next(
        (
            c
            for c in range(b + 1, p + 1)
            if re.choices[c] in g.closed(v) and c in chi_near
        ),
        None,
    )
    if c is None:
        _fail("stale-link-without-collision", re, g, k, link=v)
    seen = _spectrum(full, g.closed(v))
    d = next((d for d in range(1, k + 1) if d not in seen), None)
    if d is None:
        _fail("stale-link-saturated", re, g, k, link=v)
    if d <= b:
        _fail("missing-color-under-seated-range", re, g, k, link=v, color=d)
    out = _swapped(re, g, k, c, d, "link-release")
    if find_pivot(out, g, k) is not None:
        _fail("link-release-left-a-pivot", out, g, k, link=v)
    out.pivot_free = True
    return out


def ensure_loose_high_seat(re, u, region, g, k):
    """Make some high color's seat free of backbone contact, by trade.

    Returns ``(re', c)`` where color ``c`` is above the backbone size
    and its seat touches the backbone halo at most through ``u``; the
    region stays pivoted.  When such a color already exists the input
    comes back unchanged.
    """
    profile, core = re.profile, re.core
    p = core.size
    halo = _backbone_halo(g, core)
    loose = [
        c
        for c in range(p + 1, k + 1)
        if not _tethered(g, halo, u, re.choices[c])
    ]
    if loose:
        return re, loose[0]
    rset = set(region)
    tied = [v for v in sorted(rset) if _tethered(g, halo, u, v)]
    homes = [
        comp
        for comp in connected_components(g, allowed=rset)
        if set(tied) <= set(comp)
    ]
    if not homes:
        _fail("tethered-vertices-split-across-region", re, g, k, pivot=u, tethered=tied)
    comp = set(homes[0])
    gate = sorted(g.nbr_set(u) & comp)
    if len(gate) != 1:
        _fail("region-component-without-single-gate", re, g, k, pivot=u, gate=gate)
    anchor = gate[0]
    full = re.coloring()
    seen = _spectrum(full, g.closed(anchor))
    c = None
    for cand in range(1, k + 1):
        if cand in seen:
            continue
        seat = re.choices.get(cand)
        if seat is not None and seat in rset and not _tethered(g, halo, u, seat):
            c = cand
            break
    if c is None:
        _fail("no-loose-seat-for-missing-color", re, g, k, anchor=anchor)
    if c > p:
        _fail("loose-color-above-backbone-size", re, g, k, color=c)
    d = next((d for d in range(p + 1, k + 1) if re.choices[d] != anchor), None)
    if d is None:
        _fail("anchor-holds-every-high-color", re, g, k, anchor=anchor)
    out = _swapped(re, g, k, c, d, "seat-loosening")
    if not _still_pivoted(
        g, u, rset, out.coloring(), set(profile.candidates_plus), k
    ):
        _fail("seat-loosening-unpivoted-region", out, g, k, pivot=u)
    return out, d


def promote_escaped_seat(re, u, region, base_region, g, k) -> Realization:
    """Repair branch for a seat outside the pivot's bare reach.

    The lowest such seat holds a middle color; giving it a loose high
    color instead breaks the full spectrum around the pivot.
    """
    p = re.core.size
    re1, d = ensure_loose_high_seat(re, u, region, g, k)
    outside = sorted(set(re1.chosen) - set(base_region))
    if not outside:
        _fail("escaped-seat-vanished", re1, g, k, pivot=u)
    v = outside[0]
    c = next(cc for cc, s in sorted(re1.choices.items()) if s == v)
    if c > p:
        _fail("escaped-seat-on-high-color", re1, g, k, seat=v, color=c)
    if v == re1.choices[d]:
        _fail("loose-seat-escaped-reach", re1, g, k, seat=v)
    _assert_legal_swap(re1, g, k, c, d, "escape-promotion")
    out = _swapped(re1, g, k, c, d, "escape-promotion")
    if find_pivot(out, g, k) is not None:
        _fail("escape-promotion-left-a-pivot", out, g, k)
    out.pivot_free = True
    return out


def pick_shift_color(re, u, region, g, k) -> int:
    """A high color whose seat the region can afford to lose.

    Three conditions guard the choice: the seat must not be a link of
    the region, abandoning it must not touch the neighbourhood of any
    colored vertex outside the region, and it must steer clear of every
    smallest set of region vertices whose removal would pull the region
    into one tight cluster.  Seats away from the pivot are preferred,
    then the lowest color wins.
    """
    p = re.core.size
    rset = set(region)
    guarded = set()
    for x in set(re.colored) - rset:
        guarded |= g.closed(x)
    balls = {}
    for x in rset:
        ball = set(g.closed(x))
        for y in g.nbr_set(x):
            ball |= g.nbr_set(y)
        balls[x] = ball
    rlist = sorted(rset)
    far_pairs = [
        (x, y)
        for i, x in enumerate(rlist)
        for y in rlist[i + 1 :]
        if y not in balls[x]
    ]
    avoid = _cluster_cut_hull(far_pairs)
    picks = []
    for c in range(p + 1, k + 1):
        s = re.choices[c]
        if s in rset and s in g.nbr_set(u) and (g.nbr_set(s) & rset):
            continue
        spill = [
            y
            for y in g.nbr_set(s)
            if y != u and y not in rset and y in guarded
        ]
        if spill:
            continue
        if avoid is not None and (s not in rset or s in avoid):
            continue
        picks.append(c)
    if not picks:
        _fail("shift-color-missing", re, g, k, pivot=u)
    picks.sort(key=lambda c: (re.choices[c] in g.nbr_set(u), c))
    return picks[0]


def _cluster_cut_hull(far_pairs):
    """Vertices lying in some smallest cover of the far-pair graph.

    The far pairs are the region pairs at graph distance above two.  A
    set of at most two vertices meeting every far pair is exactly a
    removal that would leave the region pairwise close; the seats to
    avoid are the members of such smallest covers.  Returns None when
    every cover needs three or more vertices (nothing to avoid), the
    empty set when there are no far pairs (any region seat is safe).
    """
    if not far_pairs:
        return set()
    verts = sorted({x for e in far_pairs for x in e})
    ones = [a for a in verts if all(a in e for e in far_pairs)]
    if ones:
        return set(ones)
    twos = set()
    first = far_pairs[0]
    for a in first:
        rest = [e for e in far_pairs if a not in e]
        if not rest:
            continue
        shared = set(rest[0])
        for e in rest[1:]:
            shared &= set(e)
        for partner in shared:
            twos.add(a)
            twos.add(partner)
    if twos:
        return twos
    return None


def reroute_near_seat(re, u, region, c1, c2, spare, g, k) -> Realization:
    """Unseat the pivot's neighbour at ``c1`` in favour of ``spare``.

    The seat of ``c2`` (adjacent to the one leaving) must stay where it
    is.  A spare with backbone contact cannot take the color directly;
    its single contact anchor lends a color that is first traded clear.
    """
    profile, core = re.profile, re.core
    p = core.size
    b = len(profile.b_targets)
    halo = _backbone_halo(g, core)
    if re.almost_safe_witness is not None:
        _fail("reroute-under-carried-exception", re, g, k)
    v1 = re.choices[c1]
    v2 = re.choices[c2]
    if v1 not in g.nbr_set(u) or v2 not in g.nbr_set(v1):
        _fail("reroute-shape-mismatch", re, g, k, leaving=v1, staying=v2)
    if spare == u or spare in re.chosen or spare not in profile.candidates:
        _fail("spare-unusable", re, g, k, spare=spare)
    if not _tethered(g, halo, u, spare):
        out = _shifted(re, g, k, c1, spare, "spare-seating")
    else:
        anchors = sorted((g.nbr_set(spare) & halo) - {u})
        if len(anchors) != 1:
            _fail("spare-anchor-not-unique", re, g, k, spare=spare, anchors=anchors)
        anchor = anchors[0]
        if anchor not in g.nbr_set(u) or anchor not in set(region):
            _fail("spare-anchor-outside-region", re, g, k, anchor=anchor)
        seen = _spectrum(re.coloring(), g.closed(anchor))
        c = next(
            (
                cc
                for cc in range(b + 1, k + 1)
                if cc != c2 and cc not in seen
            ),
            None,
        )
        if c is None:
            _fail("anchor-saturated", re, g, k, anchor=anchor)
        lent = re.choices[c]
        pinned = [w for w in (lent, v1) if _tethered(g, halo, u, w)]
        if pinned:
            _fail("reroute-ends-tethered", re, g, k, pinned=pinned)
        _assert_legal_swap(re, g, k, c, c1, "reroute-clearing")
        mid = _swapped(re, g, k, c, c1, "reroute-clearing")
        out = _shifted(mid, g, k, c, spare, "spare-seating")
    if v1 in out.chosen:
        _fail("rerouted-seat-still-chosen", out, g, k, seat=v1)
    if out.choices[c2] != v2:
        _fail("staying-seat-moved", out, g, k, seat=v2)
    if u in out.chosen:
        _fail("pivot-took-a-seat", out, g, k, pivot=u)
    return out


def seat_past_gate(
    re,
    u,
    region,
    base_region,
    g,
    k,
    gate=None,
    target=None,
    spare=None,
) -> Realization:
    """Repair branch for a pivot whose candidates all sit close by.

    Moves a loose high color onto ``target`` (a candidate two steps from
    the pivot) while clearing ``gate`` (the common neighbour) out of the
    chosen set; ``spare`` replaces whatever seat the detour displaces.
    When not supplied they are derived from the pivot's neighbourhood.
    Afterwards any remaining pivot has a seat outside its bare reach or
    leans on a stale link, so one more step finishes.
    """
    profile, core = re.profile, re.core
    kplus = set(profile.candidates_plus)
    chi = profile.colors
    kset = set(profile.candidates)
    if re.almost_safe_witness is not None:
        _fail("gate-seating-under-carried-exception", re, g, k)
    if gate is None:
        search = set(base_region) - core.backbone_set
        for a in sorted(g.nbr_set(u) & search):
            behind = sorted((g.nbr_set(a) & search) - {u})
            if behind:
                gate, target = a, behind[0]
                break
        if gate is None:
            _fail("close-pair-missing", re, g, k, pivot=u)
        spares = sorted(kset - set(re.chosen) - {u})
        if not spares:
            _fail("spare-candidate-missing", re, g, k, pivot=u)
        spare = spares[0]
    re1, c = ensure_loose_high_seat(re, u, region, g, k)
    holder = {s: cc for cc, s in re1.choices.items()}
    if target not in holder:
        if gate in holder:
            d = holder[gate]
            _assert_legal_swap(re1, g, k, c, d, "gate-clearing")
            re2 = _swapped(re1, g, k, c, d, "gate-clearing")
        else:
            re2 = re1
        re3 = _shifted(re2, g, k, c, target, "target-seating")
    else:
        d = holder[target]
        _assert_legal_swap(re1, g, k, c, d, "target-promotion")
        re2 = _swapped(re1, g, k, c, d, "target-promotion")
        if re2 is not re1 and not _still_pivoted(
            g, u, set(region), re2.coloring(), kplus, k
        ):
            _fail("target-promotion-unpivoted-region", re2, g, k, pivot=u)
        if gate in re2.chosen:
            gate_color = {s: cc for cc, s in re2.choices.items()}[gate]
            re3 = reroute_near_seat(re2, u, region, gate_color, c, spare, g, k)
        else:
            re3 = re2
    if gate in re3.chosen:
        _fail("gate-still-seated", re3, g, k, gate=gate)
    if re3.choices[c] != target:
        _fail("target-not-seated", re3, g, k, moved_to=target)
    if u in re3.chosen:
        _fail("pivot-took-a-seat", re3, g, k, pivot=u)
    wit = find_pivot(re3, g, k)
    if wit is None:
        re3.pivot_free = True
        return re3
    u2, region2 = wit.u, set(wit.pivoted)
    if not is_described_pivot(g, u2, region2, chi, kplus, k):
        return release_stale_link(re3, u2, region2, g, k)
    base2 = maximal_pivot_region(
        g, u2, core.backbone_set | kset, chi, kplus, k
    )
    if set(re3.chosen) <= base2:
        _fail("followup-pivot-covers-every-seat", re3, g, k, pivot=u2)
    return promote_escaped_seat(re3, u2, region2, base2, g, k)


def shift_to_distant_candidate(re, u, region, base_region, g, k) -> Realization:
    """Repair branch for a pivot with a candidate beyond its bare reach.

    Seating a distant candidate on a dispensable high color starves the
    region of that color.  When every candidate is close and a seat
    fell outside the pivoted set instead, the seat is walked back in
    through its gate.
    """
    profile = re.profile
    kset = set(profile.candidates)
    base = set(base_region)
    rng = set(re.chosen)
    if kset <= base | {u} and not rng <= set(region):
        v = sorted(rng - set(region))[0]
        if v in g.nbr_set(u):
            _fail("outside-seat-beside-pivot", re, g, k, seat=v)
        gates = sorted(g.nbr_set(u) & g.nbr_set(v) & base)
        if len(gates) != 1:
            _fail("gate-not-unique", re, g, k, seat=v, gates=gates)
        x = gates[0]
        if x in re.colored:
            _fail("gate-already-colored", re, g, k, gate=x)
        if x not in kset:
            _fail("gate-not-a-candidate", re, g, k, gate=x)
        return seat_past_gate(
            re, u, region, base_region, g, k, gate=x, target=v, spare=x
        )
    distant = sorted(kset - base)
    if not distant:
        _fail("distant-candidate-missing", re, g, k, pivot=u)
    v = next((a for a in distant if a != u), distant[0])
    c = pick_shift_color(re, u, region, g, k)
    out = _shifted(re, g, k, c, v, "distant-seating")
    if find_pivot(out, g, k) is not None:
        _fail("distant-seating-left-a-pivot", out, g, k)
    out.pivot_free = True
    return out


# -- entry point -----------------------------------------------------------


def eliminate_pivot(re, plan, profile, core, g: Graph, k: int) -> Realization:
    """Turn a fresh realization into one no obstruction survives.

    Dispatches on how the pivot (if any) relates to its bare-backbone
    reach: a pivot that is not certified under the bare coloring leans
    on a stale link; otherwise the candidates and seats inside the
    reach decide between promoting an escaped seat, seating a distant
    candidate, and threading a seat past the pivot's gate.  Ends by
    clearing the at-most-one block.  The result is damage-free,
    pivot-free, block-free, and within the almost-safety budget; every
    failure of those re-checks aborts with a reproducer.
    """
    if plan != re.plan or profile != re.profile or core != re.core:
        _fail("repair-context-mismatch", re, g, k)
    defects = realization_defects(g, re, k)
    if defects:
        _fail("input-realization-defective", re, g, k, defects=defects)
    wit = find_pivot(re, g, k)
    if wit is None:
        out = clear_blocks(replace(re, pivot_free=True), g, k)
    else:
        u, region = wit.u, set(wit.pivoted)
        if plan.critical:
            _fail("pivot-under-critical-plan", re, g, k, pivot=u)
        if re.safety_level != 0 or re.almost_safe_witness is not None:
            _fail("pivot-with-degraded-input", re, g, k, pivot=u)
        chi = profile.colors
        kplus = set(profile.candidates_plus)
        if not is_described_pivot(g, u, region, chi, kplus, k):
            out = release_stale_link(re, u, region, g, k)
        else:
            kset = set(profile.candidates)
            base = maximal_pivot_region(
                g, u, core.backbone_set | kset, chi, kplus, k
            )
            if not region <= base:
                _fail(
                    "bare-reach-misses-region",
                    re,
                    g,
                    k,
                    pivot=u,
                    region_only=sorted(region - base),
                )
            if not kset <= base:
                if not set(re.chosen) <= base:
                    out = promote_escaped_seat(re, u, region, base, g, k)
                else:
                    out = shift_to_distant_candidate(re, u, region, base, g, k)
            else:
                out = seat_past_gate(re, u, region, base, g, k)
        if out.safety_level > CASCADE_SAFETY_BUDGET:
            _fail(
                "cascade-overran-safety-budget",
                out,
                g,
                k,
                level=out.safety_level,
            )
        out = clear_blocks(out, g, k)
    final = realization_defects(g, out, k)
    if final:
        _fail("repaired-realization-defective", out, g, k, defects=final)
    if out.safety_level > FEASIBLE_SAFETY_BUDGET:
        _fail("feasibility-budget-exceeded", out, g, k, level=out.safety_level)
    return out

"""Top-level b-coloring solver for graphs with few independent cycles.

Small color budgets go to the exact tree-decomposition solver (falling
back to brute force when the state budget trips on a small instance):
below ``96 * feedback_edges + 18`` colors the counting arguments behind
the backbone pipeline are simply unavailable, so nothing is proved there
and nothing is attempted.  From the threshold up, the search enumerates
backbone colorings with their promised b-vertices, discards the provably
hopeless ones, and runs the first surviving profile through plan ->
realization -> repair -> neighbourhood coloring -> greedy finish; at that
point success is guaranteed, so the first profile to pass the rejection
tests yields the answer.  Every witness is re-verified from scratch
before it is returned, whichever branch produced it.
"""

from __future__ import annotations

from typing import Dict, Optional

from ..coloring import verify_b_coloring
from ..errors import InternalInvariantError, StateBudgetExceeded
from ..graph import Graph, feedback_edge_set
from ..reference import brute_force_b_coloring
from ..treewidth import DEFAULT_STATE_BUDGET, combined_decomposition, solve_twdp
from .coloring import finish_coloring, partial_b_coloring
from .core import compute_fen_core
from .eliminate import eliminate_pivot
from .profiles import enumerate_color_plans, enumerate_profiles, failing_check
from .realization import build_realization


def pipeline_threshold(feedback_edges: int) -> int:
    """Smallest color count the backbone pipeline handles for a graph with
    the given number of feedback edges; below it the exact solver runs."""
    return 96 * feedback_edges + 18


def solve_fen(
    g: Graph,
    k: int,
    *,
    state_budget: int = DEFAULT_STATE_BUDGET,
    brute_cap: Optional[int] = None,
) -> Optional[Dict[int, int]]:
    """A verified k-b-coloring of ``g``, or ``None`` if none exists.

    ``state_budget`` caps the exact solver's dynamic program and
    ``brute_cap`` its brute-force fallback (both only matter below the
    pipeline threshold).  May raise :class:`~bcolor.errors.InstanceTooLarge`
    when the budget trips on an instance too big to brute-force.
    """
    if k < 1:
        raise ValueError("color count must be positive")
    if k < pipeline_threshold(len(feedback_edge_set(g))):
        witness = _exact_small_k(g, k, state_budget, brute_cap)
    else:
        witness = _pipeline(g, k)
    if witness is not None:
        _certify(g, witness, k)
    return witness


def _exact_small_k(
    g: Graph, k: int, state_budget: int, brute_cap: Optional[int]
) -> Optional[Dict[int, int]]:
    try:
        return solve_twdp(
            g, k, combined_decomposition(g), state_budget=state_budget
        )
    except StateBudgetExceeded:
        if brute_cap is None:
            return brute_force_b_coloring(g, k)
        return brute_force_b_coloring(g, k, cap=brute_cap)


def _pipeline(g: Graph, k: int) -> Optional[Dict[int, int]]:
    core = compute_fen_core(g)
    for profile in enumerate_profiles(core, g, k):
        if failing_check(profile, core, g, k).failing:
            continue
        plan = next(enumerate_color_plans(profile, core, g, k))
        re = build_realization(plan, profile, core, g, k)
        re = eliminate_pivot(re, plan, profile, core, g, k)
        partial = partial_b_coloring(re, core, g, k)
        return finish_coloring(re, partial, core, g, k)
    return None


def _certify(g: Graph, witness: Dict[int, int], k: int) -> None:
    report = verify_b_coloring(g, witness, k)
    if not report.is_b_coloring:
        raise InternalInvariantError(
            "solver-witness-rejected",
            problems=report.describe_lines(),
            k=k,
            edges=sorted(list(e) for e in g.edges()),
        )

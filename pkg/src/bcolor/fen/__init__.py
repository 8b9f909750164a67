"""Exact b-coloring solver for graphs with few independent cycles."""

from .core import (
    BACKBONE_FACTOR,
    MIN_OUTER_EDGES,
    FenCore,
    backbone_defects,
    compute_fen_core,
    disjoint_paths_into,
)
from .profiles import (
    FailingReport,
    Plan,
    PivotWitness,
    Profile,
    are_linked,
    build_profile,
    enumerate_color_plans,
    enumerate_profiles,
    failing_check,
    is_described_pivot,
    is_pivot,
    links_of,
    redundancy,
    tight_links,
)
from .realization import (
    Realization,
    block_check,
    build_realization,
    damaged_vertices,
    derive_plan,
    find_pivot,
    maximal_pivot_region,
    passed_over,
    realization_defects,
    unsafe_vertices,
)
from .eliminate import eliminate_pivot
from .coloring import finish_coloring, partial_b_coloring
from .solver import pipeline_threshold, solve_fen

__all__ = [
    "BACKBONE_FACTOR",
    "FailingReport",
    "FenCore",
    "MIN_OUTER_EDGES",
    "PivotWitness",
    "Plan",
    "Profile",
    "Realization",
    "are_linked",
    "backbone_defects",
    "block_check",
    "build_profile",
    "build_realization",
    "compute_fen_core",
    "damaged_vertices",
    "derive_plan",
    "disjoint_paths_into",
    "eliminate_pivot",
    "enumerate_color_plans",
    "enumerate_profiles",
    "failing_check",
    "find_pivot",
    "finish_coloring",
    "is_described_pivot",
    "is_pivot",
    "links_of",
    "maximal_pivot_region",
    "partial_b_coloring",
    "passed_over",
    "pipeline_threshold",
    "realization_defects",
    "redundancy",
    "solve_fen",
    "tight_links",
    "unsafe_vertices",
]

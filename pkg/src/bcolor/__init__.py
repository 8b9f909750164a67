"""Exact b-colouring solvers and the toolkit around them.

A b-colouring with ``k`` colours is a proper colouring in which every colour
class contains a vertex adjacent to all ``k - 1`` other colours.  The package
decides, exactly, whether a graph admits one: brute force and a tree-width
dynamic program for small instances, a solver for graphs close to complete
multipartite, and a pipeline for graphs with few independent cycles that is
total once ``k`` clears a threshold linear in that number.  Around the
solvers sit parsers for the text formats, an independent witness checker,
deterministic instance generators and a differential fuzzing harness; the
``bcolor`` command exposes all of it.
"""

from .cocluster import DEFAULT_SIGNATURE_CAP, cluster_modulator, solve_cocluster
from .coloring import (
    BColoringReport,
    ColoringFormatError,
    format_coloring,
    parse_coloring,
    verify_b_coloring,
)
from .errors import (
    CapExceeded,
    InstanceTooLarge,
    InternalInvariantError,
    ModulatorCapExceeded,
    StateBudgetExceeded,
)
from .fen import compute_fen_core, pipeline_threshold, solve_fen
from .graph import (
    Graph,
    GraphFormatError,
    cycle_rank,
    feedback_edge_set,
    format_graph,
    is_tree,
    m_degree,
    parse_graph,
)
from .reference import (
    BRUTE_VERTEX_CAP,
    b_chromatic_brute,
    b_chromatic_tree,
    brute_force_b_coloring,
    heuristic_descent,
    pivoted_tree_report,
)
from .treewidth import DEFAULT_STATE_BUDGET, combined_decomposition, solve_twdp

__version__ = "0.1.0"

__all__ = [
    "BColoringReport",
    "BRUTE_VERTEX_CAP",
    "CapExceeded",
    "ColoringFormatError",
    "DEFAULT_SIGNATURE_CAP",
    "DEFAULT_STATE_BUDGET",
    "Graph",
    "GraphFormatError",
    "InstanceTooLarge",
    "InternalInvariantError",
    "ModulatorCapExceeded",
    "StateBudgetExceeded",
    "b_chromatic_brute",
    "b_chromatic_tree",
    "brute_force_b_coloring",
    "cluster_modulator",
    "combined_decomposition",
    "compute_fen_core",
    "cycle_rank",
    "feedback_edge_set",
    "format_coloring",
    "format_graph",
    "heuristic_descent",
    "is_tree",
    "m_degree",
    "parse_coloring",
    "parse_graph",
    "pipeline_threshold",
    "pivoted_tree_report",
    "solve_cocluster",
    "solve_fen",
    "solve_twdp",
    "verify_b_coloring",
]

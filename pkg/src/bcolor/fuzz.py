"""Differential testing harness pitting the solvers against each other.

Each trial draws a random graph and colour count, runs every solver whose
caps admit the instance, and compares verdicts; witnesses from yes answers
are verified independently.  A split verdict (or a rejected witness) is
shrunk by greedy vertex and edge deletion while it persists, and the
minimized instance is recorded for replay.  Trials are a pure function of
``(seed, trial index)``, so a failing run can be replayed exactly.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

from .cocluster import DEFAULT_SIGNATURE_CAP, solve_cocluster
from .coloring import verify_b_coloring
from .errors import CapExceeded
from .fen import solve_fen
from .graph import Graph, remove_edge, remove_vertices
from .reference import BRUTE_VERTEX_CAP, brute_force_b_coloring
from .treewidth import DEFAULT_STATE_BUDGET, combined_decomposition, solve_twdp

log = logging.getLogger(__name__)

SOLVER_NAMES = ("brute", "twdp", "fen", "cocluster")


def random_graph(rng: random.Random, max_n: int) -> Graph:
    """Random graph with ``1 .. max_n`` vertices and uniform edge count."""
    n = rng.randint(1, max_n)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return Graph(n, rng.sample(pairs, rng.randint(0, len(pairs))))


@dataclass
class Disagreement:
    """A minimized instance on which the solvers split."""

    trial: int
    k: int
    n: int
    edges: tuple[tuple[int, int], ...]
    verdicts: Dict[str, str]

    def to_json(self) -> dict:
        return {
            "trial": self.trial,
            "k": self.k,
            "n": self.n,
            "edges": [list(e) for e in self.edges],
            "verdicts": dict(sorted(self.verdicts.items())),
        }


@dataclass
class FuzzSummary:
    """Outcome of a fuzzing run."""

    trials: int
    max_n: int
    seed: int
    runs: Dict[str, int] = field(default_factory=dict)
    skips: Dict[str, int] = field(default_factory=dict)
    disagreements: list[Disagreement] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "max_n": self.max_n,
            "seed": self.seed,
            "runs": dict(sorted(self.runs.items())),
            "skips": dict(sorted(self.skips.items())),
            "disagreements": [d.to_json() for d in self.disagreements],
        }


def _solvers(
    brute_cap: int, state_budget: int, signature_cap: int
) -> Dict[str, Callable[[Graph, int], Optional[dict]]]:
    return {
        "brute": lambda g, k: brute_force_b_coloring(g, k, cap=brute_cap),
        "twdp": lambda g, k: solve_twdp(g, k, combined_decomposition(g), state_budget=state_budget),
        "fen": lambda g, k: solve_fen(g, k, state_budget=state_budget, brute_cap=brute_cap),
        "cocluster": lambda g, k: solve_cocluster(g, k, signature_cap=signature_cap),
    }


def _verdicts(g: Graph, k: int, solvers) -> tuple[Dict[str, str], list[str]]:
    """Run every solver within caps; map name to yes/no, list the skipped."""
    verdicts: Dict[str, str] = {}
    skipped: list[str] = []
    for name, run in solvers.items():
        try:
            witness = run(g, k)
        except CapExceeded:
            skipped.append(name)
            continue
        if witness is None:
            verdicts[name] = "no"
        elif verify_b_coloring(g, witness, k).is_b_coloring:
            verdicts[name] = "yes"
        else:
            verdicts[name] = "yes-invalid-witness"
    return verdicts, skipped


def _split(verdicts: Dict[str, str]) -> bool:
    return len(set(verdicts.values())) > 1 or "yes-invalid-witness" in verdicts.values()


def _shrink(g: Graph, k: int, solvers, *, max_steps: int = 400) -> Graph:
    """Greedy vertex-then-edge deletion preserving the verdict split."""

    def still_split(h: Graph) -> bool:
        return _split(_verdicts(h, k, solvers)[0])

    steps = 0
    changed = True
    while changed and steps < max_steps:
        changed = False
        for v in range(g.n):
            if g.n <= 1:
                break
            smaller = remove_vertices(g, [v])
            if still_split(smaller):
                g = smaller
                changed = True
                steps += 1
                break
        if changed:
            continue
        for u, v in g.edges():
            if still_split(remove_edge(g, u, v)):
                g = remove_edge(g, u, v)
                changed = True
                steps += 1
                break
    return g


def run_fuzz(
    trials: int,
    max_n: int,
    seed: int = 0,
    *,
    brute_cap: int = BRUTE_VERTEX_CAP,
    state_budget: int = DEFAULT_STATE_BUDGET,
    signature_cap: int = DEFAULT_SIGNATURE_CAP,
) -> FuzzSummary:
    """Run ``trials`` differential trials on graphs with up to ``max_n`` vertices."""
    if trials < 0:
        raise ValueError("trial count must be non-negative")
    if max_n < 1:
        raise ValueError("need room for at least one vertex")
    solvers = _solvers(brute_cap, state_budget, signature_cap)
    summary = FuzzSummary(trials=trials, max_n=max_n, seed=seed)
    for trial in range(trials):
        rng = random.Random(seed * 1_000_003 + trial)
        g = random_graph(rng, max_n)
        k = rng.randint(1, g.n)
        verdicts, skipped = _verdicts(g, k, solvers)
        for name in verdicts:
            summary.runs[name] = summary.runs.get(name, 0) + 1
        for name in skipped:
            summary.skips[name] = summary.skips.get(name, 0) + 1
        if _split(verdicts):
            log.warning("trial %d split: %s; shrinking", trial, verdicts)
            small = _shrink(g, k, solvers)
            summary.disagreements.append(
                Disagreement(
                    trial=trial,
                    k=k,
                    n=small.n,
                    edges=tuple(small.edges()),
                    verdicts=_verdicts(small, k, solvers)[0],
                )
            )
    return summary

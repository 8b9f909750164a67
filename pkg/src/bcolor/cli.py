"""Command-line front end: solve, generate, fuzz, inspect, verify.

Subcommands
-----------
``solve``
    Decide whether the graph in ``--input`` has a b-colouring with ``--k``
    colours.  ``--algo`` forces one solver; the default ``auto`` prefers the
    tree-width dynamic program when ``k`` sits below the pipeline threshold,
    then the co-cluster solver, then brute force, each within its cap.  A yes
    answer is re-verified before it is reported, and ``--out`` stores the
    witness in a file that ``verify`` accepts.

``gen``
    Write a generated instance to ``--out`` (or stdout): ``tree``,
    ``pivoted-tree`` (with ``--unpivot``), ``fen`` (forest plus ``--extra``
    cycle edges), ``cocluster`` (complete multipartite plus a planted
    modulator) or ``planted`` (graph built around a known b-colouring; the
    witness lands next to ``--out`` with a ``.col`` suffix).  Output is a
    pure function of the parameters and ``--seed``.

``fuzz``
    Differential-test all solvers on random instances; disagreements are
    shrunk and dumped, and the exit status is nonzero when any were found.

``params``
    Print the structural parameters of the input graph.

``verify``
    Check a colouring file against a graph file.

Exit codes: 0 yes/success, 1 no (failed verification, disagreements found),
2 usage or parse errors and out-of-range forced algorithms, 3 internal
invariant violations (a JSON reproducer goes to stderr).  Set ``BCOLOR_LOG``
(e.g. to ``DEBUG``) for progress traces on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import time
from dataclasses import asdict, dataclass
from typing import Optional

from .cocluster import DEFAULT_SIGNATURE_CAP, cluster_modulator, solve_cocluster
from .coloring import ColoringFormatError, format_coloring, parse_coloring, verify_b_coloring
from .errors import CapExceeded, InternalInvariantError, ModulatorCapExceeded, StateBudgetExceeded
from .fen import compute_fen_core, pipeline_threshold, solve_fen
from .fuzz import run_fuzz
from .generators import (
    forest_plus_edges,
    multipartite_with_modulator,
    pivoted_tree,
    planted_stars,
    random_tree,
)
from .graph import Graph, GraphFormatError, complement, cycle_rank, format_graph, m_degree, parse_graph
from .reference import BRUTE_VERTEX_CAP, brute_force_b_coloring
from .treewidth import DEFAULT_STATE_BUDGET, combined_decomposition, solve_twdp

log = logging.getLogger("bcolor.cli")

# beyond this size the branching search for a small modulator is not worth
# the wait for a report line, so the field is reported as not computed
MODULATOR_SCAN_LIMIT = 64


class UsageError(Exception):
    """Command-line arguments that parse but do not make sense together."""


@dataclass
class Caps:
    """Size caps handed to the solvers, adjustable via ``--cap-*`` flags."""

    brute: int = BRUTE_VERTEX_CAP
    states: int = DEFAULT_STATE_BUDGET
    modulator: int = DEFAULT_SIGNATURE_CAP


@dataclass
class SolveReport:
    """Everything ``solve`` observed about one instance."""

    answer: str
    k: int
    algorithm: str
    n: int
    m: int
    feedback_edges: int
    m_degree: int
    modulator_size: Optional[int]
    modulator_searched: bool
    modulator_cap: int
    seconds: float
    witness_path: Optional[str] = None

    def to_json(self) -> dict:
        return asdict(self)

    def lines(self):
        yield f"answer: {self.answer}"
        yield f"k: {self.k}"
        yield f"algorithm: {self.algorithm}"
        yield f"graph: n={self.n} m={self.m}"
        yield f"feedback edges: {self.feedback_edges}"
        yield f"m-degree: {self.m_degree}"
        yield f"cocluster modulator: {_modulator_text(self.modulator_size, self.modulator_searched, self.modulator_cap)}"
        yield f"time: {self.seconds:.3f}s"
        if self.witness_path:
            yield f"witness: {self.witness_path}"


def _modulator_text(size: Optional[int], searched: bool, cap: int) -> str:
    if size is not None:
        return str(size)
    if searched:
        return f"> {cap} (cap)"
    return f"not computed (n > {MODULATOR_SCAN_LIMIT})"


def _modulator_size(g: Graph, cap: int) -> tuple[Optional[int], bool]:
    """Capped modulator search; ``(size or None, whether it was attempted)``."""
    if g.n > MODULATOR_SCAN_LIMIT:
        return None, False
    found = cluster_modulator(complement(g), cap)
    return (len(found) if found is not None else None), True


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _read_graph(path: str) -> Graph:
    return parse_graph(_read_text(path))


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _emit(args, payload: dict, lines) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


# -- solve ----------------------------------------------------------------


def _dispatch(g: Graph, k: int, algo: str, caps: Caps):
    """Run the requested solver; for ``auto`` walk the preference ladder."""
    if algo == "brute":
        return "brute", brute_force_b_coloring(g, k, cap=caps.brute)
    if algo == "twdp":
        return "twdp", solve_twdp(g, k, combined_decomposition(g), state_budget=caps.states)
    if algo == "cocluster":
        return "cocluster", solve_cocluster(g, k, signature_cap=caps.modulator)
    if algo == "fen":
        return "fen", solve_fen(g, k, state_budget=caps.states, brute_cap=caps.brute)
    threshold = pipeline_threshold(cycle_rank(g))
    if k >= threshold:
        log.debug("auto: k=%d at or above pipeline threshold %d", k, threshold)
        return "fen", solve_fen(g, k, state_budget=caps.states, brute_cap=caps.brute)
    try:
        log.debug("auto: trying tree-width dynamic program")
        return "twdp", solve_twdp(g, k, combined_decomposition(g), state_budget=caps.states)
    except StateBudgetExceeded:
        log.debug("auto: state budget %d exceeded", caps.states)
    try:
        log.debug("auto: trying co-cluster solver")
        return "cocluster", solve_cocluster(g, k, signature_cap=caps.modulator)
    except ModulatorCapExceeded:
        log.debug("auto: no modulator within cap %d", caps.modulator)
    if g.n <= caps.brute:
        log.debug("auto: falling back to brute force")
        return "brute", brute_force_b_coloring(g, k, cap=caps.brute)
    raise CapExceeded(
        f"no solver in range for n={g.n}, k={k}; "
        "raise --cap-brute, --cap-states or --cap-modulator"
    )


def cmd_solve(args) -> int:
    g = _read_graph(args.input)
    caps = Caps(brute=args.cap_brute, states=args.cap_states, modulator=args.cap_modulator)
    started = time.perf_counter()
    algorithm, witness = _dispatch(g, args.k, args.algo, caps)
    seconds = time.perf_counter() - started
    if witness is not None:
        report = verify_b_coloring(g, witness, args.k)
        if not report.is_b_coloring:
            raise InternalInvariantError(
                "reported-witness-rejected",
                algorithm=algorithm,
                k=args.k,
                problems=report.describe_lines(),
                edges=g.edges(),
                n=g.n,
            )
    witness_path = None
    if witness is not None and args.out:
        _write_text(args.out, format_coloring(args.k, witness, comment=f"witness k={args.k} via {algorithm}"))
        witness_path = args.out
    mod_size, mod_searched = _modulator_size(g, caps.modulator)
    report = SolveReport(
        answer="yes" if witness is not None else "no",
        k=args.k,
        algorithm=algorithm,
        n=g.n,
        m=g.m,
        feedback_edges=cycle_rank(g),
        m_degree=m_degree(g),
        modulator_size=mod_size,
        modulator_searched=mod_searched,
        modulator_cap=caps.modulator,
        seconds=round(seconds, 6),
        witness_path=witness_path,
    )
    payload = report.to_json()
    if witness is not None:
        payload["witness"] = {str(v): c for v, c in sorted(witness.items())}
    _emit(args, payload, report.lines())
    return 0 if witness is not None else 1


# -- gen ------------------------------------------------------------------


def _require(value, flag: str, kind: str):
    if value is None:
        raise UsageError(f"gen {kind} needs {flag}")
    return value


def cmd_gen(args) -> int:
    witness = None
    if args.kind == "tree":
        g = random_tree(_require(args.n, "--n", args.kind), args.seed)
    elif args.kind == "pivoted-tree":
        k = _require(args.k, "--k", args.kind)
        # the family is rigid; a nonzero seed varies it by growing a seeded
        # number of second-level leaves in degree-neutral spots
        decorate = 0 if args.seed == 0 else random.Random(args.seed).randint(1, k)
        g = pivoted_tree(k, unpivot=args.unpivot, decorate=decorate, seed=args.seed)
    elif args.kind == "fen":
        g = forest_plus_edges(_require(args.n, "--n", args.kind), args.extra, args.seed)
    elif args.kind == "cocluster":
        g = multipartite_with_modulator(
            _require(args.n, "--n", args.kind), args.parts, args.modulator, args.seed
        )
    else:  # planted
        g, witness = planted_stars(_require(args.k, "--k", args.kind), args.extra_or_none, args.seed)
    text = format_graph(g, comment=f"gen {args.kind} seed={args.seed}")
    witness_path = None
    if args.out:
        _write_text(args.out, text)
        if witness is not None:
            witness_path = args.out + ".col"
            _write_text(witness_path, format_coloring(args.k, witness, comment="planted witness"))
    payload = {"kind": args.kind, "n": g.n, "m": g.m, "path": args.out, "witness_path": witness_path}
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif args.out:
        note = f", witness in {witness_path}" if witness_path else ""
        print(f"wrote {args.out} (n={g.n}, m={g.m}{note})")
    else:
        sys.stdout.write(text)
    return 0


# -- fuzz -----------------------------------------------------------------


def cmd_fuzz(args) -> int:
    summary = run_fuzz(
        args.trials,
        args.max_n,
        args.seed,
        brute_cap=args.cap_brute,
        state_budget=args.cap_states,
        signature_cap=args.cap_modulator,
    )
    if args.json:
        print(json.dumps(summary.to_json(), indent=2, sort_keys=True))
    else:
        for bad in summary.disagreements:
            print(f"disagreement on trial {bad.trial}: {json.dumps(bad.to_json(), sort_keys=True)}")
        runs = ", ".join(f"{name}={count}" for name, count in sorted(summary.runs.items()))
        print(
            f"fuzz: {summary.trials} trials (max n {summary.max_n}, seed {summary.seed}); "
            f"runs {runs or 'none'}; {len(summary.disagreements)} disagreement(s)"
        )
    return 0 if summary.ok else 1


# -- params ---------------------------------------------------------------


def cmd_params(args) -> int:
    g = _read_graph(args.input)
    core = compute_fen_core(g)
    mod_size, mod_searched = _modulator_size(g, args.cap_modulator)
    payload = {
        "n": g.n,
        "m": g.m,
        "feedback_edges": cycle_rank(g),
        "m_degree": m_degree(g),
        "fen_core_size": core.size,
        "modulator_size": mod_size,
        "modulator_searched": mod_searched,
        "modulator_cap": args.cap_modulator,
    }
    lines = [
        f"n: {g.n}",
        f"m: {g.m}",
        f"feedback edges: {payload['feedback_edges']}",
        f"m-degree: {payload['m_degree']}",
        f"fen core size: {core.size}",
        f"cocluster modulator: {_modulator_text(mod_size, mod_searched, args.cap_modulator)}",
    ]
    _emit(args, payload, lines)
    return 0


# -- verify ---------------------------------------------------------------


def cmd_verify(args) -> int:
    g = _read_graph(args.input)
    k, coloring = parse_coloring(_read_text(args.coloring), n=g.n)
    if args.k is not None and args.k != k:
        raise UsageError(f"--k {args.k} contradicts the file header (k={k})")
    report = verify_b_coloring(g, coloring, k)
    payload = {"valid": report.is_b_coloring, "k": k, "problems": report.describe_lines()}
    if report.is_b_coloring:
        _emit(args, payload, [f"valid b-colouring with {k} colours"])
        return 0
    _emit(args, payload, report.describe_lines())
    return 1


# -- argument plumbing ----------------------------------------------------


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _add_cap_flags(sub) -> None:
    sub.add_argument("--cap-brute", type=_positive, default=BRUTE_VERTEX_CAP,
                     help="vertex cap for brute force (default %(default)s)")
    sub.add_argument("--cap-states", type=_positive, default=DEFAULT_STATE_BUDGET,
                     help="state budget for the tree-width dynamic program (default %(default)s)")
    sub.add_argument("--cap-modulator", type=_positive, default=DEFAULT_SIGNATURE_CAP,
                     help="co-cluster modulator size cap (default %(default)s)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bcolor", description="exact b-colouring toolkit")
    subs = parser.add_subparsers(dest="command", required=True)

    solve = subs.add_parser("solve", help="decide b-colourability with k colours")
    solve.add_argument("--input", required=True, help="graph file")
    solve.add_argument("--k", required=True, type=_positive, help="number of colours")
    solve.add_argument("--algo", choices=("auto", "brute", "twdp", "fen", "cocluster"),
                       default="auto", help="solver to use (default auto)")
    solve.add_argument("--out", help="write the witness colouring here on a yes")
    solve.add_argument("--json", action="store_true", help="machine-readable report")
    _add_cap_flags(solve)
    solve.set_defaults(func=cmd_solve)

    gen = subs.add_parser("gen", help="generate an instance")
    gen.add_argument("kind", choices=("tree", "pivoted-tree", "fen", "cocluster", "planted"))
    gen.add_argument("--n", type=_positive, help="vertex count (tree, fen, cocluster)")
    gen.add_argument("--k", type=_positive, help="colour count (pivoted-tree, planted)")
    gen.add_argument("--extra", type=_non_negative, default=None,
                     help="extra edges (fen: cycle edges, default 1; planted: cross edges, default seeded)")
    gen.add_argument("--parts", type=_positive, default=3, help="independent classes (cocluster)")
    gen.add_argument("--modulator", type=_non_negative, default=1, help="planted modulator size (cocluster)")
    gen.add_argument("--unpivot", action="store_true", help="add the pivot-breaking leaf (pivoted-tree)")
    gen.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")
    gen.add_argument("--out", help="write the graph here instead of stdout")
    gen.add_argument("--json", action="store_true", help="print metadata instead of the graph")
    gen.set_defaults(func=cmd_gen)

    fuzz = subs.add_parser("fuzz", help="differential-test the solvers")
    fuzz.add_argument("--trials", type=_non_negative, default=200, help="number of trials (default %(default)s)")
    fuzz.add_argument("--max-n", type=_positive, default=10, help="largest vertex count (default %(default)s)")
    fuzz.add_argument("--seed", type=int, default=0, help="base seed (default 0)")
    fuzz.add_argument("--json", action="store_true", help="machine-readable summary")
    _add_cap_flags(fuzz)
    fuzz.set_defaults(func=cmd_fuzz)

    params = subs.add_parser("params", help="print structural parameters")
    params.add_argument("--input", required=True, help="graph file")
    params.add_argument("--json", action="store_true", help="machine-readable output")
    params.add_argument("--cap-modulator", type=_positive, default=DEFAULT_SIGNATURE_CAP,
                        help="co-cluster modulator size cap (default %(default)s)")
    params.set_defaults(func=cmd_params)

    verify = subs.add_parser("verify", help="check a colouring file against a graph")
    verify.add_argument("coloring", help="colouring file")
    verify.add_argument("--input", required=True, help="graph file")
    verify.add_argument("--k", type=_positive, help="cross-check against the file header")
    verify.add_argument("--json", action="store_true", help="machine-readable output")
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    level = logging.getLevelName(os.environ.get("BCOLOR_LOG", "WARNING").upper())
    logging.basicConfig(
        level=level if isinstance(level, int) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
    args = _build_parser().parse_args(argv)
    if getattr(args, "kind", None) is not None:
        # fen and planted give --extra different defaults
        args.extra_or_none = args.extra
        if args.kind == "fen" and args.extra is None:
            args.extra = 1
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GraphFormatError, ColoringFormatError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 2
    except InternalInvariantError as exc:
        print(f"{exc}", file=sys.stderr)
        print(exc.reproducer_json(), file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())

"""Colourings: the text format, propriety checks and the b-colouring verifier.

A (partial) colouring is a plain ``dict`` mapping vertex -> colour; colours
are 1-based (matching the file format), vertices 0-based (matching
:class:`bcolor.graph.Graph`).  A *b-colouring* with ``k`` colours is a total
proper colouring where every colour ``1 .. k`` has a witness vertex whose
closed neighbourhood shows all ``k`` colours.

Colouring files look like::

    c optional comments
    s bcol <k>
    <vertex> <colour>

one vertex per line, both 1-indexed, colours within ``1 .. k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable

from .graph import Graph


class ColoringFormatError(ValueError):
    """Colouring text that does not parse or is out of range."""


def parse_coloring(text: str, n: int | None = None) -> tuple[int, Dict[int, int]]:
    """Parse colouring text into ``(k, {vertex: colour})`` (0-indexed vertices).

    If ``n`` is given, vertex indices are range-checked against it.
    """
    k = -1
    coloring: Dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if k < 0:
            if tokens[0] != "s" or len(tokens) != 3 or tokens[1] != "bcol":
                raise ColoringFormatError(f"line {lineno}: expected 's bcol <k>' header")
            try:
                k = int(tokens[2])
            except ValueError:
                raise ColoringFormatError(f"line {lineno}: non-integer colour count") from None
            if k < 1:
                raise ColoringFormatError(f"line {lineno}: colour count must be positive")
            continue
        if len(tokens) != 2:
            raise ColoringFormatError(f"line {lineno}: expected '<vertex> <colour>'")
        try:
            v, c = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ColoringFormatError(f"line {lineno}: non-integer entry") from None
        if v < 1 or (n is not None and v > n):
            raise ColoringFormatError(f"line {lineno}: vertex {v} out of range")
        if not 1 <= c <= k:
            raise ColoringFormatError(f"line {lineno}: colour {c} outside 1..{k}")
        if v - 1 in coloring:
            raise ColoringFormatError(f"line {lineno}: vertex {v} coloured twice")
        coloring[v - 1] = c
    if k < 0:
        raise ColoringFormatError("missing 's bcol <k>' header")
    return k, coloring


def format_coloring(k: int, coloring: Dict[int, int], comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {c}" for c in comment.splitlines())
    lines.append(f"s bcol {k}")
    lines.extend(f"{v + 1} {coloring[v]}" for v in sorted(coloring))
    return "\n".join(lines) + "\n"


# -- checks --------------------------------------------------------------


def is_proper(g: Graph, coloring: Dict[int, int]) -> bool:
    """True iff no edge joins two equal colours (uncoloured endpoints pass)."""
    for u, v in g.edges():
        if u in coloring and coloring.get(v) == coloring[u]:
            return False
    return True


def colors_used(coloring: Dict[int, int]) -> set[int]:
    return set(coloring.values())


def normalize_colors(coloring: Dict[int, int]) -> tuple[int, Dict[int, int]]:
    """Remap the colours onto ``1 .. t`` preserving their relative order."""
    remap = {c: i for i, c in enumerate(sorted(set(coloring.values())), start=1)}
    return len(remap), {v: remap[c] for v, c in coloring.items()}


@dataclass
class Violation:
    """One reason a candidate fails to be a k-b-colouring."""

    kind: str  # uncolored | color-out-of-range | improper-edge | missing-b-vertex
    vertices: tuple[int, ...] = ()
    color: int | None = None

    def describe(self) -> str:
        names = ", ".join(str(v + 1) for v in self.vertices)
        if self.kind == "uncolored":
            return f"vertex {names} has no colour"
        if self.kind == "color-out-of-range":
            return f"vertex {names} has colour {self.color} outside the palette"
        if self.kind == "improper-edge":
            return f"edge {names.replace(', ', '-')} joins two vertices of colour {self.color}"
        if self.kind == "missing-b-vertex":
            return f"colour {self.color} has no vertex seeing every colour"
        return self.kind


@dataclass
class BColoringReport:
    """Result of :func:`verify_b_coloring`."""

    is_b_coloring: bool
    proper: bool
    total: bool
    #: colour -> sorted list of witnesses seeing all k colours in N[.]
    b_vertices: Dict[int, list[int]] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)

    def describe_lines(self) -> list[str]:
        return [v.describe() for v in self.violations]


def verify_b_coloring(g: Graph, coloring: Dict[int, int], k: int) -> BColoringReport:
    """Check that ``coloring`` is a total proper b-colouring with ``k`` colours.

    All problems are collected (not just the first), so the report is usable
    as a diagnostic; ``b_vertices`` lists *every* witness per colour.
    """
    violations: list[Violation] = []
    total = True
    for v in range(g.n):
        if v not in coloring:
            total = False
            violations.append(Violation("uncolored", (v,)))
        elif not 1 <= coloring[v] <= k:
            violations.append(Violation("color-out-of-range", (v,), coloring[v]))
    proper = True
    for u, v in g.edges():
        if u in coloring and coloring.get(v) == coloring[u]:
            proper = False
            violations.append(Violation("improper-edge", (u, v), coloring[u]))
    full = set(range(1, k + 1))
    b_vertices: Dict[int, list[int]] = {c: [] for c in full}
    for v in range(g.n):
        c = coloring.get(v)
        if c not in full:
            continue
        seen = {coloring[w] for w in g.closed(v) if w in coloring}
        if full <= seen:
            b_vertices[c].append(v)
    for c in sorted(full):
        if not b_vertices[c]:
            violations.append(Violation("missing-b-vertex", (), c))
    ok = total and proper and all(b_vertices[c] for c in full)
    return BColoringReport(ok, proper, total, b_vertices, violations)

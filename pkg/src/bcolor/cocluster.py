"""Exact b-coloring for graphs that are close to complete multipartite.

A graph whose complement is a cluster graph (a disjoint union of cliques) is
complete multipartite.  Deleting a small *modulator* from the input reduces it
to that shape, and the structure of the remainder is coarse enough to describe
with finite summaries:

* every vertex outside the modulator interacts with the rest of its part only
  through its *adjacency pattern* (which modulator vertices it touches), and
* each part is described up to irrelevant detail by how many vertices of each
  pattern it contains, with counts capped once they stop mattering.

A *signature* records, for the colors reserved for the modulator side, which
part (if any) each color spills into and with which adjacency patterns.  The
solver enumerates signatures, builds the smallest partial coloring consistent
with each, and then decides which parts must absorb the remaining colors
wholesale.  Any choice consistent with the per-part classification extends to
a full b-coloring, so the search never backtracks across that last step.
"""

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .coloring import is_proper, verify_b_coloring
from .errors import InternalInvariantError, ModulatorCapExceeded
from .graph import Graph, complement, connected_components, induced_subgraph, m_degree

DEFAULT_SIGNATURE_CAP = 4


def _pattern_key(pattern):
    """Deterministic sort key for adjacency patterns (frozensets of vertices)."""
    return (len(pattern), tuple(sorted(pattern)))


class SetType:
    """How many vertices of each modulator-adjacency pattern a part contains.

    Counts are capped at one more than the number of modulator-side colors:
    beyond that point extra copies of a pattern can never change feasibility.
    Zero entries are dropped so equal profiles compare and hash equal.
    """

    __slots__ = ("_counts",)

    def __init__(self, counts):
        self._counts = {
            frozenset(pattern): count for pattern, count in counts.items() if count > 0
        }

    def count(self, pattern) -> int:
        return self._counts.get(frozenset(pattern), 0)

    @property
    def support(self):
        """Patterns with a nonzero count, in deterministic order."""
        return sorted(self._counts, key=_pattern_key)

    def items(self):
        return [(pattern, self._counts[pattern]) for pattern in self.support]

    def __eq__(self, other):
        if not isinstance(other, SetType):
            return NotImplemented
        return self._counts == other._counts

    def __hash__(self):
        return hash(frozenset(self._counts.items()))

    def __repr__(self):
        inner = ", ".join(
            "{%s}: %d" % (",".join(map(str, sorted(a))), c) for a, c in self.items()
        )
        return "SetType({%s})" % inner


def vertex_type_of(g: Graph, v: int, modulator) -> frozenset:
    """Adjacency pattern of ``v``: the modulator vertices it is adjacent to."""
    mset = frozenset(modulator)
    if v in mset:
        raise ValueError("vertex %d lies inside the modulator" % v)
    return frozenset(g.nbr_set(v) & mset)


def set_type_of(g: Graph, part, modulator, base_colors: int) -> SetType:
    """Pattern-count profile of a part, capped at ``base_colors + 1``."""
    cap = base_colors + 1
    counts = {}
    for u in part:
        pattern = vertex_type_of(g, u, modulator)
        counts[pattern] = counts.get(pattern, 0) + 1
    return SetType({a: min(cap, c) for a, c in counts.items()})


# ---------------------------------------------------------------------------
# Modulator search and decomposition
# ---------------------------------------------------------------------------


def _find_induced_p3(g: Graph, alive):
    """Lowest-indexed induced 2-edge path (a, center, c) among ``alive``."""
    for center in sorted(alive):
        nbrs = [v for v in g.neighbors(center) if v in alive]
        for i, a in enumerate(nbrs):
            for c in nbrs[i + 1 :]:
                if not g.has_edge(a, c):
                    return (a, center, c)
    return None


def _p3_branch(g, alive, depth, chosen):
    hit = _find_induced_p3(g, alive)
    if hit is None:
        return list(chosen)
    if depth == 0:
        return None
    for v in hit:
        alive.discard(v)
        chosen.append(v)
        found = _p3_branch(g, alive, depth - 1, chosen)
        chosen.pop()
        alive.add(v)
        if found is not None:
            return found
    return None


def cluster_modulator(g: Graph, budget: int) -> Optional[list]:
    """Minimum vertex set whose deletion leaves a disjoint union of cliques.

    Cluster graphs are exactly the graphs with no induced two-edge path, so we
    branch on such a path (delete one of its three vertices), with iterative
    deepening to guarantee a minimum-size answer.  Returns None when every
    hitting set is larger than ``budget``.
    """
    alive = set(g.vertices())
    for depth in range(max(0, budget) + 1):
        found = _p3_branch(g, alive, depth, [])
        if found is not None:
            return sorted(found)
    return None


@dataclass
class CoclusterDecomposition:
    """A graph split into a modulator and the parts of the multipartite rest.

    ``base_colors`` is the number of colors reserved for the modulator side of
    the analysis: the modulator size, capped at k (colors beyond k can never
    appear in a proper k-coloring).
    """

    g: Graph
    modulator: tuple
    parts: list
    base_colors: int
    vertex_types: dict
    part_types: list

    def describe(self):
        return "modulator=%r parts=%r base_colors=%d" % (
            list(self.modulator),
            [list(p) for p in self.parts],
            self.base_colors,
        )


def decomposition_from_modulator(g: Graph, modulator, k: int) -> CoclusterDecomposition:
    """Build the decomposition for a given modulator (not necessarily minimum).

    The parts are the connected components of the complement of G minus the
    modulator, i.e. the sides of the complete multipartite remainder.  Raises
    ValueError if the remainder is not complete multipartite.
    """
    mod = tuple(sorted(set(modulator)))
    rest = [v for v in g.vertices() if v not in set(mod)]
    sub, back = induced_subgraph(g, rest)
    co = complement(sub)
    if _find_induced_p3(co, set(co.vertices())) is not None:
        raise ValueError("graph minus modulator is not complete multipartite")
    # Component order follows lowest original vertex (back is monotone).
    parts = [tuple(back[x] for x in comp) for comp in connected_components(co)]
    base_colors = min(len(mod), k)
    vertex_types = {v: vertex_type_of(g, v, mod) for v in rest}
    part_types = [set_type_of(g, part, mod, base_colors) for part in parts]
    return CoclusterDecomposition(g, mod, parts, base_colors, vertex_types, part_types)


def cocluster_decomposition(g: Graph, k: int) -> CoclusterDecomposition:
    """Decompose around a *minimum* modulator, found by branching on the complement."""
    mod = cluster_modulator(complement(g), g.n)
    assert mod is not None  # deleting everything always works
    return decomposition_from_modulator(g, mod, k)


# ---------------------------------------------------------------------------
# Signatures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Signature:
    """How the modulator-side colors are laid out, up to irrelevant detail.

    modulator_coloring: color of each modulator vertex, aligned with the
        sorted modulator tuple; a proper coloring of the modulator subgraph.
    host_types: profiles of the distinct parts that absorb modulator-side
        colors, one slot per such part.
    host_of: for each color c (1-based, index c-1), the slot of the part where
        c appears outside the modulator, or None when c stays on the modulator.
    patterns: for each color, the set of adjacency patterns that receive that
        color inside its host part; empty exactly when the color has no host.

    Validity (checked by the enumerator, restated for tests):
      1. every slot is the host of at least one color;
      2. no profile is demanded more often than parts with that profile exist;
      3. for each slot and pattern, the number of colors placing that pattern
         in that slot is at most the slot profile's count for the pattern.
    """

    modulator_coloring: tuple
    host_types: tuple
    host_of: tuple
    patterns: tuple

    @property
    def num_hosts(self) -> int:
        return len(self.host_types)

    def modulator_color_map(self, dec: CoclusterDecomposition) -> dict:
        return {v: self.modulator_coloring[i] for i, v in enumerate(dec.modulator)}


def _proper_modulator_colorings(dec: CoclusterDecomposition):
    """All proper colorings of the modulator subgraph into the base colors."""
    mod = dec.modulator
    pos = {v: i for i, v in enumerate(mod)}
    inner_edges = [
        (pos[u], pos[v]) for u, v in dec.g.edges() if u in pos and v in pos
    ]
    for assignment in product(range(1, dec.base_colors + 1), repeat=len(mod)):
        if all(assignment[i] != assignment[j] for i, j in inner_edges):
            yield assignment


def _host_type_choices(dec: CoclusterDecomposition, num_hosts: int):
    """Tuples of part profiles of the given length, bounded by availability."""
    avail = {}
    uniq = []
    for t in dec.part_types:
        if t not in avail:
            uniq.append(t)
        avail[t] = avail.get(t, 0) + 1
    for combo in product(uniq, repeat=num_hosts):
        used = {}
        ok = True
        for t in combo:
            used[t] = used.get(t, 0) + 1
            if used[t] > avail[t]:
                ok = False
                break
        if ok:
            yield combo


def _pattern_assignments(host_types, host_of, base_colors):
    """All per-color pattern sets obeying the per-slot capacity bounds.

    Colors are processed in ascending order; a color with no host gets the
    empty pattern set, a hosted color any nonempty subset of its slot
    profile's support that still fits the joint per-(slot, pattern) budget.
    """
    supports = [t.support for t in host_types]
    chosen = []
    used = {}

    def rec(c_idx):
        if c_idx == base_colors:
            yield tuple(chosen)
            return
        slot = host_of[c_idx]
        if slot is None:
            chosen.append(frozenset())
            yield from rec(c_idx + 1)
            chosen.pop()
            return
        support = supports[slot]
        profile = host_types[slot]
        for mask in range(1, 1 << len(support)):
            picked = [support[j] for j in range(len(support)) if mask >> j & 1]
            if any(used.get((slot, a), 0) + 1 > profile.count(a) for a in picked):
                continue
            for a in picked:
                used[(slot, a)] = used.get((slot, a), 0) + 1
            chosen.append(frozenset(picked))
            yield from rec(c_idx + 1)
            chosen.pop()
            for a in picked:
                used[(slot, a)] -= 1
        return

    yield from rec(0)


def enumerate_signatures(dec: CoclusterDecomposition, *, cap: int = DEFAULT_SIGNATURE_CAP):
    """Yield every signature of the decomposition, each exactly once.

    Only canonical signatures are produced: a color's pattern set is empty
    exactly when the color has no host part.  Pattern sets attached to
    host-less colors never influence the induced partial coloring, and the
    signature extracted from an actual b-coloring is always canonical, so
    nothing is lost — while the raw space would be doubly exponentially
    larger for no benefit.

    Raises ModulatorCapExceeded when there are more base colors than ``cap``
    allows; the enumeration is doubly exponential in that number.
    """
    if dec.base_colors > cap:
        raise ModulatorCapExceeded(
            "signature enumeration over %d base colors exceeds cap %d"
            % (dec.base_colors, cap)
        )
    base = dec.base_colors
    for modulator_coloring in _proper_modulator_colorings(dec):
        for num_hosts in range(0, base + 1):
            for host_types in _host_type_choices(dec, num_hosts):
                for host_of in product([None] + list(range(num_hosts)), repeat=base):
                    if not set(range(num_hosts)) <= {s for s in host_of if s is not None}:
                        continue
                    for patterns in _pattern_assignments(host_types, host_of, base):
                        yield Signature(modulator_coloring, host_types, host_of, patterns)


def minimal_signature_coloring(sig: Signature, dec: CoclusterDecomposition) -> dict:
    """Smallest partial coloring realizing a signature.

    Colors the modulator, then for each hosted color places exactly one vertex
    per demanded adjacency pattern inside the host part.  Slots are mapped to
    the lowest-indexed unused part of the right profile, and within a part the
    lowest-indexed uncolored vertex of the right pattern is taken; signature
    validity guarantees both always exist.
    """
    coloring = sig.modulator_color_map(dec)
    taken = set()
    host_part = []
    for t in sig.host_types:
        j = next(
            (j for j in range(len(dec.parts)) if j not in taken and dec.part_types[j] == t),
            None,
        )
        assert j is not None, "signature demands a part profile the graph lacks"
        taken.add(j)
        host_part.append(j)
    for c in range(1, dec.base_colors + 1):
        slot = sig.host_of[c - 1]
        if slot is None:
            continue
        part = dec.parts[host_part[slot]]
        for pattern in sorted(sig.patterns[c - 1], key=_pattern_key):
            v = next(
                (u for u in part if u not in coloring and dec.vertex_types[u] == pattern),
                None,
            )
            assert v is not None, "signature demands more pattern copies than exist"
            coloring[v] = c
    return coloring


# ---------------------------------------------------------------------------
# Candidate sets and part classification
# ---------------------------------------------------------------------------


def candidate_subsets(base_coloring: dict, dec: CoclusterDecomposition):
    """Stream the sets of prospective b-vertices for the base colors.

    Each yielded tuple holds one colored vertex per base color whose closed
    neighborhood already sees every base color.  Expects a proper partial
    coloring (callers filter improper ones first).
    """
    base = dec.base_colors
    if base == 0:
        yield ()
        return
    g = dec.g
    full = set(range(1, base + 1))
    pools = []
    for c in range(1, base + 1):
        pool = []
        for v in sorted(base_coloring):
            if base_coloring[v] != c:
                continue
            seen = {base_coloring[w] for w in g.neighbors(v) if w in base_coloring}
            seen.add(c)
            if full <= seen:
                pool.append(v)
        if not pool:
            return
        pools.append(pool)
    for combo in product(*pools):
        yield tuple(sorted(combo))


class PartFlags:
    """Classification of one part against a candidate set."""

    __slots__ = ("is_candidate", "is_flexible")

    def __init__(self, is_candidate, is_flexible):
        self.is_candidate = bool(is_candidate)
        self.is_flexible = bool(is_flexible)

    def __eq__(self, other):
        if not isinstance(other, PartFlags):
            return NotImplemented
        return (self.is_candidate, self.is_flexible) == (
            other.is_candidate,
            other.is_flexible,
        )

    def __repr__(self):
        return "PartFlags(is_candidate=%r, is_flexible=%r)" % (
            self.is_candidate,
            self.is_flexible,
        )


def classify_part(part, base_coloring, candidate_set, dec: CoclusterDecomposition) -> PartFlags:
    """Decide whether a part may host a leftover color, must not, or either.

    *Candidate*: the part could receive one of the colors beyond the base
    ones — every prospective b-vertex has an uncolored neighbor inside it (so
    the new color appears in their neighborhoods), and some uncolored vertex
    in it already sees all base colors (the b-vertex for the new color).

    *Flexible*: the part can instead dissolve into the base colors — every
    uncolored vertex has a colored vertex of the same adjacency pattern in the
    part whose color it can copy.  Within one part, sharing a pattern is the
    same as being interchangeable, since both vertices see all other parts.
    """
    g = dec.g
    uncolored = [u for u in part if u not in base_coloring]
    flexible = all(
        any(
            w in base_coloring and dec.vertex_types[w] == dec.vertex_types[u]
            for w in part
        )
        for u in uncolored
    )
    reaches_all = all(
        any(g.has_edge(b, u) for u in uncolored) for b in candidate_set
    )
    full = set(range(1, dec.base_colors + 1))
    has_witness = any(
        full <= {base_coloring[w] for w in g.neighbors(u) if w in base_coloring}
        for u in uncolored
    )
    return PartFlags(reaches_all and has_witness, flexible)


@dataclass
class PartClassification:
    """Flags for every part, with the derived must-use / may-use index lists."""

    flags: list
    required: list  # candidate and not flexible: must receive a leftover color
    optional: list  # candidate and flexible: free to go either way

    @property
    def all_covered(self) -> bool:
        return all(f.is_candidate or f.is_flexible for f in self.flags)


def classify_parts(base_coloring, candidate_set, dec: CoclusterDecomposition) -> PartClassification:
    flags = [
        classify_part(part, base_coloring, candidate_set, dec) for part in dec.parts
    ]
    required = [i for i, f in enumerate(flags) if f.is_candidate and not f.is_flexible]
    optional = [i for i, f in enumerate(flags) if f.is_candidate and f.is_flexible]
    return PartClassification(flags, required, optional)


# ---------------------------------------------------------------------------
# Assembly
# ---------------------------------------------------------------------------


def assemble_coloring(base_coloring, candidate_set, chosen_parts, dec, k: int) -> dict:
    """Extend a partial coloring to a total k-coloring, part by part.

    The chosen parts absorb the colors beyond the base ones (one color each,
    ascending color to ascending part index); every other part dissolves, each
    uncolored vertex copying the color of a same-pattern colored vertex.
    Preconditions (right count of chosen parts, all of them candidates, the
    rest flexible) are re-checked and violations raise ValueError.
    """
    chosen = sorted(set(chosen_parts))
    if len(chosen) != k - dec.base_colors:
        raise ValueError(
            "need exactly %d chosen parts, got %d" % (k - dec.base_colors, len(chosen))
        )
    for j in chosen:
        if not classify_part(dec.parts[j], base_coloring, candidate_set, dec).is_candidate:
            raise ValueError("part %d is not a candidate" % j)
    for j in range(len(dec.parts)):
        if j not in set(chosen) and not classify_part(
            dec.parts[j], base_coloring, candidate_set, dec
        ).is_flexible:
            raise ValueError("unchosen part %d is not flexible" % j)

    out = dict(base_coloring)
    for offset, j in enumerate(chosen):
        c = dec.base_colors + 1 + offset
        for u in dec.parts[j]:
            if u not in base_coloring:
                out[u] = c
    chosen_set = set(chosen)
    for j, part in enumerate(dec.parts):
        if j in chosen_set:
            continue
        for u in part:
            if u in out:
                continue
            w = next(
                v
                for v in part
                if v in base_coloring and dec.vertex_types[v] == dec.vertex_types[u]
            )
            out[u] = base_coloring[w]
    return out


# ---------------------------------------------------------------------------
# Solver
# ---------------------------------------------------------------------------


def solve_cocluster(g: Graph, k: int, *, signature_cap: int = DEFAULT_SIGNATURE_CAP) -> Optional[dict]:
    """Exact b-coloring through the modulator-and-signature search.

    Enumerates signatures, realizes each as a minimal partial coloring,
    discards improper ones, and for each surviving coloring tries every
    candidate set: when the per-part classification leaves a workable split
    (no part stuck, and the must-use count fits under k minus the base
    colors while must-use plus may-use reaches it), assembly succeeds and
    the witness is returned.  Returns None when no signature works.
    """
    if k < 1:
        raise ValueError("k must be at least 1, got %d" % k)
    if k > m_degree(g):
        return None
    dec = cocluster_decomposition(g, k)
    if dec.base_colors > signature_cap:
        raise ModulatorCapExceeded(
            "instance needs %d base colors, cap is %d" % (dec.base_colors, signature_cap)
        )
    leftover = k - dec.base_colors
    for sig in enumerate_signatures(dec, cap=signature_cap):
        base_coloring = minimal_signature_coloring(sig, dec)
        if not is_proper(g, base_coloring):
            continue
        for candidate_set in candidate_subsets(base_coloring, dec):
            cls = classify_parts(base_coloring, candidate_set, dec)
            if not cls.all_covered:
                continue
            if len(cls.required) > leftover:
                continue
            if len(cls.required) + len(cls.optional) < leftover:
                continue
            chosen = cls.required + cls.optional[: leftover - len(cls.required)]
            coloring = assemble_coloring(base_coloring, candidate_set, chosen, dec, k)
            report = verify_b_coloring(g, coloring, k)
            if not report.is_b_coloring:
                raise InternalInvariantError(
                    "cocluster-assembled-witness-invalid",
                    n=g.n,
                    edges=g.edges(),
                    k=k,
                    coloring=coloring,
                )
            return coloring
    return None

"""Repair cascade: planted pivots, trivial paths, and output feasibility."""

from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from bcolor.errors import InternalInvariantError
from bcolor.fen import (
    Plan,
    block_check,
    eliminate_pivot,
    find_pivot,
    realization_defects,
    redundancy,
)
from bcolor.graph import Graph
from helpers import sparse_graphs
from test_fen_realization import pipeline_states


def assert_feasible(g, out, k):
    """The output contract: no obstruction survives and the books balance."""
    assert out.pivot_free is True and out.block_free is True
    assert out.damage_free
    assert find_pivot(out, g, k) is None
    assert block_check(out, g, k) is None
    assert realization_defects(g, out, k) == []
    assert out.safety_level <= 13
    full = out.coloring()
    for v in sorted(out.seats):
        assert redundancy(g, full, v, k) >= 0


def leafy(edges, n, parent, count):
    """Attach ``count`` fresh leaves to ``parent``; returns the new size."""
    for _ in range(count):
        edges.append((parent, n))
        n += 1
    return n


def planted_shift_tree():
    """A four-color tree whose one pipeline state has a pivot at vertex 1.

    Vertex 1 stays uncolored (degree two keeps it out of the candidate
    set) while its parent 0 and child 4 are tight seats whose ties reach
    the other two colors, so 1 sees the full spectrum.  Candidate 7 sits
    four steps from the pivot, outside its bare reach: the repair must
    seat it on a dispensable color.
    """
    edges = [(0, 1), (0, 2), (0, 3), (1, 4), (4, 5), (4, 6), (5, 7)]
    n = 8
    n = leafy(edges, n, 2, 2)
    n = leafy(edges, n, 3, 2)
    n = leafy(edges, n, 7, 2)
    return Graph(n, edges), 4


def planted_distant_tree():
    """An 18-color tree: pivot at the root, one candidate out of reach.

    The root's two tight neighbours 1 and 2 relay the sixteen satellite
    seats, covering all eighteen colors.  Vertex 19 hangs off a leaf of
    satellite 18 at distance four: a candidate the pivot cannot reach,
    so the repair shifts a middle-of-nowhere satellite color onto it.
    """
    edges = [(0, 1), (0, 2)]
    for v in range(3, 11):
        edges.append((1, v))
    for v in range(11, 19):
        edges.append((2, v))
    n = 20  # vertex 19 is wired up below, off satellite 18's first leaf
    n = leafy(edges, n, 1, 8)
    n = leafy(edges, n, 2, 8)
    first_leaf = {}
    for v in range(3, 19):
        first_leaf[v] = n
        n = leafy(edges, n, v, 16)
    edges.append((first_leaf[18], 19))
    n = leafy(edges, n, 19, 16)
    return Graph(n, edges), 18


def planted_gate_tree():
    """An 18-color tree where every candidate sits in the pivot's reach.

    The root pivots the eighteen seats (three neighbours plus fifteen
    satellites); the two unseated candidates 19 and 20 are still tied to
    it through tight relays, so no distant candidate and no escaped seat
    exists.  The repair has to thread a seat past the gate vertex 1:
    clear it out of the chosen set and seat its neighbour 4 instead.
    """
    edges = [(0, 1), (0, 2), (0, 3)]
    for v in range(4, 12):
        edges.append((1, v))
    for v in range(12, 20):
        edges.append((2, v))
    edges.append((3, 20))
    n = 21
    n = leafy(edges, n, 1, 8)
    n = leafy(edges, n, 2, 8)
    n = leafy(edges, n, 3, 15)
    for v in range(4, 21):
        n = leafy(edges, n, v, 16)
    return Graph(n, edges), 18


def one_state(g, k):
    _, states = pipeline_states(g, k)
    assert len(states) == 1
    return states[0]


def repaired(g, k):
    re = one_state(g, k)
    return re, eliminate_pivot(re, re.plan, re.profile, re.core, g, k)


# -- trivial and refused inputs ------------------------------------------


class TestPassThrough:
    def test_pivot_free_input_comes_back_unchanged(self, t_np):
        re = one_state(t_np, 4)
        assert find_pivot(re, t_np, 4) is None
        out = eliminate_pivot(re, re.plan, re.profile, re.core, t_np, 4)
        assert out.choices == re.choices
        assert out.safety_level == re.safety_level == 0
        assert_feasible(t_np, out, 4)
        # flags are recomputed on a copy; the input object stays untouched
        assert re.pivot_free is None and re.block_free is None

    def test_foreign_plan_is_refused(self, t_np):
        re = one_state(t_np, 4)
        with pytest.raises(InternalInvariantError) as err:
            eliminate_pivot(re, Plan(5, ()), re.profile, re.core, t_np, 4)
        assert err.value.check_id == "repair-context-mismatch"

    def test_defective_input_is_refused(self, t_np):
        re = one_state(t_np, 4)
        twisted = dict(re.choices)
        twisted[1] = twisted[2]
        bad = replace(re, choices=twisted)
        with pytest.raises(InternalInvariantError) as err:
            eliminate_pivot(bad, bad.plan, bad.profile, bad.core, t_np, 4)
        assert err.value.check_id == "input-realization-defective"


# -- planted pivots, repaired end to end ---------------------------------


class TestDistantCandidateShift:
    def test_pipeline_builds_the_pivot(self):
        g, k = planted_shift_tree()
        core, _ = pipeline_states(g, k)
        assert core.backbone == ()
        re = one_state(g, k)
        assert re.choices == {1: 0, 2: 2, 3: 3, 4: 4}
        wit = find_pivot(re, g, k)
        assert wit is not None and wit.u == 1
        assert set(wit.pivoted) == {0, 2, 3, 4}

    def test_repair_seats_the_distant_candidate(self):
        g, k = planted_shift_tree()
        _, out = repaired(g, k)
        # color 2 walks to the distant candidate; its old seat is the one
        # vertex now passed over beyond the promise, recorded as exception
        assert out.choices == {1: 0, 2: 7, 3: 3, 4: 4}
        assert out.safety_level == 1
        assert out.almost_safe_witness == 2
        assert_feasible(g, out, k)

    def test_repair_is_idempotent_on_its_output(self):
        g, k = planted_shift_tree()
        _, once = repaired(g, k)
        again = eliminate_pivot(
            once, once.plan, once.profile, once.core, g, k
        )
        assert again.choices == once.choices
        assert again.safety_level == once.safety_level
        assert_feasible(g, again, k)

    def test_eighteen_color_variant(self):
        g, k = planted_distant_tree()
        re, out = repaired(g, k)
        assert re.choices == {c: c for c in range(1, 19)}
        assert find_pivot(re, g, k) is not None
        # the satellite color 3 moves out to the unreachable candidate
        assert out.choices[3] == 19
        assert out.choices[1] == 1 and out.choices[2] == 2
        assert out.safety_level == 1
        assert out.almost_safe_witness is None
        assert_feasible(g, out, k)


class TestSeatPastGate:
    def test_every_candidate_close_forces_the_gate_route(self):
        g, k = planted_gate_tree()
        re = one_state(g, k)
        wit = find_pivot(re, g, k)
        assert wit is not None and wit.u == 0
        assert set(wit.pivoted) == set(range(1, 19))
        out = eliminate_pivot(re, re.plan, re.profile, re.core, g, k)
        # the gate vertex 1 lost its seat, its child 4 holds that color
        # now, and the displaced satellite color landed on the spare
        assert 1 not in out.chosen
        assert out.choices[1] == 4
        assert out.choices[4] == 19
        assert out.safety_level == 3
        assert out.almost_safe_witness == 1
        assert_feasible(g, out, k)


# -- property: whatever comes back is feasible ---------------------------


class TestRepairContract:
    @settings(max_examples=100, deadline=None)
    @given(sparse_graphs(max_n=14, max_extra=3), st.integers(1, 4))
    def test_feasible_or_loud(self, g, k):
        """Pipeline states either pass through / repair to feasibility or
        abort with the invariant error -- and the abort may only happen
        when there was repair work to do (tiny color budgets sit below
        the solver's operating threshold, where the cascade's counting
        arguments are out of contract)."""
        _, states = pipeline_states(g, k, cap=8)
        for re in states:
            quiet = (
                find_pivot(re, g, k) is None
                and block_check(re, g, k) is None
            )
            try:
                out = eliminate_pivot(re, re.plan, re.profile, re.core, g, k)
            except InternalInvariantError:
                assert not quiet
                continue
            assert_feasible(g, out, k)
            if quiet:
                assert out.choices == re.choices

"""End-to-end command behaviour: exit codes, report formats, determinism."""

from __future__ import annotations

import json

import pytest

from bcolor.cli import main
from bcolor.errors import InternalInvariantError
from bcolor.generators import pivoted_tree
from bcolor.graph import cycle_rank, format_graph, parse_graph


def run(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


@pytest.fixture
def gim_file(tmp_path, g_im):
    path = tmp_path / "gim.gr"
    path.write_text(format_graph(g_im))
    return str(path)


@pytest.fixture
def deep_file(tmp_path):
    path = tmp_path / "deep.gr"
    path.write_text(format_graph(pivoted_tree(18)))
    return str(path)


class TestSolve:
    def test_no_below_the_gap(self, capsys, gim_file):
        rc, out, _ = run(capsys, ["solve", "--input", gim_file, "--k", "3", "--algo", "brute"])
        assert rc == 1
        assert "answer: no" in out

    def test_yes_with_stored_witness(self, capsys, gim_file, tmp_path):
        witness = str(tmp_path / "w.col")
        rc, out, _ = run(capsys, ["solve", "--input", gim_file, "--k", "4", "--out", witness])
        assert rc == 0
        assert "answer: yes" in out and witness in out
        rc, out, _ = run(capsys, ["verify", "--input", gim_file, witness])
        assert rc == 0
        assert "valid b-colouring with 4 colours" in out

    def test_json_report_carries_the_parameters(self, capsys, gim_file):
        rc, out, _ = run(capsys, ["solve", "--input", gim_file, "--k", "2", "--json"])
        assert rc == 0
        data = json.loads(out)
        assert data["answer"] == "yes"
        assert data["algorithm"] == "twdp"
        assert data["feedback_edges"] == 5
        assert data["m_degree"] == 4
        assert len(data["witness"]) == 8

    def test_deep_pivoted_tree_is_refused_by_the_pipeline(self, capsys, deep_file):
        rc, out, _ = run(capsys, ["solve", "--input", deep_file, "--k", "18", "--algo", "fen"])
        assert rc == 1
        assert "answer: no" in out
        rc, out, _ = run(capsys, ["solve", "--input", deep_file, "--k", "18"])
        assert "algorithm: fen" in out

    def test_forced_brute_respects_its_cap(self, capsys, tmp_path):
        big = str(tmp_path / "big.gr")
        run(capsys, ["gen", "tree", "--n", "20", "--out", big])
        rc, _, err = run(capsys, ["solve", "--input", big, "--k", "3", "--algo", "brute"])
        assert rc == 2
        assert "cap exceeded" in err

    def test_forced_twdp_respects_its_budget(self, capsys, tmp_path):
        big = str(tmp_path / "big.gr")
        run(capsys, ["gen", "tree", "--n", "20", "--out", big])
        rc, _, err = run(capsys, ["solve", "--input", big, "--k", "3", "--algo", "twdp", "--cap-states", "10"])
        assert rc == 2
        assert "cap exceeded" in err

    def test_auto_walks_past_a_starved_budget(self, capsys, tmp_path):
        big = str(tmp_path / "big.gr")
        run(capsys, ["gen", "tree", "--n", "20", "--out", big])
        rc, out, _ = run(capsys, ["solve", "--input", big, "--k", "3", "--cap-states", "10"])
        assert rc == 0
        assert "algorithm: cocluster" in out

    def test_missing_input_file(self, capsys, tmp_path):
        rc, _, err = run(capsys, ["solve", "--input", str(tmp_path / "nope.gr"), "--k", "2"])
        assert rc == 2
        assert "error" in err

    def test_malformed_graph(self, capsys, tmp_path):
        path = tmp_path / "bad.gr"
        path.write_text("p edge not numbers\n")
        rc, _, err = run(capsys, ["solve", "--input", str(path), "--k", "2"])
        assert rc == 2
        assert "parse error" in err

    def test_internal_invariant_maps_to_exit_three(self, capsys, monkeypatch, gim_file):
        def boom(*_args, **_kwargs):
            raise InternalInvariantError("sentinel-check", detail=1)

        monkeypatch.setattr("bcolor.cli.solve_fen", boom)
        rc, _, err = run(capsys, ["solve", "--input", gim_file, "--k", "2", "--algo", "fen"])
        assert rc == 3
        assert "sentinel-check" in err

    def test_debug_traces_reach_stderr(self, capsys, monkeypatch, gim_file):
        monkeypatch.setenv("BCOLOR_LOG", "DEBUG")
        rc, _, err = run(capsys, ["solve", "--input", gim_file, "--k", "2"])
        assert rc == 0
        assert "auto:" in err


class TestGen:
    def test_small_pivoted_tree_reproduces_the_benchmark(self, capsys, t_piv):
        rc, out, _ = run(capsys, ["gen", "pivoted-tree", "--k", "4"])
        assert rc == 0
        assert parse_graph(out) == t_piv

    def test_unpivot_adds_one_leaf(self, capsys):
        rc, out, _ = run(capsys, ["gen", "pivoted-tree", "--k", "4", "--unpivot"])
        assert parse_graph(out).n == 12

    def test_cycle_count_is_exact(self, capsys):
        rc, out, _ = run(capsys, ["gen", "fen", "--n", "50", "--extra", "3"])
        assert cycle_rank(parse_graph(out)) == 3

    def test_output_is_deterministic(self, capsys):
        _, first, _ = run(capsys, ["gen", "tree", "--n", "20", "--seed", "7"])
        _, second, _ = run(capsys, ["gen", "tree", "--n", "20", "--seed", "7"])
        assert first == second

    def test_planted_witness_lands_in_a_sidecar(self, capsys, tmp_path):
        path = str(tmp_path / "planted.gr")
        rc, out, _ = run(capsys, ["gen", "planted", "--k", "3", "--seed", "2", "--out", path])
        assert rc == 0
        assert path + ".col" in out
        rc, _, _ = run(capsys, ["verify", "--input", path, path + ".col"])
        assert rc == 0

    def test_cocluster_kind_has_the_requested_size(self, capsys):
        rc, out, _ = run(capsys, ["gen", "cocluster", "--n", "9", "--parts", "3", "--modulator", "1"])
        assert parse_graph(out).n == 9

    def test_missing_kind_parameter(self, capsys):
        rc, _, err = run(capsys, ["gen", "tree"])
        assert rc == 2
        assert "--n" in err

    def test_json_metadata(self, capsys, tmp_path):
        path = str(tmp_path / "t.gr")
        rc, out, _ = run(capsys, ["gen", "tree", "--n", "8", "--out", path, "--json"])
        data = json.loads(out)
        assert data["kind"] == "tree" and data["n"] == 8 and data["path"] == path


class TestFuzz:
    def test_clean_run_exits_zero(self, capsys):
        rc, out, _ = run(capsys, ["fuzz", "--trials", "30", "--max-n", "7", "--seed", "5"])
        assert rc == 0
        assert "0 disagreement(s)" in out

    def test_replay_is_deterministic(self, capsys):
        _, first, _ = run(capsys, ["fuzz", "--trials", "15", "--max-n", "6", "--seed", "3", "--json"])
        _, second, _ = run(capsys, ["fuzz", "--trials", "15", "--max-n", "6", "--seed", "3", "--json"])
        assert first == second
        assert json.loads(first)["disagreements"] == []


class TestParams:
    def test_known_parameters_of_the_gap_graph(self, capsys, gim_file):
        rc, out, _ = run(capsys, ["params", "--input", gim_file])
        assert rc == 0
        assert "feedback edges: 5" in out
        assert "m-degree: 4" in out

    def test_large_graph_skips_the_modulator_search(self, capsys, deep_file):
        rc, out, _ = run(capsys, ["params", "--input", deep_file, "--json"])
        data = json.loads(out)
        assert data["n"] == 291
        assert data["m_degree"] == 18
        assert data["modulator_searched"] is False


class TestVerify:
    def test_rejects_a_colouring_missing_a_b_vertex(self, capsys, gim_file, tmp_path):
        path = tmp_path / "weak.col"
        # proper with two colours but the header claims three
        path.write_text("s bcol 3\n" + "".join(f"{v} {1 if v <= 4 else 2}\n" for v in range(1, 9)))
        rc, out, _ = run(capsys, ["verify", "--input", gim_file, str(path)])
        assert rc == 1
        assert out.strip()

    def test_colour_out_of_range_is_a_parse_error(self, capsys, gim_file, tmp_path):
        path = tmp_path / "bad.col"
        path.write_text("s bcol 3\n1 9\n")
        rc, _, err = run(capsys, ["verify", "--input", gim_file, str(path)])
        assert rc == 2
        assert "outside" in err

    def test_header_contradiction_is_a_usage_error(self, capsys, gim_file, tmp_path):
        path = tmp_path / "w.col"
        run(capsys, ["solve", "--input", gim_file, "--k", "4", "--out", str(path)])
        rc, _, err = run(capsys, ["verify", "--input", gim_file, str(path), "--k", "5"])
        assert rc == 2
        assert "contradicts" in err

    def test_json_verdict(self, capsys, gim_file, tmp_path):
        path = tmp_path / "w.col"
        run(capsys, ["solve", "--input", gim_file, "--k", "2", "--out", str(path)])
        rc, out, _ = run(capsys, ["verify", "--input", gim_file, str(path), "--json"])
        assert rc == 0
        assert json.loads(out) == {"valid": True, "k": 2, "problems": []}


class TestUsage:
    def test_no_subcommand_is_a_usage_error(self):
        with pytest.raises(SystemExit) as err:
            main([])
        assert err.value.code == 2

    def test_unknown_algorithm_is_a_usage_error(self, capsys, gim_file):
        with pytest.raises(SystemExit) as err:
            main(["solve", "--input", gim_file, "--k", "2", "--algo", "magic"])
        assert err.value.code == 2
        capsys.readouterr()

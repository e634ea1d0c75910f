"""Exit codes, file outputs, and stdout formats of the command line."""

from __future__ import annotations

import subprocess
import sys

import pytest

from bifactor import (
    StuckReport,
    cli,
    complete_bipartite,
    complete_bipartite_minus_matching,
    cycle_graph,
    double_graph,
    make_certificate,
    parse_graph,
    path_graph,
    serialize_graph,
    star_pair_graph,
)
from bifactor.cli import main
from bifactor.connect import _build_stuck_report
from bifactor.errors import TheoremContradictionError
from bifactor.factors import DegreeDemand
from bifactor.graph import BipartiteGraph, Factor
from bifactor.suites import TrialResult


@pytest.fixture
def graph_file(tmp_path):
    def write(graph, name="host.graph"):
        path = tmp_path / name
        path.write_text(serialize_graph(graph))
        return str(path)

    return write


class TestFactorCommand:
    def test_success_writes_factor_file(self, graph_file, tmp_path, capsys):
        path = graph_file(complete_bipartite(2, 2))
        assert main(["factor", path, "--k", "1"]) == 0
        out = tmp_path / "host.graph.factor"
        assert out.read_text() == "factor 1 2\n0 0\n1 1\n"
        assert "factor written" in capsys.readouterr().out

    def test_infeasible_writes_violator(self, graph_file, tmp_path):
        path = graph_file(path_graph(4))
        assert main(["factor", path, "--k", "2"]) == 2
        out = tmp_path / "host.graph.violator"
        assert out.read_text() == "violator 1\n0\nlhs 2\nrhs 1\n"

    def test_explicit_out_path(self, graph_file, tmp_path):
        path = graph_file(complete_bipartite(2, 2))
        target = str(tmp_path / "m.factor")
        assert main(["factor", path, "--k", "1", "--out", target]) == 0
        assert (tmp_path / "m.factor").exists()

    def test_negative_k_is_usage_error(self, graph_file):
        assert main(["factor", graph_file(complete_bipartite(2, 2)), "--k", "-1"]) == 64

    def test_missing_file(self):
        with pytest.raises(SystemExit) as err:
            main(["factor", "/no/such/file", "--k", "1"])
        assert err.value.code == 64

    def test_malformed_file_reports_line(self, tmp_path, capsys):
        bad = tmp_path / "bad.graph"
        bad.write_text("bipartite 2 2 1\n9 9\n")
        with pytest.raises(SystemExit) as err:
            main(["factor", str(bad), "--k", "1"])
        assert err.value.code == 64
        assert "line 2" in capsys.readouterr().err


class TestConnectCommand:
    def test_dense_host(self, graph_file, tmp_path):
        g = complete_bipartite_minus_matching(13, [(i, i) for i in range(13)])
        path = graph_file(g)
        assert main(["connect", path, "--k", "2", "--l", "3"]) == 0
        text = (tmp_path / "host.graph.connected").read_text()
        assert text.startswith("factor 2 26\n")
        assert "cycle X0 " in text

    def test_hamilton_pipeline(self, graph_file, tmp_path):
        path = graph_file(double_graph(cycle_graph(3)))
        assert main(["connect", path, "--k", "2", "--l", "3", "--hamilton"]) == 0
        assert "cycle " in (tmp_path / "host.graph.connected").read_text()

    def test_hamilton_requires_k2(self, graph_file):
        path = graph_file(complete_bipartite(5, 5))
        assert main(["connect", path, "--k", "3", "--l", "3", "--hamilton"]) == 64

    def test_hypothesis_violation(self, graph_file, capsys):
        path = graph_file(complete_bipartite(5, 5))  # min degree too low
        assert main(["connect", path, "--k", "2", "--l", "3"]) == 4
        assert "minimum degree" in capsys.readouterr().err

    def test_parameter_gate(self, graph_file):
        path = graph_file(complete_bipartite(5, 5))
        assert main(["connect", path, "--k", "1", "--l", "2"]) == 64

    def test_stuck_report_written(self, graph_file, tmp_path, monkeypatch, capsys):
        """The stuck exit path cannot be reached through honest inputs, so
        the pipeline is stubbed to raise with a genuine report attached."""
        g = BipartiteGraph(
            4, 4, [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3), (0, 2)]
        )
        f = Factor(g, [e for e in g.edge_list if e != (0, 2)])
        report = _build_stuck_report(g, f, 2, 3)
        assert isinstance(report, StuckReport)

        def boom(graph, k, l):
            raise TheoremContradictionError("stuck", report=report)

        monkeypatch.setattr(cli, "connected_k_factor", boom)
        path = graph_file(g)
        assert main(["connect", path, "--k", "2", "--l", "3"]) == 3
        text = (tmp_path / "host.graph.stuck").read_text()
        assert "EQ10 ALL HOLDS" in text
        assert "report written" in capsys.readouterr().err

    def test_contradicting_certificate_written(self, graph_file, tmp_path, monkeypatch):
        g = complete_bipartite(4, 4)
        cert = make_certificate(path_graph(4), DegreeDemand((2, 2), (2, 2)), (0,))

        def boom(graph, k, l):
            raise TheoremContradictionError("no factor", report=cert)

        monkeypatch.setattr(cli, "connected_k_factor", boom)
        path = graph_file(g)
        assert main(["connect", path, "--k", "2", "--l", "3"]) == 3
        assert (tmp_path / "host.graph.stuck").read_text().startswith("violator 1\n")


class TestDetectCommand:
    def test_free_host(self, graph_file, capsys):
        assert main(["detect", graph_file(complete_bipartite(3, 3)), "--k", "1", "--l", "2"]) == 0
        assert capsys.readouterr().out == "FREE\n"

    def test_witness_host(self, graph_file, tmp_path, capsys):
        path = graph_file(star_pair_graph(1, 2))
        target = str(tmp_path / "w.star")
        assert main(["detect", path, "--k", "1", "--l", "2", "--out", target]) == 0
        out = capsys.readouterr().out
        assert out.startswith("star 1 2\n")
        assert (tmp_path / "w.star").read_text() == out

    def test_bad_arms(self, graph_file):
        assert main(["detect", graph_file(complete_bipartite(2, 2)), "--k", "0", "--l", "1"]) == 64


class TestClassifyCommand:
    def test_path(self, graph_file, capsys):
        assert main(["classify", graph_file(path_graph(5))]) == 0
        assert capsys.readouterr().out == "path\n"

    def test_near_complete_lists_removed_pairs(self, graph_file, capsys):
        g = complete_bipartite_minus_matching(4, [(0, 0), (2, 2)])
        assert main(["classify", graph_file(g)]) == 0
        assert capsys.readouterr().out == (
            "complete-minus-matching\nremoved 0 0\nremoved 2 2\n"
        )

    def test_witness_host(self, graph_file, capsys):
        assert main(["classify", graph_file(star_pair_graph(1, 2))]) == 0
        out = capsys.readouterr().out
        assert out.startswith("not-s12-free\n")
        assert "star 1 2" in out

    def test_disconnected_rejected(self, graph_file):
        g = BipartiteGraph(2, 2, [(0, 0), (1, 1)])
        assert main(["classify", graph_file(g)]) == 64


class TestGenerateCommand:
    def test_stdout_round_trip(self, capsys):
        assert main(["generate", "--model", "double-cycle", "--n", "3"]) == 0
        g = parse_graph(capsys.readouterr().out)
        assert (g.n_x, g.n_y, g.m) == (6, 6, 24)

    def test_out_file(self, tmp_path, capsys):
        target = str(tmp_path / "g.graph")
        code = main(
            ["generate", "--model", "k-minus-matching", "--n", "6", "--k", "2",
             "--seed", "9", "--out", target]
        )
        assert code == 0
        assert parse_graph((tmp_path / "g.graph").read_text()).m == 34
        assert "graph written" in capsys.readouterr().out

    def test_unknown_model_rejected_by_parser(self):
        with pytest.raises(SystemExit) as err:
            main(["generate", "--model", "erdos", "--n", "4"])
        assert err.value.code == 64

    def test_invalid_parameters(self):
        assert main(["generate", "--model", "k-regular-union", "--n", "3", "--k", "9"]) == 64


class TestThresholdCommand:
    @pytest.mark.parametrize(
        "argv, expected",
        [
            (["threshold", "--k", "2", "--l", "3"], "12\n"),
            (["threshold", "--k", "3", "--l", "3"], "18\n"),
            (["threshold", "--k", "2", "--l", "2"], "8\n"),
            (["threshold", "--k", "2", "--l", "3", "--m", "2"], "18\n"),
            (["threshold", "--k", "1", "--l", "1", "--m", "1"], "2\n"),
            (["threshold", "--k", "3", "--l", "2", "--raw"], "16\n"),
        ],
    )
    def test_values(self, argv, expected, capsys):
        assert main(argv) == 0
        assert capsys.readouterr().out == expected

    def test_gate(self, capsys):
        assert main(["threshold", "--k", "1", "--l", "2"]) == 64


class TestVerifyCommand:
    def test_small_pass_run(self, capsys):
        assert main(["verify", "cor4", "--trials", "2"]) == 0
        out = capsys.readouterr().out
        assert "cor4[00] PASS" in out
        assert out.strip().endswith("SUITE cor4 2/2")

    def test_failure_sets_exit_code(self, monkeypatch, capsys):
        monkeypatch.setattr(
            cli, "run_suite", lambda *a, **kw: [TrialResult("t[0]", False, "boom")]
        )
        assert main(["verify", "cor4"]) == 1
        out = capsys.readouterr().out
        assert "t[0] FAIL  boom" in out
        assert "SUITE cor4 0/1" in out

    def test_unknown_suite_rejected_by_parser(self):
        with pytest.raises(SystemExit) as err:
            main(["verify", "nope"])
        assert err.value.code == 64


class TestUsage:
    def test_no_command(self):
        with pytest.raises(SystemExit) as err:
            main([])
        assert err.value.code == 64

    def test_installed_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "bifactor.cli", "threshold", "--k", "2", "--l", "3"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout == "12\n"

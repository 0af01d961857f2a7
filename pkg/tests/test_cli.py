"""Command-line interface: parsing, output determinism, exit codes."""

import io
import json

import pytest

from covmin.cli import (
    EXIT_BUDGET,
    EXIT_INPUT,
    EXIT_OK,
    ProblemSpec,
    main,
)


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


class TestBasicCommands:
    def test_gauge(self):
        code, text = run_cli("gauge", "--family", "cube", "--d", "2",
                             "--point", "1/2,-3/4")
        assert code == EXIT_OK
        assert text.strip() == "gauge = 3/4"

    def test_width_from_vertices(self):
        code, text = run_cli(
            "width", "--body", '{"vertices":[["-1","-1"],["1","0"],["0","1"]]}'
        )
        assert code == EXIT_OK
        assert "width = 2" in text
        assert "witness = (" in text

    def test_covering_radius_terminal(self):
        code, text = run_cli("covering-radius", "--family", "terminal", "--d", "2",
                             "--tol", "1/10000")
        assert code == EXIT_OK
        lines = dict(
            line.split(" in ") if " in " in line else line.split(" = ")
            for line in text.strip().splitlines()
        )
        lo, hi = lines["covering radius"].strip("[]").split(", ")
        from fractions import Fraction
        assert Fraction(lo) <= 1 <= Fraction(hi)
        assert Fraction(hi) - Fraction(lo) <= Fraction(1, 10000)

    def test_table_rows(self):
        code, text = run_cli("table", "--d", "3..4", "--i", "2..3")
        assert code == EXIT_OK
        assert "3  2  5/4         5/4           5/4    1" in text

    def test_table_csv(self):
        code, text = run_cli("table", "--d", "3..3", "--i", "2..2", "--csv")
        assert code == EXIT_OK
        assert "3,2,5/4,5/4,5/4,1" in text

    def test_plot_data(self, tmp_path):
        target = tmp_path / "plot.dat"
        code, _ = run_cli("table", "--d", "3..3", "--i", "2..2",
                          "--plot-data", str(target))
        assert code == EXIT_OK
        lines = target.read_text().splitlines()
        assert "3 2 projection 5/4" in lines
        assert "3 2 conjectured 1" in lines

    def test_minima_crosspolytope(self):
        code, text = run_cli("minima", "--family", "crosspolytope", "--d", "3",
                             "--i", "1..3")
        assert code == EXIT_OK
        assert "3/2" in text and "exact" in text

    def test_bounds_reports(self):
        code, text = run_cli("bounds", "--family", "terminal", "--d", "3",
                             "--i", "2", "--tol", "1/100")
        assert code == EXIT_OK
        assert "INTERSECTION_THM" in text
        assert "5/4" in text

    def test_family_weighted(self):
        code, text = run_cli("family", "--family", "weighted", "--omega", "1/2,1,1")
        assert code == EXIT_OK
        assert "(-1/2, -1/2)" in text
        assert "5/4" in text

    def test_weighted_with_conjectured_rows(self):
        code, text = run_cli("family", "--family", "terminal", "--d", "3")
        assert code == EXIT_OK
        assert "(conjectured)" in text

    def test_verify_suite(self):
        code, text = run_cli("verify", "kl", "--tol", "1/100")
        assert code == EXIT_OK
        assert text.strip().splitlines()[-1].endswith("checks passed")
        assert "FAIL" not in text


class TestDeterminism:
    def test_identical_runs(self):
        first = run_cli("minima", "--family", "terminal", "--d", "2", "--i", "1..2",
                        "--tol", "1/100")
        second = run_cli("minima", "--family", "terminal", "--d", "2", "--i", "1..2",
                         "--tol", "1/100")
        assert first == second

    def test_jobs_do_not_change_output(self):
        base = run_cli("minima", "--family", "cube", "--d", "3", "--i", "2",
                       "--tol", "1/100")
        parallel = run_cli("minima", "--family", "cube", "--d", "3", "--i", "2",
                           "--tol", "1/100", "--jobs", "2")
        assert base == parallel


class TestErrors:
    def test_floats_rejected(self):
        code, _ = run_cli("width", "--body", '{"vertices":[[0.5, 1]]}')
        assert code == EXIT_INPUT

    def test_malformed_json(self, capsys):
        code, _ = run_cli("width", "--body", '{"vertices": [[')
        assert code == EXIT_INPUT
        err = capsys.readouterr().err
        assert "line" in err and "column" in err

    def test_missing_body(self):
        code, _ = run_cli("width")
        assert code == EXIT_INPUT

    def test_unknown_family(self):
        code, _ = run_cli("width", "--family", "dodecahedron")
        assert code == EXIT_INPUT

    def test_budget_exceeded(self, monkeypatch):
        monkeypatch.setenv("COVMIN_BUDGET", "3")
        code, _ = run_cli("covering-radius", "--family", "terminal", "--d", "2")
        assert code == EXIT_BUDGET

    def test_inconsistent_maps_to_exit_4(self, monkeypatch):
        from covmin import cli as cli_mod
        from covmin.errors import Inconsistent

        def boom(args, out):
            raise Inconsistent("forced")

        monkeypatch.setattr(cli_mod, "_cmd_width", boom)
        code = cli_mod.main(["width", "--family", "cube", "--d", "2"])
        assert code == 4


class TestProblemSpec:
    def test_roundtrip(self):
        spec = ProblemSpec(
            body={"family": "weighted", "params": {"omega": ["1/2", "1", "1"]}},
            lattice=[["1", "0"], ["0", "1"]],
            index=(1, 3),
            tolerance="1/10000",
            flags={"center": False},
        )
        again = ProblemSpec.from_json(spec.to_json())
        assert again == spec
        assert ProblemSpec.from_json(again.to_json()) == again

    def test_rejects_floats(self):
        from covmin.errors import InputError

        with pytest.raises(InputError):
            ProblemSpec.from_json(json.dumps({"body": {"vertices": [[0.25]]}}))

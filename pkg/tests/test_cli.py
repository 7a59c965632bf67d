import json
import os
import sys
from unittest.mock import patch

import pytest
import typer
from typer.testing import CliRunner

# Add the source directory to Python path
sys.path.append(os.path.join(os.path.dirname(__file__), "..", "src"))

from treeenergy.cli import app, parse_range
from treeenergy.events import ErrorEvent
from treeenergy.models import SuiteReport, Verdict, Winner
from treeenergy.trees import FamilyParams, Tree, build_Ta


@pytest.fixture
def runner():
    return CliRunner()


def _error_stream(*args, **kwargs):
    yield ErrorEvent("Suite lemmas failed: boom", "RuntimeError", "boom")
    return SuiteReport("lemmas")


class TestParseRange:
    """Test inclusive A:B[:step] ranges."""

    def test_inclusive(self):
        """Both ends are included."""
        assert list(parse_range("3:6", "--t-range")) == [3, 4, 5, 6]
        assert list(parse_range("3:9:3", "--t-range")) == [3, 6, 9]

    @pytest.mark.parametrize("text", ["6:3", "a:b", "3", "3:9:0"])
    def test_invalid(self, text):
        """Reversed, non-numeric, single and zero-step ranges are rejected."""
        with pytest.raises(typer.BadParameter):
            parse_range(text, "--t-range")


class TestEnergyCommand:
    """Test the energy command."""

    def test_single_edge_json(self, runner):
        """Both methods give E(P_2) = 2."""
        result = runner.invoke(app, ["-q", "energy", "--path", "2", "--format", "json"])
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["tree"]["n"] == 2
        assert [r["value"] for r in payload["results"]] == [pytest.approx(2.0), pytest.approx(2.0)]
        assert payload["delta"] < 1e-10

    def test_family_csv(self, runner):
        """CSV rows per method."""
        result = runner.invoke(
            app, ["-q", "energy", "--family", "ta", "--delta", "3", "--t", "3", "--method", "eigen", "--format", "csv"]
        )
        assert result.exit_code == 0
        lines = result.output.strip().splitlines()
        assert lines[0] == "method,value,abs_error_estimate,evaluations"
        assert lines[1].startswith("eigen,")

    def test_plain(self, runner):
        """Plain output lists each method and the disagreement."""
        result = runner.invoke(app, ["-q", "energy", "--family", "tc", "--delta", "3", "--n", "8"])
        assert result.exit_code == 0
        assert "n=8" in result.output
        assert "coulson:" in result.output
        assert "delta:" in result.output

    def test_edgelist(self, runner, tmp_path):
        """Trees can be read from a file."""
        path = tmp_path / "star.txt"
        path.write_text("0 1\n0 2\n0 3\n", encoding="utf-8")
        result = runner.invoke(app, ["-q", "energy", "--edgelist", str(path), "--method", "eigen", "--format", "json"])
        assert result.exit_code == 0
        assert json.loads(result.output)["results"][0]["value"] == pytest.approx(2.0 * 3**0.5)

    def test_bad_edgelist(self, runner, tmp_path):
        """Parse errors are usage errors naming the line."""
        path = tmp_path / "cycle.txt"
        path.write_text("0 1\n1 2\n2 0\n", encoding="utf-8")
        result = runner.invoke(app, ["energy", "--edgelist", str(path)])
        assert result.exit_code == 2
        assert "line 3" in result.output

    def test_no_tree_selected(self, runner):
        """Exactly one tree source is required."""
        result = runner.invoke(app, ["energy"])
        assert result.exit_code == 2

    def test_infeasible_tc(self, runner):
        """T_c outside its order range is a usage error."""
        result = runner.invoke(app, ["energy", "--family", "tc", "--delta", "3", "--n", "12"])
        assert result.exit_code == 2

    def test_eigen_cap(self, runner):
        """Trees above the eigenvalue cap fail with exit code 1."""
        result = runner.invoke(app, ["-q", "energy", "--path", "600", "--method", "eigen"])
        assert result.exit_code == 1


class TestCompareCommand:
    """Test the compare command."""

    def test_single_cell_csv(self, runner):
        """delta >= 7 favours T_b."""
        result = runner.invoke(app, ["-q", "compare", "--delta", "8", "--t", "3", "--format", "csv"])
        assert result.exit_code == 0
        lines = result.output.strip().splitlines()
        assert lines[0] == "delta,t,winner,margin,margin_error,decisive"
        assert lines[1].startswith("8,3,Tb,")

    def test_range_json(self, runner):
        """delta = 4 favours T_b only at t = 4."""
        result = runner.invoke(
            app, ["-q", "compare", "--delta", "4", "--t-range", "3:6", "--no-cross-check", "--format", "json"]
        )
        assert result.exit_code == 0
        assert [row["winner"] for row in json.loads(result.output)] == ["Ta", "Tb", "Ta", "Ta"]

    def test_json_floats_twelve_digits(self, runner):
        """JSON margins carry at most 12 significant digits."""
        result = runner.invoke(app, ["-q", "compare", "--delta", "4", "--t", "3", "--format", "json"])
        assert result.exit_code == 0
        (row,) = json.loads(result.output)
        for key in ("margin", "margin_error"):
            mantissa = repr(row[key]).lstrip("-").split("e")[0].replace(".", "").lstrip("0")
            assert len(mantissa) <= 12, (key, row[key])

    def test_delta_below_three(self, runner):
        """delta = 2 is a usage error."""
        result = runner.invoke(app, ["compare", "--delta", "2", "--t", "5"])
        assert result.exit_code == 2

    def test_needs_t(self, runner):
        """One of --t and --t-range is required."""
        result = runner.invoke(app, ["compare", "--delta", "4"])
        assert result.exit_code == 2

    @patch("treeenergy.cli.sweep_verdicts")
    def test_indecisive_exit(self, mock_sweep, runner):
        """An indecisive verdict is printed and exits 1."""
        mock_sweep.return_value = [Verdict(3, 3, Winner.TA, 1e-14, 1e-13, False)]
        result = runner.invoke(app, ["-q", "compare", "--delta", "3", "--t", "3"])
        assert result.exit_code == 1
        assert "INDECISIVE" in result.output

    @pytest.mark.slow
    def test_delta5_switch(self, runner):
        """Odd t: T_a through 89, T_b from 91."""
        result = runner.invoke(
            app, ["-q", "compare", "--delta", "5", "--t-range", "87:93:2", "--workers", "2", "--format", "json"]
        )
        assert result.exit_code == 0
        assert [row["winner"] for row in json.loads(result.output)] == ["Ta", "Ta", "Tb", "Tb"]


class TestTable1Command:
    """Test the table1 command."""

    def test_check_csv(self, runner):
        """--check adds the published column and passes within tolerance."""
        result = runner.invoke(app, ["-q", "table1", "--delta-range", "8:10", "--check"])
        assert result.exit_code == 0
        lines = result.output.strip().splitlines()
        assert lines[0] == "delta,f_value,f_paper,abs_diff"
        assert [line.split(",")[0] for line in lines[1:]] == ["8", "9", "10"]

    def test_parts_json(self, runner):
        """Without --check the tail and head parts are shown."""
        result = runner.invoke(app, ["-q", "table1", "--delta-range", "20:20", "--format", "json"])
        assert result.exit_code == 0
        (row,) = json.loads(result.output)
        assert row["delta"] == 20
        assert row["f_value"] == pytest.approx(row["tail_part"] - row["head_part"])

    def test_delta_too_small(self, runner):
        """delta below 3 is a usage error."""
        result = runner.invoke(app, ["table1", "--delta-range", "2:4"])
        assert result.exit_code == 2


class TestVerifyCommand:
    """Test the verify command."""

    def test_unknown_suite(self, runner):
        """Unknown suites exit 2."""
        result = runner.invoke(app, ["verify", "--suite", "nope"])
        assert result.exit_code == 2

    def test_order_above_cap(self, runner):
        """--max-order beyond the hard cap exits 2."""
        result = runner.invoke(app, ["verify", "--suite", "theorem11", "--max-order", "17"])
        assert result.exit_code == 2

    def test_small_theorem11_json(self, runner):
        """A short brute-force run passes."""
        result = runner.invoke(app, ["-q", "verify", "--suite", "theorem11", "--max-order", "7", "--format", "json"])
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["passed"] is True
        assert payload["cases_run"] == 2

    @patch("treeenergy.cli.run_suite_stream", side_effect=_error_stream)
    def test_suite_error_exits_1(self, mock_run, runner):
        """An ErrorEvent from the suite exits 1."""
        result = runner.invoke(app, ["-q", "verify", "--suite", "lemmas"])
        assert result.exit_code == 1
        mock_run.assert_called_once()

    @pytest.mark.slow
    def test_proof_constants(self, runner):
        """The proof-constant suite passes end to end."""
        result = runner.invoke(app, ["-q", "verify", "--suite", "proof-constants"])
        assert result.exit_code == 0
        assert "PASSED" in result.output


class TestEnumerateCommand:
    """Test the enumerate command."""

    def test_count(self, runner):
        """Six trees on six vertices."""
        result = runner.invoke(app, ["-q", "enumerate", "--n", "6"])
        assert result.exit_code == 0
        assert len(result.output.strip().splitlines()) == 6

    def test_rank_constrained(self, runner):
        """The top-ranked tree with two degree-3 vertices on 11 vertices is T_a(3, 3)."""
        result = runner.invoke(app, ["-q", "enumerate", "--n", "11", "--delta", "3", "--rank", "--format", "json"])
        assert result.exit_code == 0
        rows = json.loads(result.output)
        energies = [row["energy"] for row in rows]
        assert energies == sorted(energies, reverse=True)
        top = Tree(rows[0]["n"], tuple(tuple(edge) for edge in rows[0]["edges"]))
        assert top.is_isomorphic(build_Ta(FamilyParams(3, 3)))

    def test_above_cap(self, runner):
        """Orders past the hard cap are usage errors."""
        result = runner.invoke(app, ["enumerate", "--n", "20"])
        assert result.exit_code == 2

    def test_bad_strategy(self, runner):
        """Unknown strategies are usage errors."""
        result = runner.invoke(app, ["enumerate", "--n", "5", "--strategy", "greedy"])
        assert result.exit_code == 2


class TestBoundsCommand:
    """Test the bounds command."""

    @pytest.mark.slow
    def test_json(self, runner):
        """Analytic differences are negative from 65 and the thresholds are listed."""
        result = runner.invoke(app, ["-q", "bounds", "--delta-range", "65:70", "--format", "json"])
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert all(row["difference"] < 0 for row in payload["analytic"])
        thresholds = {(row["delta"], row["parity"]): row["threshold"] for row in payload["thresholds"]}
        assert thresholds[(5, "odd")] == 2339

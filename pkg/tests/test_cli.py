"""
Tests for the command-line surface.
"""
import json
import math
from unittest.mock import patch

import numpy as np
import pandas as pd
import pytest

from stripcrack.core.exceptions import NoConvergenceError, NonConvergenceError
from stripcrack.main import main
from stripcrack.models.solution import SpectralSolution
from stripcrack.services.linsolve import ReductionSolver


@pytest.fixture
def static_conf(config_dir):
    return str(config_dir / "static.conf")


@pytest.fixture
def reference_conf(config_dir):
    return str(config_dir / "reference_a.conf")


class TestSolveCommand:
    """Test cases for solve."""

    def test_static_solve_writes_tables(self, static_conf, tmp_path):
        """Test the static solve reports |K| = sqrt(2) tau0 and writes sibling tables."""
        out = tmp_path / "result.csv"
        assert main(["--config", static_conf, "--out", str(out), "solve"]) == 0
        table = pd.read_csv(out)
        assert table["K_abs"].iloc[0] == pytest.approx(math.sqrt(2.0), rel=1e-14)
        assert table["N"].iloc[0] == 10
        coeffs = pd.read_csv(tmp_path / "coeffs.csv")
        assert list(coeffs.columns) == ["m", "a_re", "a_im"]
        assert coeffs["a_re"].iloc[0] == pytest.approx(2.0 / 8.0e10, rel=1e-14)
        assert (tmp_path / "history.csv").exists()

    def test_output_is_deterministic(self, static_conf, tmp_path):
        """Test repeated runs produce byte-identical files."""
        first, second = tmp_path / "one" / "result.csv", tmp_path / "two" / "result.csv"
        assert main(["--config", static_conf, "--out", str(first), "solve"]) == 0
        assert main(["--config", static_conf, "--out", str(second), "solve"]) == 0
        assert first.read_bytes() == second.read_bytes()
        assert (first.parent / "coeffs.csv").read_bytes() == (second.parent / "coeffs.csv").read_bytes()

    def test_reference_output_is_deterministic(self, reference_conf, tmp_path):
        """Test repeated viscoelastic runs produce byte-identical files."""
        first, second = tmp_path / "one" / "result.csv", tmp_path / "two" / "result.csv"
        assert main(["--config", reference_conf, "--out", str(first), "solve"]) == 0
        assert main(["--config", reference_conf, "--out", str(second), "solve"]) == 0
        assert first.read_bytes() == second.read_bytes()
        for name in ("coeffs.csv", "history.csv"):
            assert (first.parent / name).read_bytes() == (second.parent / name).read_bytes()

    def test_json_output(self, static_conf, capsys):
        """Test the JSON document on stdout."""
        assert main(["--config", static_conf, "--format", "json", "solve"]) == 0
        document = json.loads(capsys.readouterr().out)
        assert "version" in document
        assert document["converged"] is True
        assert document["result"][0]["K_abs"] == pytest.approx(math.sqrt(2.0), rel=1e-14)
        assert len(document["coeffs"]) == 10

    def test_time_flag_static_medium(self, static_conf, tmp_path):
        """Test --time leaves K real when k = 0."""
        out = tmp_path / "result.csv"
        assert main(["--config", static_conf, "--out", str(out), "--time", "0.5", "solve"]) == 0
        table = pd.read_csv(out)
        assert table["K_re"].iloc[0] == pytest.approx(math.sqrt(2.0), rel=1e-14)
        assert table["K_im"].iloc[0] == pytest.approx(0.0, abs=1e-14)

    def test_reference_solve(self, reference_conf, tmp_path):
        """Test the first reference set converges on the ladder."""
        out = tmp_path / "result.csv"
        assert main(["--config", reference_conf, "--out", str(out), "solve"]) == 0
        table = pd.read_csv(out)
        assert table["N"].iloc[0] >= 20
        assert table["K_abs"].iloc[0] < math.sqrt(2.0)
        history = pd.read_csv(tmp_path / "history.csv")
        assert history["N"].tolist()[0] == 10

    def test_no_convergence_writes_last_solution(self, static_conf, tmp_path):
        """Test exit 3 with the last solution still written."""
        last = SpectralSolution(
            coeffs=np.array([2.5e-11 + 0j]), n=1, residual=0.0, history=[(1, 2.5e-11 + 0j)], converged=False
        )
        out = tmp_path / "result.csv"
        with patch.object(ReductionSolver, "run", side_effect=NoConvergenceError("stuck", solution=last)):
            assert main(["--config", static_conf, "--out", str(out), "solve"]) == 3
        assert out.exists()

    def test_no_convergence_without_solution(self, static_conf, tmp_path):
        """Test exit 3 and no output when nothing was solved."""
        out = tmp_path / "result.csv"
        with patch.object(ReductionSolver, "run", side_effect=NoConvergenceError("stuck")):
            assert main(["--config", static_conf, "--out", str(out), "solve"]) == 3
        assert not out.exists()

    def test_kernel_failure_exit_code(self, static_conf, tmp_path):
        """Test kernel non-convergence maps to exit 4."""
        with patch.object(ReductionSolver, "run", side_effect=NonConvergenceError("tail", s=0.1)):
            assert main(["--config", static_conf, "--out", str(tmp_path / "r.csv"), "solve"]) == 4


class TestConfigErrors:
    """Test cases for configuration failures."""

    def test_malformed_config(self, tmp_path):
        """Test a malformed config exits 2 and writes nothing."""
        bad = tmp_path / "bad.conf"
        bad.write_text("material.G 8e10\n", encoding="utf-8")
        out = tmp_path / "result.csv"
        assert main(["--config", str(bad), "--out", str(out), "solve"]) == 2
        assert not out.exists()

    def test_undamped_medium(self, tmp_path):
        """Test G0 = 0 with k > 0 exits 4."""
        conf = tmp_path / "undamped.conf"
        conf.write_text(
            "material.G = 8e10\nmaterial.G0 = 0\nmaterial.rho = 2700\nmaterial.k = 3\n", encoding="utf-8"
        )
        assert main(["--config", str(conf), "--out", str(tmp_path / "r.csv"), "solve"]) == 4

    def test_version(self, capsys):
        """Test --version prints and exits cleanly."""
        with pytest.raises(SystemExit) as excinfo:
            main(["--version"])
        assert excinfo.value.code == 0
        assert "stripcrack" in capsys.readouterr().out


class TestSweepCommand:
    """Test cases for sweep."""

    def test_unknown_axis(self, static_conf, tmp_path):
        """Test an unknown axis exits 2."""
        assert main(["--config", static_conf, "--out", str(tmp_path / "r.csv"), "sweep", "--axis", "nu", "--values", "0.3"]) == 2

    def test_mismatched_pairs(self, static_conf, tmp_path):
        """Test paired axes need paired values."""
        args = ["--config", static_conf, "--out", str(tmp_path / "r.csv"), "sweep", "--axis", "G,G0", "--values", "8e10"]
        assert main(args) == 2

    def test_load_sweep_is_linear(self, static_conf, tmp_path):
        """Test doubling tau0 doubles |K|."""
        out = tmp_path / "sweep.csv"
        args = ["--config", static_conf, "--out", str(out), "sweep", "--axis", "tau0", "--values", "1,2", "--workers", "2"]
        assert main(args) == 0
        table = pd.read_csv(out)
        assert list(table.columns) == ["tau0", "K_I", "K_II", "K_abs", "N_used"]
        assert table["tau0"].tolist() == [1.0, 2.0]
        assert table["K_abs"].iloc[1] == pytest.approx(2.0 * table["K_abs"].iloc[0], rel=1e-14)

    def test_frequency_sweep(self, static_conf, tmp_path):
        """Test k = 0 reproduces sqrt(2) and k = 3 lowers |K|."""
        out = tmp_path / "sweep.csv"
        assert main(["--config", static_conf, "--out", str(out), "sweep", "--axis", "k", "--values", "0,3"]) == 0
        table = pd.read_csv(out)
        assert table["K_abs"].iloc[0] == pytest.approx(math.sqrt(2.0), rel=1e-14)
        assert table["K_abs"].iloc[1] < table["K_abs"].iloc[0]

    def test_paired_axis_sweep(self, reference_conf, tmp_path):
        """Test the three reference media give strictly decreasing |K|."""
        out = tmp_path / "sweep.csv"
        args = [
            "--config", reference_conf, "--out", str(out),
            "sweep", "--axis", "G,G0", "--values", "80e9:65e9,65e9:50e9,55e9:40e9",
        ]
        assert main(args) == 0
        table = pd.read_csv(out)
        assert list(table.columns) == ["G", "G0", "K_I", "K_II", "K_abs", "N_used"]
        assert table["G"].tolist() == [8.0e10, 6.5e10, 5.5e10]
        assert table["K_abs"].iloc[0] > table["K_abs"].iloc[1] > table["K_abs"].iloc[2]


class TestOtherCommands:
    """Test cases for kernel-probe, convergence and validate."""

    def test_kernel_probe_rho0(self, reference_conf, tmp_path):
        """Test the rho0 table layout and s = 0 value."""
        out = tmp_path / "probe.csv"
        assert main(["--config", reference_conf, "--out", str(out), "kernel-probe", "--s-list", "0,0.5"]) == 0
        table = pd.read_csv(out)
        assert list(table.columns) == ["s", "value_re", "value_im", "est_error", "cutoff", "panels"]
        assert len(table) == 2
        assert table["value_im"].iloc[0] > 0
        assert np.all(table["est_error"] > 0)

    def test_kernel_probe_field(self, reference_conf, tmp_path):
        """Test the field-kernel table is odd in s."""
        out = tmp_path / "probe.csv"
        assert main(["--config", reference_conf, "--out", str(out), "kernel-probe", "--xs-list", "0.3:0.4,0.3:-0.4"]) == 0
        table = pd.read_csv(out)
        assert table["value_re"].iloc[1] == -table["value_re"].iloc[0]

    def test_kernel_probe_rejects_negative_s(self, reference_conf, tmp_path):
        """Test negative s exits 2."""
        assert main(["--config", reference_conf, "--out", str(tmp_path / "p.csv"), "kernel-probe", "--s-list", "-1"]) == 2

    @pytest.mark.parametrize(
        "flag,value",
        [("--s-list", "nan"), ("--s-list", "0.1,inf"), ("--xs-list", "inf:0.1"), ("--xs-list", "0.3:nan")],
    )
    def test_kernel_probe_rejects_non_finite(self, reference_conf, tmp_path, flag, value):
        """Test non-finite sample points exit 2 and write nothing."""
        out = tmp_path / "p.csv"
        assert main(["--config", reference_conf, "--out", str(out), "kernel-probe", flag, value]) == 2
        assert not out.exists()

    def test_convergence_command(self, static_conf, tmp_path):
        """Test the convergence table for the static medium."""
        out = tmp_path / "conv.csv"
        assert main(["--config", static_conf, "--out", str(out), "convergence", "--n-list", "10,15"]) == 0
        table = pd.read_csv(out)
        assert table["N"].tolist() == [10, 15]
        assert table["increment"].iloc[1] == 0.0

    def test_convergence_rejects_bad_list(self, static_conf, tmp_path):
        """Test a non-ascending --n-list exits 2."""
        assert main(["--config", static_conf, "--out", str(tmp_path / "c.csv"), "convergence", "--n-list", "15,10"]) == 2

    def test_validate_static(self, static_conf, tmp_path):
        """Test every check passes in the static limit."""
        out = tmp_path / "validate.csv"
        assert main(["--config", static_conf, "--out", str(out), "validate"]) == 0
        table = pd.read_csv(out)
        assert table["passed"].all()

    def test_validate_reference(self, reference_conf, tmp_path):
        """Test the gated checks pass for the first reference set and the scale is reported."""
        out = tmp_path / "validate.csv"
        assert main(["--config", reference_conf, "--out", str(out), "validate"]) == 0
        table = pd.read_csv(out).set_index("check")
        assert table.loc[table["gated"], "passed"].all()
        assert "reference_scale" in table.index
        assert table.loc["reference_scale", "value"] > 0

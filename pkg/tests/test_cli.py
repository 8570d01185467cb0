import json

import numpy as np
import pytest

from qht.cli import _parse_grid, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGridParsing:
    def test_inclusive_grid(self):
        grid = _parse_grid("0:1:0.25")
        np.testing.assert_allclose(grid, [0.0, 0.25, 0.5, 0.75, 1.0])

    def test_malformed(self):
        import argparse

        for bad in ("0:1", "a:b:c", "1:0:0.1", "0:1:0"):
            with pytest.raises(argparse.ArgumentTypeError):
                _parse_grid(bad)


class TestExponentsCommand:
    def test_identical_preset_reports_zero(self, capsys):
        code, out, _ = run(capsys, "exponents", "--preset", "identical", "--grid-s", "0:1:0.5")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "dim = 2"
        assert float(lines[1].split("=")[1]) == pytest.approx(0.0, abs=1e-12)
        for row in lines[3:]:
            _, pb, pp = row.split(",")
            assert abs(float(pb)) <= 1e-12
            assert abs(float(pp)) <= 1e-12


class TestCurvesCommand:
    def test_commuting_columns_coincide(self, capsys, tmp_path):
        out_dir = tmp_path / "curves"
        code, _, _ = run(
            capsys,
            "curves",
            "--preset",
            "commuting-1",
            "--grid-s",
            "0:1:0.01",
            "--grid-a",
            "0:0.4:0.1",
            "--out",
            str(out_dir),
        )
        assert code == 0
        pb = (out_dir / "psi_bar.csv").read_text().strip().split("\n")[1:]
        pp = (out_dir / "psi.csv").read_text().strip().split("\n")[1:]
        assert len(pb) == 101
        for row_bar, row_plain in zip(pb, pp):
            v1 = float(row_bar.split(",")[1])
            v2 = float(row_plain.split(",")[1])
            assert abs(v1 - v2) <= 1e-10
        for name in ("psi_bar", "psi", "phi_bar", "phi"):
            assert (out_dir / f"{name}.csv").exists()
            assert (out_dir / f"{name}.json").exists()

    def test_deterministic_output(self, capsys, tmp_path):
        args = ["curves", "--preset", "qubit-generic", "--grid-s", "0:1:0.1",
                "--grid-a", "0:0.3:0.1"]
        dir_one = tmp_path / "one"
        dir_two = tmp_path / "two"
        assert run(capsys, *args, "--out", str(dir_one))[0] == 0
        assert run(capsys, *args, "--out", str(dir_two))[0] == 0
        for name in ("psi_bar.csv", "psi.csv", "phi_bar.csv", "phi.csv",
                     "psi_bar.json", "phi.json"):
            assert (dir_one / name).read_bytes() == (dir_two / name).read_bytes()


class TestHoeffdingCommand:
    def test_table_consistency(self, capsys, tmp_path):
        code, out, _ = run(
            capsys,
            "hoeffding",
            "--preset",
            "qubit-generic",
            "--grid-r",
            "0.05:0.15:0.05",
            "--out",
            str(tmp_path),
        )
        assert code == 0
        rows = out.strip().split("\n")
        assert rows[0] == "r,u,a_r"
        for row in rows[1:]:
            r, u, a_r = (float(x) for x in row.split(","))
            assert u == pytest.approx(r + a_r, abs=1e-7)
        assert (tmp_path / "hoeffding.csv").exists()
        payload = json.loads((tmp_path / "hoeffding.json").read_text())
        assert len(payload) == len(rows) - 1


class TestFiniteNCommand:
    def test_bound_table(self, capsys, tmp_path):
        code, out, _ = run(
            capsys,
            "finite-n",
            "--preset",
            "qubit-generic",
            "--n-max",
            "3",
            "--out",
            str(tmp_path),
        )
        assert code == 0
        rows = out.strip().split("\n")
        assert rows[0].startswith("n,a,alpha")
        assert len(rows) == 1 + 3 * 4  # default grid: four fractions of D
        for row in rows[1:]:
            fields = row.split(",")
            assert float(fields[2]) <= float(fields[3]) + 1e-12
            assert float(fields[4]) <= float(fields[5]) + 1e-12
        assert (tmp_path / "bound_report.csv").read_text() == out


class TestVerifyCommand:
    def test_small_run_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--seed", "3", "--pairs", "2", "--n-max", "2")
        assert code == 0
        assert "checks passed" in out
        assert "FAIL" not in out

    def test_seeded_output_deterministic(self, capsys):
        args = ("verify", "--seed", "5", "--pairs", "2", "--n-max", "2")
        code_one, out_one, _ = run(capsys, *args)
        code_two, out_two, _ = run(capsys, *args)
        assert code_one == code_two == 0
        assert out_one == out_two

    def test_full_property_suite(self, capsys):
        # the documented full run: 20 pairs, tensor powers to n = 4
        code, out, _ = run(
            capsys, "verify", "--seed", "7", "--pairs", "20", "--n-max", "4"
        )
        assert code == 0
        assert "17/17 checks passed" in out


class TestConjectureCommand:
    def test_experimental_banner(self, capsys):
        code, out, _ = run(
            capsys, "conjecture", "--preset", "qubit-generic", "--n-max", "2"
        )
        assert code == 0
        assert out.startswith("# EXPERIMENTAL")
        assert "log_alpha_rate" in out


class TestErrorPaths:
    def test_invalid_pair_file_names_invariant(self, capsys, tmp_path):
        from qht import serialization as ser

        payload = {
            "rho": ser.matrix_to_dict(np.diag([0.5, 0.49])),
            "sigma": ser.matrix_to_dict(np.diag([0.5, 0.5])),
        }
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(payload), encoding="utf-8")
        code, _, err = run(capsys, "exponents", "--input", str(path))
        assert code == 2
        assert "InvariantViolation(trace)" in err

    def test_non_hermitian_named(self, capsys, tmp_path):
        payload = {
            "rho": {"dim": 2, "re": [[0.5, 0.3], [0.0, 0.5]], "im": [[0, 0], [0, 0]]},
            "sigma": {"dim": 2, "re": [[0.5, 0.0], [0.0, 0.5]], "im": [[0, 0], [0, 0]]},
        }
        path = tmp_path / "nonherm.json"
        path.write_text(json.dumps(payload), encoding="utf-8")
        code, _, err = run(capsys, "exponents", "--input", str(path))
        assert code == 2
        assert "hermitian" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "exponents", "--input", "/nonexistent.json")
        assert code == 2
        assert "error" in err

    def test_unknown_command_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_smooth_mode_accepts_singular_input(self, capsys, tmp_path):
        from qht import serialization as ser

        payload = {
            "rho": ser.matrix_to_dict(np.diag([1.0, 0.0])),
            "sigma": ser.matrix_to_dict(np.diag([0.5, 0.5])),
        }
        path = tmp_path / "singular.json"
        path.write_text(json.dumps(payload), encoding="utf-8")
        strict_code, _, _ = run(capsys, "exponents", "--input", str(path))
        assert strict_code == 2
        smooth_code, out, _ = run(
            capsys, "exponents", "--input", str(path), "--smooth",
            "--smoothing-delta", "1e-6",
        )
        assert smooth_code == 0
        assert "relative_entropy" in out

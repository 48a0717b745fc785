import json
import subprocess
import sys

import numpy as np
import pytest

from qmin.cli import main
from qmin.verify import run_checks

from conftest import bell_state


def matrix_to_json(mat):
    return [[[float(mat[i, j].real), float(mat[i, j].imag)] for j in range(mat.shape[1])] for i in range(mat.shape[0])]


def write_state(path, mat, dims):
    path.write_text(json.dumps({"dims": list(dims), "matrix": matrix_to_json(mat)}))
    return str(path)


def parse_report(text):
    out = {}
    for line in text.strip().splitlines():
        key, _, value = line.partition(":")
        out[key.strip()] = value.strip()
    return out


@pytest.fixture
def bell_file(tmp_path):
    return write_state(tmp_path / "bell.json", bell_state().mat, (2, 2))


class TestMeasure:
    def test_bell(self, bell_file, capsys):
        assert main(["measure", bell_file]) == 0
        report = parse_report(capsys.readouterr().out)
        assert float(report["f_min"]) == pytest.approx(0.5, abs=1e-10)
        assert float(report["hs_min"]) == pytest.approx(0.5, abs=1e-10)
        assert float(report["concurrence"]) == pytest.approx(1.0, abs=1e-10)
        assert float(report["f_min_unconstrained"]) == pytest.approx(0.5, abs=1e-10)
        assert float(report["f_min_upper_bound"]) == pytest.approx(0.5, abs=1e-10)
        assert float(report["purity"]) == pytest.approx(1.0, abs=1e-10)
        assert report["seed"] == "7"

    def test_maximally_mixed(self, tmp_path, capsys):
        path = write_state(tmp_path / "mixed.json", np.eye(4, dtype=complex) / 4, (2, 2))
        assert main(["measure", path]) == 0
        report = parse_report(capsys.readouterr().out)
        for key in ("concurrence", "hs_min", "f_min", "f_min_upper_bound"):
            assert float(report[key]) == pytest.approx(0.0, abs=1e-10)

    def test_oracle_path_for_3x3(self, tmp_path, capsys):
        from qmin.families import isotropic, fmin_isotropic

        path = write_state(tmp_path / "iso.json", isotropic(3, 0.5).mat, (3, 3))
        assert main(["measure", path, "--seed", "5"]) == 0
        report = parse_report(capsys.readouterr().out)
        assert float(report["f_min"]) == pytest.approx(fmin_isotropic(3, 0.5), abs=1e-6)
        assert "f_min_unconstrained" not in report

    def test_trace_violation_exit_2(self, tmp_path, capsys):
        path = write_state(tmp_path / "bad.json", np.diag([0.7, 0.0, 0.0, 0.4]).astype(complex), (2, 2))
        assert main(["measure", path]) == 2
        assert "trace" in capsys.readouterr().err

    def test_malformed_json_exit_1(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        assert main(["measure", str(path)]) == 1
        assert "parse error" in capsys.readouterr().err

    def test_wrong_shape_exit_1(self, tmp_path, capsys):
        path = tmp_path / "shape.json"
        path.write_text(json.dumps({"dims": [2, 2], "matrix": [[1, 0], [0, 1]]}))
        assert main(["measure", str(path)]) == 1

    def test_missing_file_exit_1(self, capsys):
        assert main(["measure", "/no/such/file.json"]) == 1


class TestSweep:
    def test_csv_contract(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        assert main(["sweep", "--channel", "ad", "--alpha", "0.5", "--steps", "11", "--out", str(out)]) == 0
        text = out.read_text()
        lines = text.splitlines()
        assert lines[0] == "gamma,concurrence,hs_min,f_min"
        assert text.endswith("\n") and not text.endswith("\r\n")
        assert len(lines) == 12
        last = [float(v) for v in lines[-1].split(",")]
        assert last[0] == 1.0
        np.testing.assert_allclose(last[1:], 0.0, atol=1e-12)

    def test_bit_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["sweep", "--channel", "gad", "--alpha", "0.4", "--p", "0.7", "--steps", "21"]
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_zero_row_matches_measure(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        assert main(["sweep", "--channel", "depol", "--alpha", "0.3", "--steps", "5", "--out", str(out)]) == 0
        capsys.readouterr()
        row = [float(v) for v in out.read_text().splitlines()[1].split(",")]

        from qmin import min_exact_2xn, concurrence, pure_alpha

        s = pure_alpha(0.3)
        hs, f, _ = min_exact_2xn(s)
        assert row[1] == pytest.approx(concurrence(s), abs=1e-10)
        assert row[2] == pytest.approx(hs, abs=1e-10)
        assert row[3] == pytest.approx(f, abs=1e-10)

    def test_gad_requires_p(self, tmp_path, capsys):
        out = tmp_path / "x.csv"
        assert main(["sweep", "--channel", "gad", "--alpha", "0.5", "--steps", "5", "--out", str(out)]) == 1

    def test_p_rejected_elsewhere(self, tmp_path):
        out = tmp_path / "x.csv"
        assert main(["sweep", "--channel", "ad", "--alpha", "0.5", "--p", "0.5", "--steps", "5", "--out", str(out)]) == 1

    def test_too_few_steps(self, tmp_path):
        out = tmp_path / "x.csv"
        assert main(["sweep", "--channel", "ad", "--alpha", "0.5", "--steps", "1", "--out", str(out)]) == 1

    def test_bad_channel_usage_error(self, tmp_path):
        out = tmp_path / "x.csv"
        assert main(["sweep", "--channel", "nope", "--alpha", "0.5", "--steps", "5", "--out", str(out)]) == 1

    def test_values_in_range(self, tmp_path):
        out = tmp_path / "r.csv"
        assert main(["sweep", "--channel", "depol", "--alpha", "0.7", "--steps", "41", "--out", str(out)]) == 0
        rows = [list(map(float, line.split(","))) for line in out.read_text().splitlines()[1:]]
        for _, c, hs, f in rows:
            assert 0.0 <= c <= 1.0
            assert 0.0 <= f <= 1.0
            assert hs >= 0.0


class TestFigure:
    def test_figure1_initial_row(self, tmp_path, capsys):
        out = tmp_path / "fig1.csv"
        assert main(["figure", "1", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 202
        first = [float(v) for v in lines[1].split(",")]
        np.testing.assert_allclose(first, [0.0, 1.0, 0.5, 0.5], atol=1e-9)

    def test_figure3a_death_near_0_6(self, tmp_path):
        out = tmp_path / "fig3a.csv"
        assert main(["figure", "3a", "--out", str(out)]) == 0
        rows = [list(map(float, line.split(","))) for line in out.read_text().splitlines()[1:]]
        # locate the crossing with a dust threshold: the column holds exact
        # zeros past the threshold but round-off dust right at it
        first_zero = next(g for g, c, _, _ in rows if c <= 1e-12)
        assert abs(first_zero - 0.6) <= 0.0051

    def test_figure2_min_survives_entanglement(self, tmp_path):
        out = tmp_path / "fig2.csv"
        assert main(["figure", "2", "--out", str(out)]) == 0
        rows = [list(map(float, line.split(","))) for line in out.read_text().splitlines()[1:]]
        dead = [(g, f) for g, c, _, f in rows if c == 0.0 and g < 1.0]
        assert dead and all(f > 0.0 for _, f in dead)

    def test_unknown_figure_id(self, tmp_path):
        assert main(["figure", "9", "--out", str(tmp_path / "x.csv")]) == 1


class TestNamed:
    def test_isotropic(self, capsys):
        assert main(["named", "--family", "isotropic", "--m", "3", "--x", "0.5"]) == 0
        report = parse_report(capsys.readouterr().out)
        assert float(report["abs_difference"]) < 1e-6

    def test_werner_vanishing_point(self, capsys):
        assert main(["named", "--family", "werner", "--m", "2", "--x", "0.5"]) == 0
        report = parse_report(capsys.readouterr().out)
        assert float(report["f_min_closed_form"]) == pytest.approx(0.0, abs=1e-12)
        assert float(report["f_min_oracle"]) == pytest.approx(0.0, abs=1e-8)

    def test_pure_alpha(self, capsys):
        assert main(["named", "--family", "pure", "--alpha", "0.3"]) == 0
        report = parse_report(capsys.readouterr().out)
        assert float(report["f_min_closed_form"]) == pytest.approx(0.42, abs=1e-12)
        assert float(report["f_min_oracle"]) == pytest.approx(0.42, abs=1e-8)

    def test_out_of_range(self, capsys):
        assert main(["named", "--family", "isotropic", "--m", "2", "--x", "1.5"]) == 1

    def test_pure_requires_alpha(self, capsys):
        assert main(["named", "--family", "pure"]) == 1


class TestVerify:
    def test_default_run_passes(self, capsys):
        assert main(["verify"]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out
        assert "checks passed" in out

    def test_seeded_runs_identical(self, capsys):
        assert main(["verify", "--seed", "11"]) == 0
        first = capsys.readouterr().out
        assert main(["verify", "--seed", "11"]) == 0
        second = capsys.readouterr().out
        assert first == second

    def test_injected_fault_fails_everything(self):
        results = run_checks(seed=3, tolerance_override=0.0)
        assert results and all(not r.passed for r in results)

    def test_failures_exit_3(self, capsys, monkeypatch):
        from qmin import cli
        from qmin.verify import CheckResult

        monkeypatch.setattr(
            cli, "run_checks", lambda seed: [CheckResult("fault", 0.0, 1.0, False)]
        )
        assert main(["verify"]) == 3


class TestConsoleScript:
    def test_entry_point_runs(self):
        proc = subprocess.run(
            [sys.executable, "-m", "qmin.cli", "--help"], capture_output=True, text=True
        )
        assert proc.returncode == 0
        assert "measure" in proc.stdout

    def test_usage_error_exit_1(self):
        proc = subprocess.run(
            [sys.executable, "-m", "qmin.cli", "sweep"], capture_output=True, text=True
        )
        assert proc.returncode == 1

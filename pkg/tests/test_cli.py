"""CLI surface: exit codes, deterministic output, clipping, sweeps."""

import json
import math

import pytest

from spinorflow.cli import EXIT_INVALID, EXIT_IO, EXIT_NUMERIC, EXIT_OK, main

from conftest import ROW_PAIRS


def write_pair(tmp_path, name, theta, extra=None):
    path = tmp_path / f"{name}.json"
    payload = {"theta": theta}
    if extra:
        payload.update(extra)
    path.write_text(json.dumps(payload))
    return str(path)


def theta_dict(**kw):
    base = dict(uu=0.0, ul=0.0, un=0.0, ll=0.0, ln=0.0, nn=0.0)
    base.update(kw)
    return base


@pytest.fixture
def e11_file(tmp_path):
    return write_pair(tmp_path, "e11", theta_dict(ll=1.0, nn=-1.0))


@pytest.fixture
def uu_file(tmp_path):
    return write_pair(tmp_path, "uu", theta_dict(uu=1.0))


class TestExitCodes:
    def test_valid_pair(self, e11_file, capsys):
        assert main(["validate", e11_file]) == EXIT_OK
        out = capsys.readouterr().out
        assert "row: E11" in out
        assert "H0: -4.000000000000e+00" in out
        assert "constrained_ricci_flat: false" in out

    def test_invalid_pair(self, tmp_path, capsys):
        path = write_pair(tmp_path, "bad", theta_dict(ul=1.0, ll=1.0))
        assert main(["validate", path]) == EXIT_INVALID
        assert "invalid pair" in capsys.readouterr().out

    def test_malformed_json(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        assert main(["validate", str(path)]) == EXIT_IO

    def test_missing_file(self, tmp_path):
        assert main(["validate", str(tmp_path / "nope.json")]) == EXIT_IO

    def test_wrong_schema(self, tmp_path):
        path = tmp_path / "schema.json"
        path.write_text(json.dumps({"theta": [1, 2, 3]}))
        assert main(["validate", str(path)]) == EXIT_IO

    def test_window_outside_lifespan(self, uu_file, capsys):
        # the flow blows up at t = 1; a window beyond it cannot be clipped
        code = main(["flow", uu_file, "--t0", "2.0", "--t1", "3.0"])
        assert code == EXIT_NUMERIC
        assert "numeric failure" in capsys.readouterr().err

    def test_failed_suite_exit_code(self, uu_file, monkeypatch, capsys):
        monkeypatch.setenv("SPINORFLOW_TOL", "1e-9")
        assert main(["verify", uu_file, "--suite", "constraints"]) == EXIT_OK


class TestClassifyAndLifespan:
    def test_classify(self, e11_file, capsys):
        assert main(["classify", e11_file]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "E11"

    def test_classify_mu(self, tmp_path, capsys):
        path = write_pair(tmp_path, "tau3", theta_dict(uu=3.0, ll=2.0, nn=1.0))
        assert main(["classify", path]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("Tau3Mu")
        assert "mu=5.000000000000e-01" in out

    def test_lifespan_finite_end(self, uu_file, capsys):
        assert main(["lifespan", uu_file]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["t_minus"] == "-inf"
        assert float(payload["t_plus"]) == pytest.approx(1.0)
        assert payload["immortal"] is False

    def test_lifespan_immortal(self, e11_file, capsys):
        assert main(["lifespan", e11_file]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["immortal"] is True
        assert payload["t_minus"] == "-inf" and payload["t_plus"] == "inf"


class TestFlow:
    def test_deterministic_output(self, e11_file, tmp_path):
        out1, out2 = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
        args = ["flow", e11_file, "--t0", "-1", "--t1", "1", "--samples", "20"]
        assert main(args + ["--out", out1]) == EXIT_OK
        assert main(args + ["--out", out2]) == EXIT_OK
        b1 = open(out1, "rb").read()
        assert b1 == open(out2, "rb").read()
        assert len(b1) > 0

    def test_exact_rk4_agree(self, e11_file, tmp_path):
        outs = {}
        for method in ("exact", "rk4"):
            out = str(tmp_path / f"{method}.csv")
            assert main(["flow", e11_file, "--t0", "-0.5", "--t1", "0.5",
                         "--samples", "5", "--method", method,
                         "--out", out]) == EXIT_OK
            outs[method] = open(out).read().splitlines()
        header = outs["exact"][0].split(",")
        for le, lr in zip(outs["exact"][1:], outs["rk4"][1:]):
            for name, a, b in zip(header, le.split(","), lr.split(",")):
                assert abs(float(a) - float(b)) <= 1e-7, name

    def test_uu_column_approaches_pole(self, uu_file, capsys):
        assert main(["flow", uu_file, "--t0", "0", "--t1", "0.9",
                     "--samples", "10"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        header = lines[0].split(",")
        idx = header.index("theta_uu")
        last = float(lines[-1].split(",")[idx])
        assert last == pytest.approx(10.0, abs=1e-8)

    def test_e11_hamiltonian_column_constant(self, e11_file, capsys):
        assert main(["flow", e11_file, "--t0", "-1", "--t1", "1",
                     "--samples", "8"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        idx = lines[0].split(",").index("H")
        for line in lines[1:]:
            assert float(line.split(",")[idx]) == pytest.approx(-4.0, abs=1e-10)

    def test_clipping_warns(self, uu_file, capsys):
        assert main(["flow", uu_file, "--t0", "0", "--t1", "5",
                     "--samples", "5"]) == EXIT_OK
        captured = capsys.readouterr()
        assert "clipped" in captured.err
        lines = captured.out.splitlines()
        t_idx = lines[0].split(",").index("t")
        assert float(lines[-1].split(",")[t_idx]) < 1.0

    def test_json_format(self, e11_file, capsys):
        assert main(["flow", e11_file, "--t0", "0", "--t1", "0.5",
                     "--samples", "3", "--format", "json"]) == EXIT_OK
        rows = json.loads(capsys.readouterr().out)
        assert len(rows) == 3
        assert float(rows[0]["h_ll"]) == pytest.approx(1.0)

    def test_tabulated_lapse_in_input(self, tmp_path, capsys):
        beta = {"kind": "tabulated", "times": [-1.0, 1.0], "values": [1.0, 3.0]}
        path = write_pair(tmp_path, "lapse", theta_dict(uu=-1.0),
                          extra={"beta": beta})
        assert main(["flow", path, "--t0", "-0.5", "--t1", "0.5",
                     "--samples", "3"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        b_idx = lines[0].split(",").index("B")
        # B(0.5) for beta = 2 + t is 1.125
        assert float(lines[-1].split(",")[b_idx]) == pytest.approx(1.125)


class TestCurvatureAndVerify:
    def test_curvature_report(self, e11_file, capsys):
        assert main(["curvature", e11_file, "--t0", "-0.5", "--t1", "0.5",
                     "--samples", "3"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["lifespan"]["immortal"] is True
        assert len(payload["samples"]) == 3
        for rep in payload["samples"]:
            assert rep["identity_residual"] <= 1e-8
            assert rep["hamiltonian"] == pytest.approx(-4.0)

    def test_verify_all_suites_pass(self, tmp_path, capsys, row_pair):
        path = tmp_path / "pair.json"
        path.write_text(json.dumps(row_pair.to_json_dict()))
        assert main(["verify", str(path)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "[pass]" in out and "FAIL" not in out

    def test_verify_single_suite(self, e11_file, capsys):
        assert main(["verify", e11_file, "--suite", "oracle"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.count("[pass]") >= 1


class TestSweep:
    def test_sweep_outputs_per_index(self, tmp_path, capsys):
        pairs = [
            {"theta": theta_dict(uu=1.0)},
            {"theta": theta_dict(ll=1.0, nn=-1.0)},
        ]
        path = tmp_path / "sweep.json"
        path.write_text(json.dumps(pairs))
        out = str(tmp_path / "run.csv")
        code = main(["flow", str(path), "--sweep", "--t0", "-0.5",
                     "--t1", "0.5", "--samples", "3", "--out", out])
        assert code == EXIT_OK
        assert (tmp_path / "run.000.csv").exists()
        assert (tmp_path / "run.001.csv").exists()

    def test_sweep_reports_worst_exit(self, tmp_path, capsys):
        pairs = [
            {"theta": theta_dict(uu=1.0)},
            {"theta": theta_dict(ul=1.0, ll=1.0)},  # invalid
        ]
        path = tmp_path / "sweep.json"
        path.write_text(json.dumps(pairs))
        assert main(["validate", str(path), "--sweep"]) == EXIT_INVALID
        out = capsys.readouterr().out
        assert "# pair 0" in out and "# pair 1" in out

import json

import pytest
from click.testing import CliRunner

from qlre.cli import main


@pytest.fixture
def runner():
    return CliRunner()


class TestEstimateCommand:
    def test_hubbard_report(self, runner, tmp_path):
        out = tmp_path / "hub.json"
        res = runner.invoke(main, [
            "estimate", "--model", "hubbard-10x10", "--method", "qsp",
            "--eps", "0.1", "--out", str(out),
        ])
        assert res.exit_code == 0, res.output
        body = json.loads(out.read_text())
        assert abs(body["t_count"] - 3.3e9) / 3.3e9 < 0.25
        csv_text = out.with_suffix(".csv").read_text()
        assert "provenance" in csv_text.splitlines()[0]

    def test_ca_trotter_report(self, runner, tmp_path):
        out = tmp_path / "ca.json"
        res = runner.invoke(main, [
            "estimate", "--model", "ca3co2o6", "--method", "trotter",
            "--eps", "0.01", "--out", str(out),
        ])
        assert res.exit_code == 0, res.output
        body = json.loads(out.read_text())
        assert body["t_count"] == pytest.approx(1.27e42, rel=0.005)

    def test_missing_model_exit_2(self, runner, tmp_path):
        res = runner.invoke(main, [
            "estimate", "--model", str(tmp_path / "nope.json"),
            "--eps", "0.1", "--out", str(tmp_path / "x.json"),
        ])
        assert res.exit_code == 2

    def test_reports_round_trip_byte_identical(self, runner, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for out in (a, b):
            res = runner.invoke(main, [
                "estimate", "--model", "hubbard-10x10", "--eps", "0.1",
                "--out", str(out),
            ])
            assert res.exit_code == 0
        assert a.read_bytes() == b.read_bytes()
        # parse -> re-emit reproduces the file byte for byte
        text = a.read_text()
        assert json.dumps(json.loads(text), sort_keys=True, indent=2) + "\n" == text

    def test_custom_model_file(self, runner, tmp_path):
        model = tmp_path / "toy.json"
        model.write_text(json.dumps({
            "name": "toy", "alpha": 40.0, "qubits": 8,
            "cu": {"t_count": 32, "depth": 4},
        }))
        out = tmp_path / "toy_report.json"
        res = runner.invoke(main, [
            "estimate", "--model", str(model), "--eps", "0.1", "--time", "5",
            "--out", str(out),
        ])
        assert res.exit_code == 0, res.output
        assert json.loads(out.read_text())["model"] == "toy"


class TestPhysicalCommand:
    def test_footprint_and_parallel(self, runner, tmp_path):
        rep = tmp_path / "rep.json"
        runner.invoke(main, [
            "estimate", "--model", "hubbard-10x10", "--eps", "0.1", "--out", str(rep),
        ])
        out = tmp_path / "phys.json"
        res = runner.invoke(main, [
            "physical", "--report", str(rep), "--out", str(out),
        ])
        assert res.exit_code == 0, res.output
        seq = json.loads(out.read_text())
        res2 = runner.invoke(main, [
            "physical", "--report", str(rep), "--mode", "parallel", "--k", "1.6",
            "--out", str(tmp_path / "phys_par.json"),
        ])
        assert res2.exit_code == 0
        par = json.loads((tmp_path / "phys_par.json").read_text())
        assert par["runtime_seconds"] == pytest.approx(seq["runtime_seconds"] / 1.6)

    def test_infeasible_budget_exit_3(self, runner, tmp_path):
        rep = tmp_path / "rep.json"
        runner.invoke(main, [
            "estimate", "--model", "hubbard-10x10", "--eps", "0.1", "--out", str(rep),
        ])
        hw = tmp_path / "hw.json"
        hw.write_text(json.dumps({"p_phys": 9.9e-3}))
        res = runner.invoke(main, [
            "physical", "--report", str(rep), "--hardware", str(hw),
            "--budget", "1e-9", "--out", str(tmp_path / "x.json"),
        ])
        assert res.exit_code == 3


class TestBenchCommand:
    def test_planted_tfim_deterministic(self, runner, tmp_path):
        d1, d2 = tmp_path / "r1", tmp_path / "r2"
        for d in (d1, d2):
            res = runner.invoke(main, [
                "bench", "gen", "--type", "planted-tfim", "--n", "6",
                "--t-gates", "1", "--seed", "9", "--out", str(d),
            ])
            assert res.exit_code == 0, res.output
        f1 = d1 / "planted-tfim-n6-seed9.json"
        f2 = d2 / "planted-tfim-n6-seed9.json"
        assert f1.read_bytes() == f2.read_bytes()
        body = json.loads(f1.read_text())
        assert "answers" in body  # unsealed: answers ride along

    def test_seal_detaches_answers(self, runner, tmp_path):
        res = runner.invoke(main, [
            "bench", "gen", "--type", "planted-tfim", "--n", "5",
            "--t-gates", "1", "--seed", "2", "--seal", "--out", str(tmp_path),
        ])
        assert res.exit_code == 0, res.output
        inst = json.loads((tmp_path / "planted-tfim-n5-seed2.json").read_text())
        assert "answers" not in inst
        ans = json.loads((tmp_path / "planted-tfim-n5-seed2.answers.json").read_text())
        assert len(ans["answers"]) == 10

    def test_term_growth_budget(self, runner, tmp_path):
        res = runner.invoke(main, [
            "bench", "gen", "--type", "planted-tfim", "--n", "8",
            "--t-gates", "1", "--seed", "0", "--out", str(tmp_path),
        ])
        assert res.exit_code == 0
        inst = json.loads((tmp_path / "planted-tfim-n8-seed0.json").read_text())
        assert len(inst["hamiltonian"]["terms"]) <= 2 * (2 * 8 - 1)

    def test_prosen_fixture_files(self, runner, tmp_path):
        res = runner.invoke(main, [
            "bench", "gen", "--type", "prosen", "--n", "4", "--out", str(tmp_path),
        ])
        assert res.exit_code == 0, res.output
        inst = json.loads((tmp_path / "prosen-n4-seed0.json").read_text())
        assert inst["convention"] == "paper2"
        assert len(inst["generators"]) == 4
        csv_text = (tmp_path / "prosen-n4-seed0.currents.csv").read_text()
        assert csv_text.startswith("kind,index,value")


class TestVerifyCommand:
    def test_freefermion_suite_passes(self, runner, tmp_path):
        out = tmp_path / "verify.json"
        res = runner.invoke(main, [
            "verify", "--suite", "freefermion", "--out", str(out),
        ])
        assert res.exit_code == 0, res.output
        assert "[PASS] freefermion" in res.output
        body = json.loads(out.read_text())
        assert body["passed"] is True

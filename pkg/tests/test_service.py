import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from qlre.service.app import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


class TestHealthAndModels:
    def test_health(self, client):
        r = client.get("/health")
        assert r.status_code == 200
        assert r.json() == {"status": "ok"}

    def test_models_listing(self, client):
        r = client.get("/models")
        assert r.status_code == 200
        names = {m["name"] for m in r.json()}
        assert names == {"ca3co2o6", "hubbard-10x10"}


class TestEstimateEndpoint:
    def test_hubbard_qsp_defaults(self, client):
        r = client.post("/estimate", json={"model": "hubbard-10x10", "eps": 0.1})
        assert r.status_code == 200
        body = r.json()
        assert abs(body["t_count"] - 3.3e9) / 3.3e9 < 0.25
        assert body["qubits"] == 600
        assert body["extras"]["t"] == 36.0

    def test_ca_trotter(self, client):
        r = client.post(
            "/estimate", json={"model": "ca3co2o6", "method": "trotter", "eps": 0.01}
        )
        assert r.status_code == 200
        body = r.json()
        assert body["extras"]["step_t_with_rotations"] == 30_264_677

    def test_unknown_model_404(self, client):
        r = client.post("/estimate", json={"model": "xyzzy", "eps": 0.1})
        assert r.status_code == 404

    def test_custom_model(self, client):
        payload = {
            "model": "custom",
            "eps": 0.1,
            "t": 10.0,
            "custom": {"name": "toy", "alpha": 50.0, "qubits": 12,
                       "cu": {"t_count": 64, "depth": 8}},
        }
        r = client.post("/estimate", json=payload)
        assert r.status_code == 200
        assert r.json()["model"] == "toy"

    def test_custom_missing_payload(self, client):
        r = client.post("/estimate", json={"model": "custom", "eps": 0.1, "t": 1.0})
        assert r.status_code == 422

    def test_trotter_requires_ca(self, client):
        r = client.post(
            "/estimate", json={"model": "hubbard-10x10", "method": "trotter", "eps": 0.1}
        )
        assert r.status_code == 422

    def test_eps_validation(self, client):
        r = client.post("/estimate", json={"model": "hubbard-10x10", "eps": 2.0})
        assert r.status_code == 422


class TestPhysicalEndpoint:
    def _report(self, client):
        return client.post("/estimate", json={"model": "hubbard-10x10", "eps": 0.1}).json()

    def test_footprint(self, client):
        r = client.post("/physical", json={"report": self._report(client)})
        assert r.status_code == 200
        body = r.json()
        assert body["code_distance"] % 2 == 1
        assert 3_800 <= body["runtime_seconds"] <= 380_000

    def test_parallel_mode(self, client):
        rep = self._report(client)
        seq = client.post("/physical", json={"report": rep, "mode": "sequential"}).json()
        par = client.post(
            "/physical", json={"report": rep, "mode": "parallel", "k": 1.6}
        ).json()
        assert par["runtime_seconds"] == pytest.approx(seq["runtime_seconds"] / 1.6)

    def test_infeasible_budget_409(self, client):
        rep = self._report(client)
        hw = {"p_phys": 9.9e-3}  # essentially at threshold
        r = client.post("/physical", json={"report": rep, "hardware": hw, "budget": 1e-9})
        assert r.status_code == 409


class TestBenchEndpoint:
    def test_planted_tfim(self, client):
        r = client.post(
            "/bench/generate",
            json={"type": "planted-tfim", "n": 6, "t_gates": 1, "seed": 4},
        )
        assert r.status_code == 200
        body = r.json()
        assert body["instance"]["n"] == 6
        assert body["answers"] is not None
        assert len(body["answers"]["answers"]) == 15  # all site pairs

    def test_seal_withholds_answers(self, client):
        r = client.post(
            "/bench/generate",
            json={"type": "planted-tfim", "n": 4, "t_gates": 0, "seed": 1, "seal": True},
        )
        assert r.json()["answers"] is None

    def test_prosen_fixture(self, client):
        r = client.post("/bench/generate", json={"type": "prosen", "n": 4, "seed": 0})
        assert r.status_code == 200
        ans = r.json()["answers"]
        assert ans["residual"] < 1e-10
        assert len(ans["spin_currents"]) == 4
        assert ans["gap"] > 0

    def test_size_caps(self, client):
        r = client.post("/bench/generate", json={"type": "prosen", "n": 12})
        assert r.status_code == 422


class TestUtilityEndpoint:
    def test_mit_headline(self, client):
        r = client.post(
            "/utility",
            json={
                "tech_weight": 0.2,
                "revenue_share": 0.1,
                "extra_factors": [0.2, 0.1],
                "market_size": 1.1e12,
            },
        )
        assert r.status_code == 200
        assert r.json()["utility"] == pytest.approx(440e6)


class TestVerifyEndpoint:
    def test_single_fast_suite(self, client):
        r = client.post("/verify", json={"suite": "freefermion"})
        assert r.status_code == 200
        body = r.json()
        assert body["passed"] is True
        assert body["suites"][0]["suite"] == "freefermion"

    def test_unknown_suite_rejected(self, client):
        r = client.post("/verify", json={"suite": "everything"})
        assert r.status_code == 422

import math

import numpy as np
import pytest

from qlre.evolution import (
    EstimateRequest,
    MIT_SEARCH_UTILITY,
    ResourceReport,
    ThermalCostParams,
    UtilityInput,
    floor_to_sigfigs,
    maglab_cost_per_material,
    parallelism_factor,
    qsp_call_count,
    qsp_resources,
    revenue_delta,
    round_to_sigfigs,
    thermal_generator_cost,
    trotter_error_bound,
    trotter_resources,
    trotter_step_budget,
    trotter_step_cost,
    utility_estimate,
)
from qlre.gates import GateCost
from qlre.models import CaModel, HubbardModel


class TestQspCallCount:
    def test_hubbard_point(self):
        calls = qsp_call_count(HubbardModel().alpha(), 36, 0.1, 1)
        assert abs(calls - 1.7e5) / 1.7e5 < 0.10

    def test_ca_point(self):
        calls = qsp_call_count(CaModel().alpha(), 1e11, 0.01, 10)
        assert abs(calls - 6.3e16) / 6.3e16 < 0.10

    def test_formula_edge(self):
        assert qsp_call_count(1.0, 16.0, 1.0, 1) == pytest.approx(32.0)

    def test_monotone_in_t_and_inv_eps(self):
        base = [qsp_call_count(100.0, t, 0.1) for t in np.linspace(1, 50, 20)]
        assert all(b > a for a, b in zip(base, base[1:]))
        by_eps = [qsp_call_count(100.0, 10.0, e) for e in np.logspace(-1, -8, 15)]
        assert all(b > a for a, b in zip(by_eps, by_eps[1:]))

    def test_domain(self):
        with pytest.raises(ValueError):
            qsp_call_count(1.0, 1.0, 1.0)


class TestQspResources:
    def test_hubbard_t_total(self):
        rep = qsp_resources(HubbardModel(), 36, 0.1, 1)
        assert abs(rep.t_count - 3.3e9) / 3.3e9 < 0.25
        assert rep.qubits == 600
        assert rep.t_count == pytest.approx(rep.call_count * rep.extras["per_call_t"])

    def test_ca_t_total(self):
        rep = qsp_resources(CaModel(), 1e11, 0.01, 10)
        assert abs(rep.t_count - 1.4e22) / 1.4e22 < 0.30
        assert rep.qubits == 4050

    def test_parallelism(self):
        rep = qsp_resources(HubbardModel(), 36, 0.1, 1)
        assert rep.parallelism_k == pytest.approx(7.5)
        assert 0.1 < rep.extras["k_with_hamiltonian"] < 2.0  # ~1 with the Hamiltonian encoding
        rep_ca = qsp_resources(CaModel(), 1e11, 0.01, 10)
        assert round(rep_ca.parallelism_k, 1) == 1.6

    def test_report_round_trip(self):
        rep = qsp_resources(HubbardModel(), 36, 0.1, 1)
        back = ResourceReport.from_json_dict(rep.to_json_dict())
        assert back.to_json_dict() == rep.to_json_dict()


class TestTrotterBound:
    SUMS = dict(sum_2mL=157_950.0, sum_2H=6_493.5,
                sum_sq_L=35_538_750.0, sum_sq_H=41_990_582.25)

    def test_zero_delta(self):
        assert trotter_error_bound(1, 1, 1, 1, 0.0) == 0.0

    def test_paper_delta_satisfies_budget(self):
        delta = 2.4e-24
        per_step = trotter_error_bound(delta=delta, **self.SUMS)
        n = 1e11 / delta
        assert n * per_step <= 0.01

    def test_budget_search(self):
        delta, n = trotter_step_budget(self.SUMS, 1e11, 0.01)
        assert abs(delta - 2.4e-24) / 2.4e-24 < 0.05
        assert abs(n - 4.2e34) / 4.2e34 < 0.05
        # re-substitution: the bound is met at the returned step
        assert n * trotter_error_bound(delta=delta, **self.SUMS) <= 0.01 * (1 + 1e-9)

    def test_linear_regime_halving(self):
        d1, _ = trotter_step_budget(self.SUMS, 1e11, 0.01)
        d2, _ = trotter_step_budget(self.SUMS, 1e11, 0.005)
        assert abs(d2 - d1 / 2) / (d1 / 2) < 0.10

    def test_zero_time(self):
        _, n = trotter_step_budget(self.SUMS, 0.0, 0.01)
        assert n == 0


class TestTrotterPipeline:
    def test_step_cost_exact(self):
        step = trotter_step_cost(CaModel())
        assert step["t_count"] == 16_426_800
        assert step["rotation_count"] == 175_163
        assert step["rotation_count_raw"] == pytest.approx(175_162.5)
        assert step["depth_no_rotations"] == 594_714
        assert step["rotation_depth"] == 1_435

    def test_full_pipeline(self):
        rep = trotter_resources(CaModel(), 1e11, 0.01)
        ex = rep.extras
        assert ex["delta"] == pytest.approx(2.4e-24, rel=1e-9)
        assert ex["n_steps"] == pytest.approx(4.2e34, rel=1e-9)
        assert abs(ex["eps_rotation"] - 1.4e-42) / 1.4e-42 < 0.03
        assert ex["t_per_rotation"] == 79
        assert ex["step_t_with_rotations"] == 30_264_677
        assert ex["step_depth_with_rotations"] == 821_444
        # three significant figures on the totals
        assert round_to_sigfigs(rep.t_count, 3) == pytest.approx(1.27e42)
        assert round_to_sigfigs(rep.depth, 3) == pytest.approx(3.45e40)

    def test_totals_compose(self):
        rep = trotter_resources(CaModel(), 1e11, 0.01)
        ex = rep.extras
        assert rep.t_count == pytest.approx(ex["step_t_with_rotations"] * ex["n_steps"])
        assert rep.depth == pytest.approx(ex["step_depth_with_rotations"] * ex["n_steps"])
        assert ex["step_depth_with_rotations"] == pytest.approx(
            ex["step_depth_no_rotations"] + ex["step_rotation_depth"] * 2 * ex["t_per_rotation"]
        )


class TestThermal:
    def test_paper_instantiation(self):
        out = thermal_generator_cost(ThermalCostParams())
        assert out["t_count"] == pytest.approx(1.1475e19)
        assert abs(out["t_count"] - 1.15e19) / 1.15e19 < 0.01
        assert out["n"] == pytest.approx(math.log2(1500 * 20 * 5000))
        assert out["t0"] == pytest.approx(2 ** (-out["n"] / 2))

    def test_unit_lambda(self):
        out = thermal_generator_cost(ThermalCostParams(lam=1.0, v_cost=1.0, t_av=2.0, eps=1.0))
        assert out["t_count"] == pytest.approx(40 * 2.0)

    def test_cubic_in_lambda(self):
        a = thermal_generator_cost(ThermalCostParams(lam=500.0))["t_count"]
        b = thermal_generator_cost(ThermalCostParams(lam=1000.0))["t_count"]
        assert b == pytest.approx(8 * a)

    def test_positive_params(self):
        with pytest.raises(ValueError):
            ThermalCostParams(lam=-1)


class TestParallelism:
    def test_points(self):
        assert parallelism_factor(GateCost(t_count=1200, depth=32)) == 7.5
        k = parallelism_factor(GateCost(t_count=185_000, depth=23_000))
        assert round(k, 1) == 1.6
        assert parallelism_factor(GateCost(t_count=5, depth=1)) == 1.0

    def test_zero_depth(self):
        with pytest.raises(ValueError):
            parallelism_factor(GateCost(t_count=5, depth=0))


class TestUtility:
    def test_mit_headline(self):
        assert utility_estimate(MIT_SEARCH_UTILITY) == pytest.approx(440e6)

    def test_maglab(self):
        assert abs(maglab_cost_per_material() - 2e6) / 2e6 < 0.05

    def test_revenue_delta(self):
        assert revenue_delta(0.0, 10.0, 5.0) == 0.0
        assert revenue_delta(2.0, 10.0, 4.0) == 6.0

    def test_factor_validation(self):
        with pytest.raises(ValueError):
            UtilityInput(tech_weight=11.0, revenue_share=1.0, extra_factors=(),
                         market_size=1.0)


class TestRequestValidation:
    def test_bad_eps(self):
        with pytest.raises(ValueError):
            EstimateRequest(model="x", method="qsp", t=1.0, eps=1.5)

    def test_bad_method(self):
        with pytest.raises(ValueError):
            EstimateRequest(model="x", method="magic", t=1.0, eps=0.5)


class TestSigfigs:
    def test_floor(self):
        assert floor_to_sigfigs(2.46297e-24, 2) == pytest.approx(2.4e-24)
        assert floor_to_sigfigs(0.0, 2) == 0.0

    def test_round(self):
        assert round_to_sigfigs(4.1667e34, 2) == pytest.approx(4.2e34)

import pytest

from qlre.evolution import ResourceReport, qsp_resources
from qlre.layout import (
    HardwareParams,
    footprint,
    logical_error_rate,
    select_code_distance,
)
from qlre.models import CaModel, HubbardModel


def hubbard_report():
    return qsp_resources(HubbardModel(), 36, 0.1, 1)


class TestDistanceSelection:
    def test_closed_form_inversion(self):
        hw = HardwareParams()  # p/p_th = 0.1, a = 0.03
        d = select_code_distance(1, 1, 3 * 0.03 * 1e-3, hw)
        assert d == 5

    def test_tighter_budget_never_decreases(self):
        hw = HardwareParams()
        budgets = [0.3, 0.1, 0.03, 0.01, 1e-4, 1e-8]
        ds = [select_code_distance(100, 1e9, b, hw) for b in budgets]
        assert all(b >= a for a, b in zip(ds, ds[1:]))

    def test_hubbard_bracket(self):
        d = select_code_distance(600, 3.3e9, 0.01, HardwareParams())
        assert 25 <= d <= 45

    def test_unreachable(self):
        hw = HardwareParams(p_phys=9.9e-3)  # barely below threshold
        with pytest.raises(ValueError):
            select_code_distance(1e6, 1e30, 1e-12, hw)

    def test_bad_budget(self):
        with pytest.raises(ValueError):
            select_code_distance(1, 1, 1.5, HardwareParams())


class TestFootprint:
    def test_hubbard_table_row(self):
        est = footprint(hubbard_report())
        assert est.code_distance % 2 == 1
        assert 3_800 <= est.runtime_seconds <= 380_000
        assert 0.29e6 <= est.physical_qubits <= 29e6
        assert est.achieved_logical_error <= 0.01

    def test_ca_table_row(self):
        est = footprint(qsp_resources(CaModel(), 1e11, 0.01, 10))
        assert 2.2e16 <= est.runtime_seconds <= 2.2e18

    def test_parallel_mode_divides_by_k(self):
        rep = hubbard_report()
        seq = footprint(rep, mode="sequential")
        par = footprint(rep, mode="parallel", k=1.6)
        assert par.runtime_seconds == pytest.approx(seq.runtime_seconds / 1.6)
        one = footprint(rep, mode="parallel", k=1.0)
        assert one.runtime_seconds == pytest.approx(seq.runtime_seconds)

    def test_runtime_increases_with_t(self):
        rep = hubbard_report()
        bigger = ResourceReport.from_json_dict({**rep.to_json_dict(), "t_count": rep.t_count * 10})
        assert footprint(bigger).runtime_seconds > footprint(rep).runtime_seconds

    def test_qubits_increase_with_distance(self):
        hw = HardwareParams()
        rep = hubbard_report()
        loose = footprint(rep, hw, budget=0.5)
        tight = footprint(rep, hw, budget=1e-6)
        assert tight.code_distance > loose.code_distance
        assert tight.physical_qubits > loose.physical_qubits

    def test_hardware_json_round_trip(self):
        hw = HardwareParams()
        back = HardwareParams.from_json_dict(hw.to_json_dict())
        assert back.p_phys == hw.p_phys
        assert back.cycle_time == pytest.approx(hw.cycle_time)
        assert back.factory.qubits_per_factory == hw.factory.qubits_per_factory

    def test_error_model_decreases_with_d(self):
        hw = HardwareParams()
        assert logical_error_rate(7, hw) < logical_error_rate(5, hw)

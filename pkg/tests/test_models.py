import numpy as np
import pytest

from qlre.models import (
    CaModel,
    ChainModel,
    CustomModel,
    HubbardModel,
    builtin_model,
    tfim_chain,
)


class TestCaModel:
    def test_lattice_size(self):
        ca = CaModel()
        assert ca.n_spins == 2025
        assert ca.qubits == 4050

    def test_degrees(self):
        ca = CaModel()
        from collections import Counter

        deg = Counter()
        for i, j, c in ca.bonds():
            deg[(i, abs(c))] += 1
            deg[(j, abs(c))] += 1
        # every spin: two chain bonds, twelve inter-layer bonds
        assert all(deg[(s, 1.0)] == 2 for s in range(ca.n_spins))
        assert all(deg[(s, 0.1)] == 12 for s in range(ca.n_spins))

    def test_norm_bounds(self):
        ca = CaModel()
        assert ca.hamiltonian_norm_bound("per-spin") == pytest.approx(3.2 * 2025)
        assert ca.hamiltonian_norm_bound("bond-shared") == pytest.approx(1.6 * 2025)
        # the symbolic operator bound matches the bond-shared counting
        hz = ca.hamiltonian_z(0.0)
        assert hz.norm_bound() == pytest.approx(3240.0, rel=1e-9)

    def test_alpha(self):
        ca = CaModel()
        assert abs(ca.alpha() - 6500) / 6500 < 0.10
        # alpha dominates both of its ingredients
        assert ca.alpha() >= ca.hamiltonian_norm_bound()
        assert ca.alpha() >= np.sqrt(sum(g**2 for g in ca.generator_norms()))

    def test_trotter_sums_exact(self):
        sums = CaModel().trotter_norm_sums()
        assert sums["sum_2mL"] == 157_950.0
        assert sums["sum_2H"] == 6_493.5
        assert sums["sum_sq_L"] == 35_538_750.0
        assert sums["sum_sq_H"] == 41_990_582.25

    def test_generator_count(self):
        assert CaModel().generator_count == 39 * 2025


class TestHubbardModel:
    def test_alpha(self):
        hb = HubbardModel()
        assert abs(hb.alpha() - 1100) / 1100 < 0.10
        assert hb.alpha() >= hb.hamiltonian_norm_bound()
        assert hb.alpha() >= np.sqrt(sum(g**2 for g in hb.generator_norms()))

    def test_qubits_and_generators(self):
        hb = HubbardModel()
        assert hb.qubits == 600
        assert hb.generator_count == 40
        assert HubbardModel(lx=2, ly=2).generator_count == 8

    def test_t_min(self):
        assert HubbardModel().t_min == pytest.approx(36, rel=0.02)

    def test_small_hamiltonian_hermitian(self):
        h = HubbardModel(lx=2, ly=2).hamiltonian()
        d = h.to_dense()
        assert np.abs(d - d.conj().T).max() < 1e-12

    def test_hopping_bond_count(self):
        hb = HubbardModel()
        nn = [b for b in hb.hopping_bonds() if abs(b[2]) == 1.0]
        nnn = [b for b in hb.hopping_bonds() if abs(b[2]) == 0.15]
        assert len(nn) == 2 * 10 * 9
        assert len(nnn) == 2 * 9 * 9

    def test_per_call_cost(self):
        assert HubbardModel().per_call_cost().t_count == 1200 + 1600 + 14840


class TestChainModel:
    def test_local_terms_sum_to_hamiltonian(self):
        cm = ChainModel(5, 1.5, 1.0)
        total = cm.local_terms()[0]
        for t in cm.local_terms()[1:]:
            total = total + t
        assert total.terms == cm.hamiltonian.terms

    def test_tfim_term_count(self):
        h = tfim_chain(4)
        assert len(h) == 7  # 3 ZZ + 4 X


class TestRegistry:
    def test_builtin(self):
        assert builtin_model("ca3co2o6").name == "ca3co2o6"
        assert builtin_model("hubbard-10x10").name == "hubbard-10x10"
        with pytest.raises(KeyError):
            builtin_model("nope")

    def test_custom_round_trip(self):
        d = {
            "name": "toy",
            "alpha": 12.0,
            "qubits": 9,
            "cu": {"t_count": 100, "depth": 10},
            "cv_t_count": 5.0,
        }
        m = CustomModel.from_json_dict(d)
        assert m.alpha() == 12.0
        assert m.per_call_cost().t_count == 105.0
        back = CustomModel.from_json_dict(m.to_json_dict())
        assert back.per_call_cost().t_count == 105.0

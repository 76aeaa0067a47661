import pytest

from qlre.gates import (
    ControlProfile,
    GateCost,
    adder_block_cost,
    add_controls,
    multi_controlled_cost,
    par,
    primitive_cost,
    rotation_synthesis_cost,
    seq,
)

GOLDEN_PRIMITIVES = {
    "Toffoli": (4, 11),
    "CSWAP": (4, 13),
    "CT": (5, 13),
    "CCSWAP": (6, 18),
    "C3X": (6, 16),
}


class TestPrimitives:
    def test_golden_table(self):
        for gate, (t, depth) in GOLDEN_PRIMITIVES.items():
            c = primitive_cost(gate)
            assert (c.t_count, c.depth) == (t, depth), gate

    def test_toffoli_t_depth_one(self):
        assert primitive_cost("Toffoli").t_depth == 1

    def test_ccswap_ancilla(self):
        assert primitive_cost("CCSWAP").ancillas == 1

    def test_unknown_gate(self):
        with pytest.raises(ValueError):
            primitive_cost("CCCCX")


class TestMultiControlled:
    def test_quoted_values(self):
        assert (multi_controlled_cost(7).t_count, multi_controlled_cost(7).depth) == (24, 57)
        assert (multi_controlled_cost(6).t_count, multi_controlled_cost(6).depth) == (20, 53)
        assert (multi_controlled_cost(3).t_count, multi_controlled_cost(3).depth) == (6, 16)
        assert (multi_controlled_cost(2).t_count, multi_controlled_cost(2).depth) == (4, 11)

    def test_monotone_from_four(self):
        prev = multi_controlled_cost(4)
        for n in range(5, 40):
            cur = multi_controlled_cost(n)
            assert cur.t_count > prev.t_count
            assert cur.depth >= prev.depth
            prev = cur

    def test_guard(self):
        with pytest.raises(ValueError):
            multi_controlled_cost(1)


class TestRotationSynthesis:
    def test_paper_instantiation(self):
        assert round(rotation_synthesis_cost(1.4e-42)) == 79

    def test_power_of_two(self):
        v = rotation_synthesis_cost(2.0**-100)
        assert v == pytest.approx(0.53 * 100 + 4.86)
        assert round(v) == 58

    def test_monotone(self):
        eps = [10.0**-k for k in range(1, 40)]
        vals = [rotation_synthesis_cost(e) for e in eps]
        assert all(b >= a for a, b in zip(vals, vals[1:]))

    def test_domain(self):
        with pytest.raises(ValueError):
            rotation_synthesis_cost(0.0)
        with pytest.raises(ValueError):
            rotation_synthesis_cost(1.5)


class TestAdder:
    def test_total_twenty(self):
        c = adder_block_cost([3] * 4 + [2] * 4)  # sum m = 20
        assert c.t_count == 80
        assert c.depth == 360

    def test_unit(self):
        c = adder_block_cost([1])
        assert (c.t_count, c.depth) == (4, 18)

    def test_two_registers(self):
        c = adder_block_cost([3, 2])
        assert (c.t_count, c.depth) == (20, 90)


class TestAddControls:
    def test_sigma_pm_c2u(self):
        p = ControlProfile(n_q=100, J=1, P=100, n_list=(1,), m=2)
        deltas, best = add_controls(p)
        assert deltas[1].t_count == 12
        assert best == 1

    def test_ca_generator_delta(self):
        for k in (1, 3, 5, 10):
            p = ControlProfile(n_q=17, J=2, P=1, n_list=(6, 1), m=k + 1)
            deltas, best = add_controls(p)
            assert deltas[1].t_count == 8 * (k + 1)
            assert best == 1

    def test_m1_no_op_for_12(self):
        p = ControlProfile(n_q=4, J=0, P=0, n_list=(), m=1)
        deltas, _ = add_controls(p)
        assert deltas[0].t_count == 0
        assert deltas[1].t_count == 0

    def test_selected_is_minimal(self):
        import numpy as np

        rng = np.random.default_rng(11)
        for _ in range(200):
            J = int(rng.integers(0, 4))
            n_list = tuple(int(rng.integers(1, 9)) for _ in range(J))
            p = ControlProfile(
                n_q=int(rng.integers(1, 200)),
                J=J,
                P=int(rng.integers(0, 120)),
                n_list=n_list,
                m=int(rng.integers(1, 12)),
            )
            deltas, best = add_controls(p)
            assert all(deltas[best].t_count <= d.t_count for d in deltas)

    def test_method3_halving_flag(self):
        p = ControlProfile(n_q=10, J=1, P=0, n_list=(2,), m=2)
        full, _ = add_controls(p)
        halved, _ = add_controls(p, halve_method3=True)
        assert halved[2].t_count == full[2].t_count - 4 * p.n_q
        assert halved[0].t_count == full[0].t_count  # other methods untouched


class TestComposition:
    def test_seq_toffoli(self):
        c = seq(primitive_cost("Toffoli"), primitive_cost("Toffoli"))
        assert (c.t_count, c.depth) == (8, 22)

    def test_par_toffoli_cswap(self):
        c = par(primitive_cost("Toffoli"), primitive_cost("CSWAP"))
        assert (c.t_count, c.depth) == (8, 13)

    def test_seq_associative_random(self):
        import numpy as np

        rng = np.random.default_rng(5)
        costs = [
            GateCost(
                t_count=int(rng.integers(0, 50)),
                rotation_count=int(rng.integers(0, 5)),
                depth=int(rng.integers(1, 100)),
                ancillas=int(rng.integers(0, 4)),
            )
            for _ in range(100)
        ]
        for i in range(0, 99, 3):
            a, b, c = costs[i], costs[(i + 1) % 100], costs[(i + 2) % 100]
            assert seq(seq(a, b), c) == seq(a, seq(b, c))
            assert par(par(a, b), c) == par(a, par(b, c))

    def test_scaled(self):
        c = primitive_cost("Toffoli").scaled(3)
        assert (c.t_count, c.depth, c.t_depth) == (12, 33, 3)

    def test_invariants(self):
        with pytest.raises(ValueError):
            GateCost(t_count=-1)
        with pytest.raises(ValueError):
            GateCost(depth=2, t_depth=5)
        with pytest.raises(ValueError):
            GateCost(ancillas=3, qubits_peak=1)

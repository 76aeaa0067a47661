import numpy as np
import pytest

from qlre.freefermion import (
    CovarianceMatrix,
    evolve_covariance,
    pfaffian,
    quadratic_form,
    vacuum_covariance,
    zz_correlator,
)
from qlre.operators import OperatorSum, PauliTerm


def dense_zz(n, i, j, t, couplings=None, fields=None):
    """Independent statevector oracle."""
    j_list = couplings if couplings is not None else [-1.0] * (n - 1)
    h_list = fields if fields is not None else [-1.0] * n
    terms = [PauliTerm.from_map(j_list[k], {k: "Z", k + 1: "Z"}) for k in range(n - 1)]
    terms += [PauliTerm.from_map(h_list[k], {k: "X"}) for k in range(n)]
    h = OperatorSum(n, terms).to_dense()
    w, v = np.linalg.eigh(h)
    plus = np.full(2**n, 2 ** (-n / 2), dtype=complex)
    psi = v @ (np.exp(-1j * w * t) * (v.conj().T @ plus))
    zz = OperatorSum(n, [PauliTerm.from_map(1.0, {i: "Z", j: "Z"})]).to_dense()
    return float(np.real(psi.conj() @ (zz @ psi)))


class TestPfaffian:
    def test_squares_to_determinant(self):
        rng = np.random.default_rng(1)
        for _ in range(60):
            k = int(rng.integers(1, 8))
            a = rng.normal(size=(2 * k, 2 * k))
            a = a - a.T
            pf = pfaffian(a)
            assert pf * pf == pytest.approx(np.linalg.det(a), rel=1e-9, abs=1e-10)

    def test_canonical_block(self):
        a = np.array([[0.0, 3.0], [-3.0, 0.0]])
        assert pfaffian(a) == pytest.approx(3.0)

    def test_odd_dimension_zero(self):
        assert pfaffian(np.zeros((3, 3))) == 0.0

    def test_rejects_non_antisymmetric(self):
        with pytest.raises(ValueError):
            pfaffian(np.eye(4))


class TestCovariance:
    def test_vacuum_structure(self):
        m = vacuum_covariance(3)
        assert m.data.shape == (6, 6)
        assert m.data[0, 1] == -1.0

    def test_evolution_stays_antisymmetric(self):
        a = quadratic_form(4, [-1.0] * 3, [-1.0] * 4)
        m = evolve_covariance(vacuum_covariance(4), a, 1.7)
        assert np.abs(m.data + m.data.T).max() < 1e-12

    def test_radius_guard(self):
        with pytest.raises(ValueError):
            CovarianceMatrix(np.array([[0.0, 2.0], [-2.0, 0.0]]))


class TestCorrelator:
    def test_t_zero_vanishes(self):
        for n in (2, 5, 8):
            for i in range(n):
                for j in range(i + 1, n):
                    assert zz_correlator(n, i, j, 0.0) == 0.0

    def test_matches_dense_grid(self):
        worst = 0.0
        for n in (2, 4, 6):
            for t in (0.1, 1.0, 5.0):
                for i in range(n):
                    for j in range(i + 1, n):
                        worst = max(
                            worst, abs(zz_correlator(n, i, j, t) - dense_zz(n, i, j, t))
                        )
        assert worst < 1e-8

    def test_matches_dense_n10_spots(self):
        for i, j, t in [(0, 9, 1.0), (2, 7, 5.0), (4, 5, 0.5), (1, 3, 2.0)]:
            assert zz_correlator(10, i, j, t) == pytest.approx(
                dense_zz(10, i, j, t), abs=1e-8
            )

    def test_two_spin_closed_form(self):
        # H = J Z1 Z2 + h (X1 + X2), J = h = -1: diagonalize the 4x4 directly
        j = h = -1.0
        t = 0.9
        hmat = np.array(
            [
                [j, h, h, 0],
                [h, -j, 0, h],
                [h, 0, -j, h],
                [0, h, h, j],
            ],
            dtype=complex,
        )
        w, v = np.linalg.eigh(hmat)
        plus = np.full(4, 0.5, dtype=complex)
        psi = v @ (np.exp(-1j * w * t) * (v.conj().T @ plus))
        zz = np.diag([1.0, -1.0, -1.0, 1.0])
        want = float(np.real(psi.conj() @ (zz @ psi)))
        assert zz_correlator(2, 0, 1, t) == pytest.approx(want, abs=1e-10)

    def test_site_range_guard(self):
        with pytest.raises(ValueError):
            zz_correlator(4, 0, 7, 1.0)

    def test_inhomogeneous_chain(self):
        rng = np.random.default_rng(5)
        n = 5
        js = list(rng.uniform(-1.5, 1.5, size=n - 1))
        hs = list(rng.uniform(-1.0, 1.0, size=n))
        for i, j, t in [(0, 4, 0.8), (1, 3, 2.0)]:
            assert zz_correlator(n, i, j, t, js, hs) == pytest.approx(
                dense_zz(n, i, j, t, js, hs), abs=1e-9
            )

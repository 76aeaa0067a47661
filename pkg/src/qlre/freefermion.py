"""Free-fermion ground truth for the planted transverse-field Ising benchmark.

Everything runs in the Hadamard-rotated frame, where the |+...+> initial
state becomes the fermionic vacuum and the chain Hamiltonian is quadratic in
Majorana operators.  Equal-site-pair correlators reduce to Pfaffians of
covariance submatrices; a Parlett-Reid elimination computes those.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg as sla


def pfaffian(a: np.ndarray) -> float:
    """Pfaffian of a real antisymmetric matrix by Parlett-Reid elimination
    with partial pivoting."""
    m = np.array(a, dtype=float, copy=True)
    n = m.shape[0]
    if m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if np.max(np.abs(m + m.T)) > 1e-10 * max(1.0, np.max(np.abs(m))):
        raise ValueError("matrix must be antisymmetric")
    if n % 2 == 1:
        return 0.0
    if n == 0:
        return 1.0
    pf = 1.0
    for k in range(0, n - 1, 2):
        # pivot: largest entry in column k below the diagonal
        pivot = k + 1 + int(np.argmax(np.abs(m[k + 1:, k])))
        if pivot != k + 1:
            m[[k + 1, pivot], :] = m[[pivot, k + 1], :]
            m[:, [k + 1, pivot]] = m[:, [pivot, k + 1]]
            pf = -pf
        if m[k + 1, k] == 0.0:
            return 0.0
        pf *= m[k, k + 1]
        if k + 2 < n:
            tau = m[k, k + 2:] / m[k, k + 1]
            w = m[k + 2:, k + 1]
            m[k + 2:, k + 2:] += np.outer(tau, w) - np.outer(w, tau)
    return pf


@dataclass
class CovarianceMatrix:
    """Majorana covariance M_ab = (i/2) <[g_a, g_b]> in the rotated frame."""

    data: np.ndarray
    frame: str = "hadamard-rotated"

    def __post_init__(self):
        if np.max(np.abs(self.data + self.data.T)) > 1e-12:
            raise ValueError("covariance must be antisymmetric")
        radius = float(np.max(np.abs(np.linalg.eigvals(self.data))))
        if radius > 1.0 + 1e-10:
            raise ValueError("covariance spectral radius exceeds 1")

    @property
    def n_sites(self) -> int:
        return self.data.shape[0] // 2


def vacuum_covariance(n: int) -> CovarianceMatrix:
    """Covariance of |0...0> in the rotated frame (pairs (2k, 2k+1))."""
    m = np.zeros((2 * n, 2 * n))
    for k in range(n):
        m[2 * k, 2 * k + 1] = -1.0
        m[2 * k + 1, 2 * k] = 1.0
    return CovarianceMatrix(m)


def quadratic_form(n: int, j: Sequence[float], h: Sequence[float]) -> np.ndarray:
    """Antisymmetric A with H_rotated = (i/4) g^T A g for
    sum_k j_k X_k X_{k+1} + sum_k h_k Z_k."""
    a = np.zeros((2 * n, 2 * n))
    for k in range(n):
        a[2 * k, 2 * k + 1] = -2.0 * h[k]
        a[2 * k + 1, 2 * k] = 2.0 * h[k]
    for k in range(n - 1):
        a[2 * k + 1, 2 * k + 2] = -2.0 * j[k]
        a[2 * k + 2, 2 * k + 1] = 2.0 * j[k]
    return a


def evolve_covariance(m: CovarianceMatrix, a: np.ndarray, t: float) -> CovarianceMatrix:
    """Heisenberg rotation g(t) = e^{A t} g on the covariance."""
    r = sla.expm(a * t)
    return CovarianceMatrix(r @ m.data @ r.T, m.frame)


def string_correlator(m: CovarianceMatrix, i: int, j: int) -> float:
    """<X_i X_j> in the rotated frame: (-1)^{j-i} Pf of the covariance block
    over Majorana indices 2i+1 .. 2j."""
    if i == j:
        return 1.0
    if i > j:
        i, j = j, i
    idx = list(range(2 * i + 1, 2 * j + 1))
    sub = m.data[np.ix_(idx, idx)]
    return float((-1.0) ** (j - i) * pfaffian(sub))


def zz_correlator(n: int, i: int, j: int, t: float,
                  couplings: Sequence[float] | None = None,
                  fields: Sequence[float] | None = None) -> float:
    """<Z_i Z_j (t)> for the open chain sum J_k Z_k Z_{k+1} + sum h_k X_k
    starting from |+...+>.

    In the rotated frame this is the <X_i X_j> string correlator of the
    quadratic chain evolved from the vacuum.
    """
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError("site index out of range")
    j_list = list(couplings) if couplings is not None else [-1.0] * (n - 1)
    h_list = list(fields) if fields is not None else [-1.0] * n
    if len(j_list) != n - 1 or len(h_list) != n:
        raise ValueError("coupling/field lengths must be n-1 and n")
    a = quadratic_form(n, j_list, h_list)
    m = evolve_covariance(vacuum_covariance(n), a, t)
    return string_correlator(m, i, j)

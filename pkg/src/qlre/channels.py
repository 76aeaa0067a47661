"""Weak-measurement channel and channel-distance machinery.

The single-ancilla step approximating e^{delta D[L]} (half-convention
dissipator) is realized through its exact Kraus set, built from the unitary
dilation of the jump operator.  Distances are measured as the worst
trace-norm output gap over random states, with the Choi-difference trace
norm as a stabilized proxy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg as sla

from .lindblad import (
    HALF,
    LindbladSpec,
    build_liouvillian,
    random_density_matrix,
    unvec,
    vec,
)
from .operators import OperatorSum


# ---------------------------------------------------------------------------
# channels
# ---------------------------------------------------------------------------

class QuantumChannel:
    """A channel stored as its column-stacking superoperator matrix."""

    def __init__(self, superop: np.ndarray, dim: int):
        if superop.shape != (dim * dim, dim * dim):
            raise ValueError("superoperator shape mismatch")
        self.superop = superop
        self.dim = dim

    @staticmethod
    def from_kraus(kraus: Sequence[np.ndarray]) -> "QuantumChannel":
        dim = kraus[0].shape[0]
        s = np.zeros((dim * dim, dim * dim), dtype=complex)
        for k in kraus:
            s += np.kron(k.conj(), k)
        ch = QuantumChannel(s, dim)
        ch.kraus = list(kraus)
        return ch

    @staticmethod
    def identity(dim: int) -> "QuantumChannel":
        return QuantumChannel(np.eye(dim * dim, dtype=complex), dim)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        return unvec(self.superop @ vec(rho), self.dim)

    def compose(self, other: "QuantumChannel") -> "QuantumChannel":
        """self after other."""
        return QuantumChannel(self.superop @ other.superop, self.dim)

    def choi(self) -> np.ndarray:
        """Choi state from the normalized maximally entangled input."""
        d = self.dim
        j = np.zeros((d * d, d * d), dtype=complex)
        for a in range(d):
            for b in range(d):
                e = np.zeros((d, d), dtype=complex)
                e[a, b] = 1.0
                j += np.kron(self.apply(e), e) / d
        return j


def kraus_completeness_defect(kraus: Sequence[np.ndarray]) -> float:
    dim = kraus[0].shape[0]
    acc = sum(k.conj().T @ k for k in kraus)
    return float(np.max(np.abs(acc - np.eye(dim))))


# ---------------------------------------------------------------------------
# unitary dilation of a contraction
# ---------------------------------------------------------------------------

@dataclass
class DilationBlocks:
    """Blocks of the 2d x 2d unitary [[L, R], [M, D]]."""

    L: np.ndarray
    R: np.ndarray
    M: np.ndarray
    D: np.ndarray

    def assemble(self) -> np.ndarray:
        return np.block([[self.L, self.R], [self.M, self.D]])

    def unitarity_defect(self) -> float:
        u = self.assemble()
        return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))

    def relation_defects(self) -> Tuple[float, float]:
        """Max-abs defects of L^dag L + M^dag M = 1 and R^dag L + D^dag M = 0."""
        d = self.L.shape[0]
        r1 = self.L.conj().T @ self.L + self.M.conj().T @ self.M - np.eye(d)
        r2 = self.R.conj().T @ self.L + self.D.conj().T @ self.M
        return float(np.max(np.abs(r1))), float(np.max(np.abs(r2)))


def _psd_sqrt(a: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def dilation(l: np.ndarray, norm_tol: float = 1e-10) -> DilationBlocks:
    """Complete a contraction into the unitary [[L, sqrt(1-LL+)], [sqrt(1-L+L), -L+]]."""
    spectral = float(np.linalg.norm(l, 2))
    if spectral > 1.0 + norm_tol:
        raise ValueError(f"spectral norm {spectral:.6f} exceeds 1")
    d = l.shape[0]
    eye = np.eye(d)
    r = _psd_sqrt(eye - l @ l.conj().T)
    m = _psd_sqrt(eye - l.conj().T @ l)
    return DilationBlocks(L=l.astype(complex), R=r, M=m, D=-l.conj().T)


# ---------------------------------------------------------------------------
# the weak-measurement channel
# ---------------------------------------------------------------------------

def weak_channel(l: np.ndarray, delta: float) -> QuantumChannel:
    """One weak-measurement step with jump operator l and angle parameter delta.

    Exact Kraus set K0 = 1 - (1 - sqrt(1-delta)) L^dag L, K1 = sqrt(delta) L,
    K2 = (1 - sqrt(1-delta)) R^dag L; completeness is algebraically exact.
    """
    if not 0.0 <= delta <= 1.0:
        raise ValueError("delta must lie in [0, 1]")
    blocks = dilation(l)
    d = l.shape[0]
    c = 1.0 - math.sqrt(1.0 - delta)
    k0 = np.eye(d) - c * (l.conj().T @ l)
    k1 = math.sqrt(delta) * l
    k2 = c * (blocks.R.conj().T @ l)
    return QuantumChannel.from_kraus([k0, k1, k2])


def weak_channel_closed_form(l: np.ndarray, delta: float, rho: np.ndarray) -> np.ndarray:
    """The derived closed form, used as an independent check on the Kraus set."""
    s = math.sqrt(1.0 - delta) - 1.0
    blocks = dilation(l)
    ldl = l.conj().T @ l
    rl = blocks.R.conj().T @ l
    return (
        rho
        + delta * (l @ rho @ l.conj().T)
        + s * (ldl @ rho + rho @ ldl)
        + s * s * (ldl @ rho @ ldl + rl @ rho @ rl.conj().T)
    )


def dissipator_channel(l: np.ndarray, delta: float) -> QuantumChannel:
    """Exact e^{delta (L . L^dag - (1/2){L^dag L, .})} for one jump operator."""
    d = l.shape[0]
    eye = np.eye(d)
    ldl = l.conj().T @ l
    gen = np.kron(l.conj(), l) - 0.5 * (np.kron(eye, ldl) + np.kron(ldl.T, eye))
    return QuantumChannel(sla.expm(delta * gen), d)


def unitary_step_channel(h: np.ndarray, delta: float) -> QuantumChannel:
    u = sla.expm(-1j * delta * h)
    return QuantumChannel(np.kron(u.conj(), u), h.shape[0])


# ---------------------------------------------------------------------------
# distances
# ---------------------------------------------------------------------------

def trace_norm(a: np.ndarray) -> float:
    return float(np.sum(np.linalg.svd(a, compute_uv=False)))


def channel_distance(a: QuantumChannel, b: QuantumChannel, n_states: int = 20,
                     seed: int = 0) -> float:
    """Max trace-norm output gap over random full-rank states."""
    if a.dim != b.dim:
        raise ValueError("channel dimensions differ")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_states):
        rho = random_density_matrix(a.dim, rng)
        worst = max(worst, trace_norm(a.apply(rho) - b.apply(rho)))
    return worst


def choi_distance(a: QuantumChannel, b: QuantumChannel) -> float:
    """Trace norm of the Choi difference; stabilized diamond-norm proxy."""
    return trace_norm(a.choi() - b.choi())


# ---------------------------------------------------------------------------
# product-formula verification
# ---------------------------------------------------------------------------

@dataclass
class TrotterCheck:
    lhs: float
    rhs: float
    passed: bool
    choi_lhs: float


def verify_trotter_bound(spec: LindbladSpec, delta: float,
                         grouping: Optional[List[List[int]]] = None,
                         n_states: int = 20, seed: int = 0) -> TrotterCheck:
    """Compare one exact half-convention step against the product of weak
    channels and per-term unitary steps, and check the printed bound.

    ``grouping`` partitions generator indices into commuting groups; the
    default is one group per generator.  The bound inputs take m as the group
    size and the triangle-inequality norm surrogate per term.
    """
    if spec.site_count > 4:
        raise ValueError("verification kernel capped at 4 qubits")
    work = spec.with_convention(HALF)
    dim = 2**work.site_count
    gens = work.dense_generators()
    if grouping is None:
        grouping = [[i] for i in range(len(gens))]
    # exact step
    exact = QuantumChannel(sla.expm(delta * build_liouvillian(work)), dim)
    # product: weak channels in group order, then per-term unitary steps
    prod = QuantumChannel.identity(dim)
    for group in grouping:
        for idx in group:
            prod = weak_channel(gens[idx], delta).compose(prod)
    h_terms = [
        OperatorSum(work.site_count, [t]) for t in work.hamiltonian.terms
    ]
    for term in h_terms:
        prod = unitary_step_channel(term.to_dense(), delta).compose(prod)
    lhs = channel_distance(exact, prod, n_states=n_states, seed=seed)
    choi_lhs = choi_distance(exact, prod)
    # bound inputs from the grouping
    from .evolution import trotter_error_bound

    norms = [abs(complex(a)) * op.norm_bound() for a, op in work.generators]
    sum_2ml = 0.0
    sum_sq_l = 0.0
    for group in grouping:
        m = len(group)
        strength = 2.0 * m * max(norms[i] for i in group)
        sum_2ml += strength
        sum_sq_l += strength**2
    h_norms = [abs(t.coefficient) for t in work.hamiltonian.terms]
    sum_2h = sum(2.0 * v for v in h_norms)
    sum_sq_h = sum((2.0 * v) ** 2 for v in h_norms)
    rhs_val = trotter_error_bound(sum_2ml, sum_2h, sum_sq_l, sum_sq_h, delta)
    return TrotterCheck(lhs=lhs, rhs=rhs_val, passed=lhs <= rhs_val,
                        choi_lhs=choi_lhs)

"""Exact dense open-system kernel: Liouvillian construction, evolution,
steady states, currents, and the generator builders for the two application
instances.

Vectorization is column-stacking throughout, so A rho B maps to (B^T kron A).
Two dissipator normalizations are in common use and both are supported:
``paper2`` uses 2 L rho L^dag - {L^dag L, rho}, ``half`` uses
L rho L^dag - (1/2){L^dag L, rho}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .fermion import annihilate, create, jordan_wigner
from .models import ChainModel, HubbardModel
from .operators import OperatorSum, PauliTerm

PAPER2 = "paper2"
HALF = "half"

LIOUVILLIAN_MAX_QUBITS = 7
DENSE_EIG_MAX_DIM = 1100  # superoperator dimension cap for full dense eig


class DegenerateSteadyStateError(RuntimeError):
    """Raised when the Liouvillian kernel has dimension above one."""

    def __init__(self, dimension: int):
        super().__init__(f"steady-state subspace has dimension {dimension}")
        self.dimension = dimension


@dataclass
class DensityMatrix:
    data: np.ndarray
    convention: str = PAPER2

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def validate(self, herm_tol: float = 1e-10, trace_tol: float = 1e-10,
                 psd_tol: float = 1e-9) -> "DensityMatrix":
        if np.max(np.abs(self.data - self.data.conj().T)) > herm_tol:
            raise ValueError("density matrix is not Hermitian at tolerance")
        if abs(np.trace(self.data) - 1.0) > trace_tol:
            raise ValueError("density matrix trace deviates from 1")
        if np.min(np.linalg.eigvalsh(0.5 * (self.data + self.data.conj().T))) < -psd_tol:
            raise ValueError("density matrix has a significantly negative eigenvalue")
        return self


def random_density_matrix(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


def basis_state(n: int, bits: int = 0) -> np.ndarray:
    dim = 2**n
    rho = np.zeros((dim, dim), dtype=complex)
    rho[bits, bits] = 1.0
    return rho


@dataclass
class LindbladSpec:
    hamiltonian: OperatorSum
    generators: List[Tuple[complex, OperatorSum]]
    convention: str = PAPER2

    def __post_init__(self):
        if self.convention not in (PAPER2, HALF):
            raise ValueError("convention must be 'paper2' or 'half'")
        for amp, op in self.generators:
            if not np.isfinite(complex(amp)):
                raise ValueError("generator amplitudes must be finite")
            if op.site_count != self.hamiltonian.site_count:
                raise ValueError("generator width mismatch")

    @property
    def site_count(self) -> int:
        return self.hamiltonian.site_count

    def dissipator_weight(self) -> float:
        """2 for the factor-2 convention, 1 for the half convention."""
        return 2.0 if self.convention == PAPER2 else 1.0

    def with_convention(self, convention: str) -> "LindbladSpec":
        return LindbladSpec(self.hamiltonian, list(self.generators), convention)

    def dense_generators(self) -> List[np.ndarray]:
        return [complex(a) * op.to_dense() for a, op in self.generators]

    def to_json_dict(self) -> dict:
        return {
            "n": self.site_count,
            "convention": self.convention,
            "hamiltonian": self.hamiltonian.to_json_dict(),
            "generators": [
                {"amplitude": [complex(a).real, complex(a).imag], "op": op.to_json_dict()}
                for a, op in self.generators
            ],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "LindbladSpec":
        gens = [
            (complex(g["amplitude"][0], g["amplitude"][1]), OperatorSum.from_json_dict(g["op"]))
            for g in d["generators"]
        ]
        return LindbladSpec(
            OperatorSum.from_json_dict(d["hamiltonian"]), gens, d.get("convention", PAPER2)
        )


# ---------------------------------------------------------------------------
# superoperator assembly
# ---------------------------------------------------------------------------

def vec(rho: np.ndarray) -> np.ndarray:
    return rho.reshape(-1, order="F")

def unvec(v: np.ndarray, dim: int) -> np.ndarray:
    return v.reshape((dim, dim), order="F")


def _check_width(spec: LindbladSpec, limit: int = LIOUVILLIAN_MAX_QUBITS):
    if spec.site_count > limit:
        raise ValueError(f"dense kernel capped at {limit} qubits, got {spec.site_count}")


def rhs(spec: LindbladSpec, rho: np.ndarray,
        h_dense: Optional[np.ndarray] = None,
        gens: Optional[List[np.ndarray]] = None) -> np.ndarray:
    """Direct evaluation of the master-equation right-hand side."""
    h = spec.hamiltonian.to_dense() if h_dense is None else h_dense
    ls = spec.dense_generators() if gens is None else gens
    w = spec.dissipator_weight()
    out = -1j * (h @ rho - rho @ h)
    for l in ls:
        ldl = l.conj().T @ l
        out += w * (l @ rho @ l.conj().T) - 0.5 * w * (ldl @ rho + rho @ ldl)
    return out


def build_liouvillian(spec: LindbladSpec) -> np.ndarray:
    """Dense 4^n x 4^n generator in column-stacking convention."""
    _check_width(spec)
    h = spec.hamiltonian.to_dense()
    dim = h.shape[0]
    eye = np.eye(dim)
    w = spec.dissipator_weight()
    out = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for l in spec.dense_generators():
        ldl = l.conj().T @ l
        out += w * np.kron(l.conj(), l)
        out -= 0.5 * w * (np.kron(eye, ldl) + np.kron(ldl.T, eye))
    return out


def build_liouvillian_sparse(spec: LindbladSpec) -> sp.csr_matrix:
    """Sparse assembly, one Kronecker product per Pauli-term pair."""
    _check_width(spec, limit=10)
    h = sp.csr_matrix(spec.hamiltonian.to_dense())
    dim = h.shape[0]
    eye = sp.identity(dim, format="csr", dtype=complex)
    w = spec.dissipator_weight()
    out = -1j * (sp.kron(eye, h, format="csr") - sp.kron(h.T, eye, format="csr"))
    for l_dense in spec.dense_generators():
        l = sp.csr_matrix(l_dense)
        ldl = (l.conj().T @ l).tocsr()
        out = out + w * sp.kron(l.conj(), l, format="csr")
        out = out - 0.5 * w * (
            sp.kron(eye, ldl, format="csr") + sp.kron(ldl.T, eye, format="csr")
        )
    return out.tocsr()


# ---------------------------------------------------------------------------
# evolution and steady states
# ---------------------------------------------------------------------------

def evolve(spec: LindbladSpec, rho0: np.ndarray, t: float) -> DensityMatrix:
    """exp(t L) rho0 via scaling-and-squaring (dense) or Krylov action (large)."""
    _check_width(spec)
    dim = rho0.shape[0]
    if t == 0:
        return DensityMatrix(rho0.copy(), spec.convention)
    sdim = dim * dim
    if sdim <= 4096:
        prop = sla.expm(build_liouvillian(spec) * t)
        out = unvec(prop @ vec(rho0), dim)
    else:
        lio = build_liouvillian_sparse(spec)
        out = unvec(spla.expm_multiply(lio * t, vec(rho0)), dim)
    out = 0.5 * (out + out.conj().T)
    return DensityMatrix(out, spec.convention)


def _superop_scale(lio) -> float:
    return float(np.abs(lio.diagonal()).max()) + 1e-30


SPARSE_SI_MAX_DIM = 8192  # shift-invert LU stays tractable up to here


def steady_state(spec: LindbladSpec, degeneracy_tol: float = 1e-9,
                 refine_steps: int = 3, march_tol: float = 1e-8,
                 march_rounds: int = 80) -> DensityMatrix:
    """Kernel of the Liouvillian, trace-normalized.

    Dense eigendecomposition below ``DENSE_EIG_MAX_DIM``; sparse shift-invert
    Arnoldi up to ``SPARSE_SI_MAX_DIM``; beyond that, Krylov time marching to
    the fixed point (LU fill-in makes shift-invert impractical there).  A
    degenerate kernel raises instead of silently picking a representative.
    """
    _check_width(spec, limit=10)
    dim = 2**spec.site_count
    sdim = dim * dim
    if sdim > SPARSE_SI_MAX_DIM:
        return _steady_state_marching(spec, tol=march_tol, max_rounds=march_rounds)
    if sdim <= DENSE_EIG_MAX_DIM:
        lio = build_liouvillian(spec)
        wv, vv = np.linalg.eig(lio)
        scale = _superop_scale(lio)
        order = np.argsort(np.abs(wv))
        near_zero = [i for i in order if abs(wv[i]) < degeneracy_tol * scale]
        if len(near_zero) > 1:
            raise DegenerateSteadyStateError(len(near_zero))
        idx = order[0]
        v = vv[:, idx]
        lio_op = lio
    else:
        lio = build_liouvillian_sparse(spec)
        scale = _superop_scale(lio)
        sigma = 1e-8 * scale
        k = min(6, sdim - 2)
        wv, vv = spla.eigs(lio.tocsc(), k=k, sigma=sigma, which="LM")
        order = np.argsort(np.abs(wv))
        near_zero = [i for i in order if abs(wv[i]) < degeneracy_tol * scale]
        if len(near_zero) > 1:
            raise DegenerateSteadyStateError(len(near_zero))
        v = vv[:, order[0]]
        lio_op = lio
        # a few rounds of inverse iteration sharpen the kernel vector
        if refine_steps:
            lu = spla.splu((lio - sigma * sp.identity(sdim, dtype=complex, format="csr")).tocsc())
            for _ in range(refine_steps):
                v = lu.solve(v)
                v = v / np.linalg.norm(v)
    rho = unvec(v, dim)
    rho = 0.5 * (rho + rho.conj().T)
    tr = np.trace(rho)
    if abs(tr) < 1e-12:
        raise RuntimeError("steady-state candidate is traceless; kernel extraction failed")
    rho = rho / tr
    # polish the dense path too when the residual allows it
    res = residual_norm(spec, rho, lio_op)
    if res > 1e-11 and sdim <= DENSE_EIG_MAX_DIM:
        lu = sla.lu_factor(lio + 1e-10 * scale * np.eye(sdim))
        v = vec(rho)
        for _ in range(refine_steps):
            v = sla.lu_solve(lu, v)
            v = v / np.linalg.norm(v)
        rho = unvec(v, dim)
        rho = 0.5 * (rho + rho.conj().T)
        rho = rho / np.trace(rho)
    return DensityMatrix(rho, spec.convention)


def _steady_state_marching(spec: LindbladSpec, tol: float = 1e-8,
                           max_rounds: int = 80) -> DensityMatrix:
    """March e^{tau L} to the fixed point, doubling tau while decay stalls."""
    dim = 2**spec.site_count
    lio = build_liouvillian_sparse(spec)
    rho = np.eye(dim, dtype=complex) / dim
    v = vec(rho)
    tau = 1.0
    res_prev = np.inf
    for _ in range(max_rounds):
        res = float(np.linalg.norm(lio @ v))
        if res <= tol:
            break
        if res > 0.5 * res_prev and tau < 64.0:
            tau *= 2.0
        res_prev = res
        v = spla.expm_multiply(lio * tau, v)
        rho = unvec(v, dim)
        rho = 0.5 * (rho + rho.conj().T)
        rho = rho / np.trace(rho)
        v = vec(rho)
    else:
        raise RuntimeError(
            f"steady-state marching stalled at residual {res:.3e} (target {tol:.1e})"
        )
    rho = unvec(v, dim)
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho)
    return DensityMatrix(rho, spec.convention)


def residual_norm(spec: LindbladSpec, rho: np.ndarray, lio=None) -> float:
    """Frobenius norm of L(rho)."""
    if lio is None:
        return float(np.linalg.norm(rhs(spec, rho)))
    return float(np.linalg.norm(lio @ vec(rho)))


def liouvillian_eigenvalues(spec: LindbladSpec) -> np.ndarray:
    """Full dense spectrum; width-guarded by the dense eigensolver cost."""
    _check_width(spec)
    return np.linalg.eigvals(build_liouvillian(spec))


def spectral_gap(spec: LindbladSpec, zero_tol: float = 1e-8,
                 k_arnoldi: int = 16) -> float:
    """-max Re of the nonzero spectrum.

    Full dense spectrum up to superoperator dimension ``DENSE_EIG_MAX_DIM``;
    above that, shift-invert Arnoldi around zero captures the slow modes (the
    rightmost nonzero eigenvalue is always among the smallest in modulus when
    it is real, and the result is cross-checked against dense at small sizes
    in the test suite).
    """
    dim = 2**spec.site_count
    sdim = dim * dim
    if sdim <= DENSE_EIG_MAX_DIM:
        w = liouvillian_eigenvalues(spec)
        scale = max(np.abs(w).max(), 1e-30)
    else:
        lio = build_liouvillian_sparse(spec).tocsc()
        scale = _superop_scale(lio)
        sigma = 1e-8 * scale
        k = min(k_arnoldi, sdim - 2)
        w, _ = spla.eigs(lio, k=k, sigma=sigma, which="LM")
    nonzero = w[np.abs(w) > zero_tol * scale]
    if nonzero.size == 0:
        raise RuntimeError("no nonzero eigenvalues found near the origin")
    return float(-np.max(nonzero.real))


# ---------------------------------------------------------------------------
# currents
# ---------------------------------------------------------------------------

@dataclass
class CurrentProfile:
    spin: List[float]
    energy: List[float]

    @property
    def spin_average(self) -> float:
        return float(np.sum(self.spin) / (len(self.spin) - 1)) if len(self.spin) > 1 else 0.0

    @property
    def energy_average(self) -> float:
        return float(np.mean(self.energy)) if self.energy else 0.0

    def csv_rows(self) -> List[Tuple[str, int, float]]:
        rows = [("spin", m, v) for m, v in enumerate(self.spin)]
        rows += [("energy", m, v) for m, v in enumerate(self.energy)]
        return rows


def _expectation(op: OperatorSum, rho: np.ndarray) -> float:
    val = complex(np.trace(op.to_dense() @ rho))
    if abs(val.imag) > 1e-8 * max(1.0, abs(val.real)):
        raise RuntimeError(f"current expectation unexpectedly complex: {val}")
    return float(val.real)


def measure_currents(chain: ChainModel, rho: np.ndarray) -> CurrentProfile:
    """Bond energy currents i[H_m, H_{m+1}] and site spin currents
    i[Z_m, H_m + H_{m-1}] evaluated in ``rho``."""
    from .operators import commutator

    local = chain.local_terms()
    n = chain.n
    energy = []
    for m in range(len(local) - 1):
        q_op = commutator(local[m], local[m + 1]) * 1j
        energy.append(_expectation(q_op, rho))
    spin = []
    for m in range(n):
        h_here = OperatorSum.zero(n)
        if m - 1 >= 0 and m - 1 < len(local):
            h_here = h_here + local[m - 1]
        if m < len(local):
            h_here = h_here + local[m]
        s_op = commutator(OperatorSum.single(n, m, "Z"), h_here) * 1j
        spin.append(_expectation(s_op, rho))
    return CurrentProfile(spin=spin, energy=energy)


# ---------------------------------------------------------------------------
# application-instance generators
# ---------------------------------------------------------------------------

def sigma_minus(n: int, site: int) -> OperatorSum:
    """|0><1| at the site (decay toward |0>, the sz = +1 state)."""
    return OperatorSum(n, [
        PauliTerm.from_map(0.5, {site: "X"}),
        PauliTerm.from_map(0.5j, {site: "Y"}),
    ])


def sigma_plus(n: int, site: int) -> OperatorSum:
    """|1><0| at the site."""
    return OperatorSum(n, [
        PauliTerm.from_map(0.5, {site: "X"}),
        PauliTerm.from_map(-0.5j, {site: "Y"}),
    ])


def flip_into(n: int, site: int, sz_value: int) -> OperatorSum:
    """Jump operator moving the site into the requested sigma-z eigenstate."""
    return sigma_minus(n, site) if sz_value > 0 else sigma_plus(n, site)


@dataclass
class CaPatch:
    """Desk-scale patch of the layered lattice: explicit sites and bonds."""

    n_sites: int
    bonds: List[Tuple[int, int, float]]
    h: float = 0.0

    def neighbors(self, i: int) -> List[Tuple[int, float]]:
        out = []
        for a, b, j in self.bonds:
            if a == i:
                out.append((b, j))
            elif b == i:
                out.append((a, j))
        return out

    def hamiltonian_z(self) -> OperatorSum:
        terms = [PauliTerm.from_map(j, {a: "Z", b: "Z"}) for a, b, j in self.bonds]
        if self.h:
            terms += [PauliTerm.from_map(-self.h, {i: "Z"}) for i in range(self.n_sites)]
        return OperatorSum(self.n_sites, terms)

    def hamiltonian(self, h_transverse: float = 0.0) -> OperatorSum:
        out = self.hamiltonian_z()
        if h_transverse:
            out = out + OperatorSum(
                self.n_sites,
                [PauliTerm.from_map(h_transverse, {i: "X"}) for i in range(self.n_sites)],
            )
        return out


def ca_chain_patch(n: int, j1: float = -1.0, h: float = 0.0) -> CaPatch:
    return CaPatch(n_sites=n, bonds=[(i, i + 1, j1) for i in range(n - 1)], h=h)


def ca_rate_class_count(j1_neighbors: int = 2, j23_neighbors: int = 12) -> int:
    """Distinct flip-rate classes per spin: one per value of each bond-type
    neighbour total, (m+1) values for m spins of a type."""
    return (j1_neighbors + 1) * (j23_neighbors + 1)


RATE_MODE = "rate"          # amplitude = r, literal reading
SQRT_RATE_MODE = "sqrt-rate"  # amplitude = sqrt(r), detailed balance


def ca_lindblad_generators(patch: CaPatch, beta: float,
                           mode: str = SQRT_RATE_MODE) -> List[Tuple[complex, OperatorSum]]:
    """Projector-conditioned flip generators with thermal flip rates.

    For each site and flip direction, neighbour configurations with the same
    rate are joined into a single generator r * P_r * sigma^{+-}; the
    simulation mode uses sqrt(r) amplitudes so the diagonal restriction is a
    detailed-balance chain.
    """
    if mode not in (RATE_MODE, SQRT_RATE_MODE):
        raise ValueError("mode must be 'rate' or 'sqrt-rate'")
    if patch.n_sites > 7:
        raise ValueError("patch generators are dense-checkable up to 7 spins")
    n = patch.n_sites
    out: List[Tuple[complex, OperatorSum]] = []
    for i in range(n):
        nbrs = patch.neighbors(i)
        for sign in (+1, -1):
            groups: Dict[float, List[Tuple[int, ...]]] = {}
            for cfg in range(2 ** len(nbrs)):
                svals = tuple(1 if (cfg >> k) & 1 else -1 for k in range(len(nbrs)))
                delta_e = 2.0 * (sum(j * s for (_, j), s in zip(nbrs, svals)) - patch.h)
                if sign < 0:
                    delta_e = -delta_e
                rate = math.exp(-beta * delta_e) if delta_e > 0 else 1.0
                groups.setdefault(round(rate, 12), []).append(svals)
            for rate, cfgs in sorted(groups.items()):
                if rate == 0.0:
                    continue
                proj = OperatorSum.zero(n)
                for svals in cfgs:
                    p = OperatorSum.identity(n)
                    for (jsite, _), s in zip(nbrs, svals):
                        pj = (OperatorSum.identity(n) + OperatorSum.single(n, jsite, "Z") * float(s)) * 0.5
                        p = p @ pj
                    proj = proj + p
                amp = rate if mode == RATE_MODE else math.sqrt(rate)
                out.append((amp, proj @ flip_into(n, i, sign)))
    return out


def hubbard_landauer_generators(model: HubbardModel) -> List[Tuple[complex, OperatorSum]]:
    """Particle sink on every left-edge mode, source on every right-edge mode."""
    n = model.n_modes
    gens: List[Tuple[complex, OperatorSum]] = []
    for spin in (0, 1):
        for y in range(model.ly):
            left = model.mode(0, y, spin)
            right = model.mode(model.lx - 1, y, spin)
            gens.append((1.0, jordan_wigner(annihilate(left), n)))
            gens.append((1.0, jordan_wigner(create(right), n)))
    return gens


def site_occupations(model: HubbardModel, rho: np.ndarray) -> np.ndarray:
    """Total (both-spin) occupation per site column-averaged over y."""
    n = model.n_modes
    occ = np.zeros((model.lx,))
    for x in range(model.lx):
        tot = 0.0
        for y in range(model.ly):
            for spin in (0, 1):
                m = model.mode(x, y, spin)
                num = jordan_wigner([create(m), annihilate(m)], n)
                tot += float(np.real(np.trace(num.to_dense() @ rho)))
        occ[x] = tot / model.ly
    return occ

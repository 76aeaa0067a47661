"""Application-instance models: the layered-triangular cobaltite lattice, the
square-lattice Hubbard transport instance, and small chain builders shared by
the benchmark suites.

Full-size instances stay symbolic (norm bounds, generator counts, schedules);
dense realizations are only built for desk-scale patches.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from . import blocks
from .fermion import annihilate, create, jordan_wigner
from .gates import GateCost
from .operators import OperatorSum, PauliTerm


# ---------------------------------------------------------------------------
# transverse-field Ising chains (shared by the planted benchmarks)
# ---------------------------------------------------------------------------

def tfim_chain(n: int, j: float = -1.0, h: float = -1.0) -> OperatorSum:
    """Open chain sum_i j Z_i Z_{i+1} + sum_i h X_i."""
    terms = [PauliTerm.from_map(j, {i: "Z", i + 1: "Z"}) for i in range(n - 1)]
    terms += [PauliTerm.from_map(h, {i: "X"}) for i in range(n)]
    return OperatorSum(n, terms)


@dataclass
class ChainModel:
    """Chain Hamiltonian with an explicit local-term decomposition H = sum_m H_m.

    Bond term m carries the ZZ coupling plus half of each adjacent field term
    (boundary sites contribute their full field to the edge bonds), so the
    local terms sum exactly to the Hamiltonian.
    """

    n: int
    j: float
    h: float

    @property
    def hamiltonian(self) -> OperatorSum:
        return tfim_chain(self.n, self.j, self.h)

    def local_terms(self) -> List[OperatorSum]:
        n = self.n
        out = []
        for m in range(n - 1):
            terms = [PauliTerm.from_map(self.j, {m: "Z", m + 1: "Z"})]
            wl = 1.0 if m == 0 else 0.5
            wr = 1.0 if m == n - 2 else 0.5
            terms.append(PauliTerm.from_map(self.h * wl, {m: "X"}))
            terms.append(PauliTerm.from_map(self.h * wr, {m + 1: "X"}))
            out.append(OperatorSum(n, terms))
        return out


# ---------------------------------------------------------------------------
# layered triangular lattice (Ca3Co2O6-type)
# ---------------------------------------------------------------------------

# in-plane displacements of the six neighbours in each adjacent layer
_TRIANGULAR_OFFSETS = ((0, 0) , (1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1))


@dataclass
class CaSchedule:
    """Stepped control schedule; the inverse-temperature values are read off a
    figure and therefore overridable, not authoritative."""

    h_values: Tuple[float, ...] = tuple(1.4 * (k + 1) / 10 for k in range(10))
    h_transverse: float = 1.0 / 300.0
    beta_values: Tuple[float, ...] = tuple(float(k + 1) for k in range(10))
    step_time: float = 1.0e11
    step_eps: float = 0.01

    @property
    def n_steps(self) -> int:
        return len(self.h_values)


@dataclass
class CaModel:
    """2025-spin layered triangular-lattice Ising model with weak transverse
    field and projector-conditioned flip generators."""

    dims: Tuple[int, int, int] = (9, 9, 25)
    j1: float = -1.0
    j2: float = 0.1
    j3: float = 0.1
    h_transverse: float = 1.0 / 300.0
    generator_types_per_spin: int = blocks.CA_GENERATOR_TYPES
    tile_size: int = 18
    schedule: CaSchedule = field(default_factory=CaSchedule)

    name = "ca3co2o6"

    @property
    def n_spins(self) -> int:
        lx, ly, lz = self.dims
        return lx * ly * lz

    @property
    def qubits(self) -> int:
        # system plus the swap-control ancillae
        return 2 * self.n_spins

    # -- geometry -----------------------------------------------------
    def site_index(self, x: int, y: int, layer: int) -> int:
        lx, ly, _ = self.dims
        return (layer * ly + (y % ly)) * lx + (x % lx)

    def bonds(self) -> List[Tuple[int, int, float]]:
        """Periodic bond list (i, j, coupling); chain bonds carry j1, the 12
        inter-layer triangular neighbours carry j2 = j3."""
        lx, ly, lz = self.dims
        out = []
        for layer in range(lz):
            up = (layer + 1) % lz
            for y in range(ly):
                for x in range(lx):
                    i = self.site_index(x, y, layer)
                    out.append((i, self.site_index(x, y, up), self.j1))
                    for dx, dy in _TRIANGULAR_OFFSETS[1:]:
                        out.append((i, self.site_index(x + dx, y + dy, up), self.j2))
        return out

    def hamiltonian_z(self, h: float = 0.0) -> OperatorSum:
        n = self.n_spins
        terms = [PauliTerm.from_map(c, {i: "Z", j: "Z"}) for i, j, c in self.bonds()]
        if h:
            terms += [PauliTerm.from_map(-h, {i: "Z"}) for i in range(n)]
        return OperatorSum(n, terms)

    # -- norm data -----------------------------------------------------
    def per_spin_coefficient(self) -> float:
        """Unshared per-spin coupling budget: two j1 bonds plus twelve j2 bonds."""
        return 2 * abs(self.j1) + 12 * abs(self.j2)

    def hamiltonian_norm_bound(self, convention: str = "per-spin", h: float = 0.0) -> float:
        if convention == "per-spin":
            return self.per_spin_coefficient() * self.n_spins
        if convention == "bond-shared":
            return (abs(self.j1) + 6 * abs(self.j2)) * self.n_spins + abs(h) * self.n_spins
        raise ValueError("convention must be 'per-spin' or 'bond-shared'")

    @property
    def generator_count(self) -> int:
        return self.generator_types_per_spin * self.n_spins

    def generator_norms(self) -> List[float]:
        # flip rates never exceed 1, so every projector-conditioned generator
        # has unit norm bound
        return [1.0] * self.generator_count

    def alpha(self) -> float:
        return blocks.rescaling_alpha(self.hamiltonian_norm_bound(), self.generator_norms())

    # -- compiled costs --------------------------------------------------
    def cu_cost(self) -> GateCost:
        return blocks.ca_full_cu()["cost"]

    def cv_cost(self) -> GateCost:
        return blocks.hamiltonian_encoding_cost("ca")["cv"]

    def per_call_cost(self) -> GateCost:
        cu = self.cu_cost()
        return cu  # the Hamiltonian encoding is negligible for this instance

    # -- product-formula bookkeeping --------------------------------------
    def commuting_group_count(self) -> int:
        return self.generator_types_per_spin * self.tile_size

    def group_size(self) -> float:
        return self.n_spins / self.tile_size

    def trotter_norm_sums(self) -> Dict[str, float]:
        """The four sums feeding the product-formula error bound at zero
        longitudinal field."""
        m = self.group_size()
        groups = self.commuting_group_count()
        per_group = 2.0 * m * 1.0
        hz = self.hamiltonian_norm_bound("bond-shared")
        hx = self.h_transverse * self.n_spins
        return {
            "sum_2mL": groups * per_group,
            "sum_2H": 2.0 * hz + 2.0 * hx,
            "sum_sq_L": groups * per_group**2,
            "sum_sq_H": (2.0 * hz) ** 2 + (2.0 * hx) ** 2,
        }

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "dims": list(self.dims),
            "n_spins": self.n_spins,
            "qubits": self.qubits,
            "alpha": self.alpha(),
            "generator_count": self.generator_count,
            "schedule": {
                "h_values": list(self.schedule.h_values),
                "h_transverse": self.schedule.h_transverse,
                "beta_values": list(self.schedule.beta_values),
                "step_time": self.schedule.step_time,
                "step_eps": self.schedule.step_eps,
            },
        }


# ---------------------------------------------------------------------------
# Hubbard transport instance
# ---------------------------------------------------------------------------

@dataclass
class HubbardModel:
    """Square-lattice Fermi-Hubbard model with boundary particle sources and
    sinks (Landauer setup).  Spin-up modes occupy the first block of the
    Jordan-Wigner ordering, spin-down the second; sites are row-major."""

    lx: int = 10
    ly: int = 10
    t_hop: float = 1.0
    t_prime: float = -0.15
    u: float = 20.0 / 3.0

    name = "hubbard-10x10"

    @property
    def n_sites(self) -> int:
        return self.lx * self.ly

    @property
    def n_modes(self) -> int:
        return 2 * self.n_sites

    @property
    def qubits(self) -> int:
        # system modes plus the ancillae conditioning swaps and parity flips
        return 3 * self.n_modes

    def site(self, x: int, y: int) -> int:
        return y * self.lx + x

    def mode(self, x: int, y: int, spin: int) -> int:
        return spin * self.n_sites + self.site(x, y)

    def hopping_bonds(self) -> List[Tuple[int, int, float]]:
        out = []
        for y in range(self.ly):
            for x in range(self.lx):
                if x + 1 < self.lx:
                    out.append((self.site(x, y), self.site(x + 1, y), self.t_hop))
                if y + 1 < self.ly:
                    out.append((self.site(x, y), self.site(x, y + 1), self.t_hop))
                if x + 1 < self.lx and y + 1 < self.ly:
                    out.append((self.site(x, y), self.site(x + 1, y + 1), self.t_prime))
                if x - 1 >= 0 and y + 1 < self.ly:
                    out.append((self.site(x, y), self.site(x - 1, y + 1), self.t_prime))
        return out

    def hamiltonian(self) -> OperatorSum:
        """Jordan-Wigner qubit Hamiltonian; intended for dense work on small
        lattices, symbolic elsewhere."""
        n = self.n_modes
        h = OperatorSum.zero(n)
        for i, j, amp in self.hopping_bonds():
            for spin in (0, 1):
                mi, mj = spin * self.n_sites + i, spin * self.n_sites + j
                hop = jordan_wigner([create(mi), annihilate(mj)], n)
                h = h + (hop + hop.dagger()) * (-amp)
        for s in range(self.n_sites):
            n_up = jordan_wigner([create(s), annihilate(s)], n)
            n_dn = jordan_wigner([create(self.n_sites + s), annihilate(self.n_sites + s)], n)
            h = h + (n_up @ n_dn) * self.u
        return h

    # -- norm data -----------------------------------------------------
    def per_site_coefficient(self) -> float:
        return self.u + 4 * self.t_hop + 4 * abs(self.t_prime)

    def hamiltonian_norm_bound(self) -> float:
        return self.per_site_coefficient() * self.n_sites

    @property
    def generator_count(self) -> int:
        return 4 * self.ly  # both spins on both driven edges

    def generator_norms(self) -> List[float]:
        return [1.0] * self.generator_count

    def alpha(self) -> float:
        return blocks.rescaling_alpha(self.hamiltonian_norm_bound(), self.generator_norms())

    @property
    def t_min(self) -> float:
        """Equilibration-time floor: inverse Kubo broadening scaled by the
        linear system-size ratio to the classically solved reference."""
        return (1.0 / (0.07 * self.t_hop)) * (self.lx / 4.0)

    # -- compiled costs --------------------------------------------------
    def cu_cost(self, variant: str = "translation") -> GateCost:
        return blocks.hubbard_generator_cost(variant)["cost"]

    def cv_cost(self) -> GateCost:
        return blocks.hamiltonian_encoding_cost("hubbard")["cv"]

    def per_call_cost(self) -> GateCost:
        cu = self.cu_cost()
        cv = self.cv_cost()
        return GateCost(
            t_count=cu.t_count + cv.t_count,
            depth=cu.depth + cv.depth,
            ancillas=max(cu.ancillas, cv.ancillas),
            qubits_peak=max(cu.qubits_peak, cv.qubits_peak),
        )

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "lx": self.lx,
            "ly": self.ly,
            "t_hop": self.t_hop,
            "t_prime": self.t_prime,
            "u": self.u,
            "qubits": self.qubits,
            "alpha": self.alpha(),
            "generator_count": self.generator_count,
            "t_min": self.t_min,
        }


# ---------------------------------------------------------------------------
# custom models and the registry
# ---------------------------------------------------------------------------

@dataclass
class CustomModel:
    """Cost-level model loaded from JSON: enough for estimate reports."""

    name: str
    alpha_value: float
    qubits: int
    cu: GateCost
    cv_t_count: float = 0.0
    cv_depth: float = 0.0

    def alpha(self) -> float:
        return self.alpha_value

    def cu_cost(self) -> GateCost:
        return self.cu

    def per_call_cost(self) -> GateCost:
        return GateCost(
            t_count=self.cu.t_count + self.cv_t_count,
            depth=self.cu.depth + self.cv_depth,
            ancillas=self.cu.ancillas,
            qubits_peak=self.cu.qubits_peak,
        )

    @staticmethod
    def from_json_dict(d: dict) -> "CustomModel":
        cu = d.get("cu", {})
        return CustomModel(
            name=d.get("name", "custom"),
            alpha_value=float(d["alpha"]),
            qubits=int(d["qubits"]),
            cu=GateCost(
                t_count=float(cu.get("t_count", 0)),
                depth=float(cu.get("depth", 1)),
                ancillas=float(cu.get("ancillas", 0)),
                qubits_peak=float(cu.get("qubits_peak", 0)),
            ),
            cv_t_count=float(d.get("cv_t_count", 0.0)),
            cv_depth=float(d.get("cv_depth", 0.0)),
        )

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "alpha": self.alpha_value,
            "qubits": self.qubits,
            "cu": self.cu.to_json_dict(),
            "cv_t_count": self.cv_t_count,
            "cv_depth": self.cv_depth,
        }


def builtin_model(name: str):
    if name == "ca3co2o6":
        return CaModel()
    if name in ("hubbard-10x10", "hubbard"):
        return HubbardModel()
    raise KeyError(name)


BUILTIN_MODEL_NAMES = ("ca3co2o6", "hubbard-10x10")

"""Planted-solution benchmark instances.

Two families: the boundary-driven open chain with known gap and current
behaviour, and the obfuscated integrable chain whose sealed answers come from
the free-fermion oracle.  Obfuscated instances ship a preparation circuit
instead of conjugated stabilizers, because conjugating a stabilizer by a
T gate leaves the Pauli group; ground truth rests on unitary invariance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .clifford import (
    CliffordTableau,
    conjugate_by_clifford,
    conjugate_by_T,
    hadamard_layer,
    random_clifford,
)
from .freefermion import zz_correlator
from .lindblad import (
    PAPER2,
    LindbladSpec,
    sigma_minus,
    sigma_plus,
    spectral_gap,
)
from .models import ChainModel, tfim_chain
from .operators import OperatorSum, PauliTerm, multiply


# ---------------------------------------------------------------------------
# boundary-driven chain
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProsenParams:
    n: int
    j: float = 1.5
    h: float = 1.0
    gamma_left_minus: float = 1.0
    gamma_left_plus: float = 0.6
    gamma_right_minus: float = 1.0
    gamma_right_plus: float = 0.3

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("chain length n >= 3")
        for g in (self.gamma_left_minus, self.gamma_left_plus,
                  self.gamma_right_minus, self.gamma_right_plus):
            if g <= 0:
                raise ValueError("rates must be positive")


def prosen_instance(params: ProsenParams | int,
                    convention: str = PAPER2) -> LindbladSpec:
    """Driven chain spec: ZZ+X Hamiltonian, four boundary generators with
    (1/2) sqrt(Gamma) amplitudes, all-|0> intended initial state."""
    p = ProsenParams(params) if isinstance(params, int) else params
    n = p.n
    gens = [
        (0.5 * math.sqrt(p.gamma_left_minus), sigma_minus(n, 0)),
        (0.5 * math.sqrt(p.gamma_left_plus), sigma_plus(n, 0)),
        (0.5 * math.sqrt(p.gamma_right_minus), sigma_minus(n, n - 1)),
        (0.5 * math.sqrt(p.gamma_right_plus), sigma_plus(n, n - 1)),
    ]
    return LindbladSpec(tfim_chain(n, p.j, p.h), gens, convention)


def prosen_chain_model(params: ProsenParams | int) -> ChainModel:
    p = ProsenParams(params) if isinstance(params, int) else params
    return ChainModel(p.n, p.j, p.h)


def liouvillian_gap(n: int, convention: str = PAPER2) -> float:
    if n > 7:
        raise ValueError("gap extraction capped at 7 spins")
    return spectral_gap(prosen_instance(n, convention))


def gap_law_fit(n_range: Sequence[int], convention: str = PAPER2,
                gaps: Optional[Dict[int, float]] = None) -> float:
    """Least-squares coefficient c in gap = c * n^-3 over the given sizes."""
    if gaps is None:
        gaps = {n: liouvillian_gap(n, convention) for n in n_range}
    ns = np.array(sorted(gaps), dtype=float)
    gs = np.array([gaps[int(n)] for n in ns])
    weights = ns**-3.0
    return float(np.sum(gs * weights) / np.sum(weights**2))


# ---------------------------------------------------------------------------
# planted integrable instance and its obfuscation
# ---------------------------------------------------------------------------

@dataclass
class TfimInstance:
    n: int
    time: float
    couplings: Tuple[float, ...] = ()
    fields: Tuple[float, ...] = ()
    observables: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        if not self.couplings:
            self.couplings = tuple([-1.0] * (self.n - 1))
        if not self.fields:
            self.fields = tuple([-1.0] * self.n)
        if not self.observables:
            self.observables = tuple(
                (i, j) for i in range(self.n) for j in range(i + 1, self.n)
            )

    @property
    def hamiltonian(self) -> OperatorSum:
        terms = [
            PauliTerm.from_map(self.couplings[i], {i: "Z", i + 1: "Z"})
            for i in range(self.n - 1)
        ]
        terms += [PauliTerm.from_map(self.fields[i], {i: "X"}) for i in range(self.n)]
        return OperatorSum(self.n, terms)

    def stabilizers(self) -> List[OperatorSum]:
        return [OperatorSum.single(self.n, i, "X") for i in range(self.n)]

    def observable_ops(self) -> List[OperatorSum]:
        return [
            OperatorSum(self.n, [PauliTerm.from_map(1.0, {i: "Z", j: "Z"})])
            for i, j in self.observables
        ]

    def exact_answers(self) -> List[float]:
        return [
            zz_correlator(self.n, i, j, self.time, self.couplings, self.fields)
            for i, j in self.observables
        ]


PrepStep = Tuple[str, object]  # ("clifford", tableau) | ("t", qubit)


@dataclass
class ObfuscatedInstance:
    n: int
    time: float
    hamiltonian: OperatorSum
    observables: List[OperatorSum]
    prep_circuit: List[PrepStep]
    seed: int
    t_qubits: Tuple[int, ...]
    sealed_answers: Optional[List[float]] = None

    def instance_json_dict(self) -> dict:
        steps = []
        for kind, payload in self.prep_circuit:
            if kind == "clifford":
                steps.append({"kind": "clifford", "tableau": payload.to_json_dict()})
            else:
                steps.append({"kind": "t", "qubit": int(payload)})
        return {
            "n": self.n,
            "time": self.time,
            "seed": self.seed,
            "t_qubits": list(self.t_qubits),
            "hamiltonian": self.hamiltonian.to_json_dict(),
            "observables": [o.to_json_dict() for o in self.observables],
            "prep_circuit": steps,
        }

    def answers_json_dict(self) -> dict:
        return {"seed": self.seed, "answers": self.sealed_answers}

    @staticmethod
    def from_json_dict(d: dict, answers: Optional[dict] = None) -> "ObfuscatedInstance":
        steps: List[PrepStep] = []
        for s in d["prep_circuit"]:
            if s["kind"] == "clifford":
                steps.append(("clifford", CliffordTableau.from_json_dict(s["tableau"])))
            else:
                steps.append(("t", int(s["qubit"])))
        return ObfuscatedInstance(
            n=int(d["n"]),
            time=float(d["time"]),
            hamiltonian=OperatorSum.from_json_dict(d["hamiltonian"]),
            observables=[OperatorSum.from_json_dict(o) for o in d["observables"]],
            prep_circuit=steps,
            seed=int(d["seed"]),
            t_qubits=tuple(d["t_qubits"]),
            sealed_answers=None if answers is None else list(answers["answers"]),
        )


def obfuscate(inst: TfimInstance, n_t: int, seed: int,
              clifford: Optional[CliffordTableau] = None) -> ObfuscatedInstance:
    """Dress the instance with n_t T conjugations and a random Clifford.

    Operators are conjugated; the initial state is emitted as a preparation
    circuit (Hadamard layer, the T gates, the Clifford); sealed answers are
    computed on the unobfuscated instance with the free-fermion oracle.
    """
    if n_t < 0:
        raise ValueError("n_t >= 0")
    rng = np.random.default_rng(seed)
    t_qubits = tuple(int(q) for q in rng.integers(0, inst.n, size=n_t))
    if clifford is None:
        clifford = random_clifford(inst.n, seed=int(rng.integers(0, 2**31 - 1)))

    def dress(op: OperatorSum) -> OperatorSum:
        out = op
        for q in t_qubits:
            out = conjugate_by_T(q, out)
        return conjugate_by_clifford(clifford, out)

    prep: List[PrepStep] = [("clifford", hadamard_layer(inst.n))]
    prep += [("t", q) for q in t_qubits]
    prep.append(("clifford", clifford))
    return ObfuscatedInstance(
        n=inst.n,
        time=inst.time,
        hamiltonian=dress(inst.hamiltonian),
        observables=[dress(o) for o in inst.observable_ops()],
        prep_circuit=prep,
        seed=seed,
        t_qubits=t_qubits,
        sealed_answers=inst.exact_answers(),
    )


def prep_circuit_state(inst: ObfuscatedInstance) -> np.ndarray:
    """Dense preparation |psi> = (last step) ... (first step) |0...0>."""
    from .clifford import tableau_to_unitary

    dim = 2**inst.n
    psi = np.zeros(dim, dtype=complex)
    psi[0] = 1.0
    for kind, payload in inst.prep_circuit:
        if kind == "clifford":
            psi = tableau_to_unitary(payload) @ psi
        else:
            q = int(payload)
            t = np.ones(dim, dtype=complex)
            # qubit 0 is the most significant bit
            bit = 1 << (inst.n - 1 - q)
            for idx in range(dim):
                if idx & bit:
                    t[idx] = np.exp(1j * np.pi / 4)
            psi = t * psi
    return psi


def dense_expectations(inst: ObfuscatedInstance) -> List[float]:
    """Dense evolution oracle for the obfuscated instance (n <= 8)."""
    if inst.n > 8:
        raise ValueError("dense check capped at 8 qubits")
    h = inst.hamiltonian.to_dense()
    w, v = np.linalg.eigh(h)
    psi = prep_circuit_state(inst)
    psi_t = v @ (np.exp(-1j * w * inst.time) * (v.conj().T @ psi))
    out = []
    for op in inst.observables:
        val = psi_t.conj() @ (op.to_dense() @ psi_t)
        out.append(float(np.real(val)))
    return out


# ---------------------------------------------------------------------------
# dynamical Lie algebra probe
# ---------------------------------------------------------------------------

def dla_dimension(h: OperatorSum, cap: Optional[int] = None) -> Tuple[int, bool]:
    """Dimension of the real Lie closure of the Hamiltonian's Pauli terms.

    Canonical terms are single Pauli strings and nested commutators of
    strings are single strings, so the closure is the reachable string set
    and its size is the rank over the Pauli basis.  Returns (dim, capped).
    """
    n = h.site_count
    if cap is None:
        cap = 4**n - 1
    basis: List[Tuple[Tuple[int, str], ...]] = []
    seen = set()
    for t in h.terms:
        if t.letters and t.letters not in seen:
            seen.add(t.letters)
            basis.append(t.letters)
    queue = list(basis)
    while queue:
        cur = queue.pop()
        cur_term = PauliTerm(1.0, cur)
        for other in list(basis):
            prod = multiply(cur_term, PauliTerm(1.0, other))
            # strings either commute (real phase) or anticommute (imaginary)
            if abs(prod.coefficient.imag) < 0.5 or not prod.letters:
                continue
            if prod.letters not in seen:
                seen.add(prod.letters)
                basis.append(prod.letters)
                queue.append(prod.letters)
                if len(basis) >= cap:
                    return cap, True
    return len(basis), False

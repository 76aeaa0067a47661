"""Block-encoding cost constructors for Lindblad generators, the full-
Lindbladian SELECT (indexed and translation-invariant variants), the lattice
shift circuit, the Hubbard encodings, and the evolution-time rescaling factor.

Values quoted from compiled constructions are pinned here with their
component breakdowns so each constant can be tested separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, Tuple

from .gates import GateCost, adder_block_cost, multi_controlled_cost

CA_LATTICE = (9, 9, 25)
CA_SPINS = 9 * 9 * 25
CA_GENERATOR_TYPES = 39

SELECT_CU_DEPTH_RANGE = (16.0, 208.0)

HUBBARD_V_T_COUNT = 14840  # imported linear-T encoding constant
HUBBARD_V_T_DEPTH = 5997
HUBBARD_CV_SWAP_T = 1600


@dataclass(frozen=True)
class BlockEncodingCost:
    """Costs of a generator block encoding U, its controlled version CU, and
    the k-extra-controls version C^k CU."""

    u: GateCost
    cu: GateCost
    ck_cu: Callable[[int], GateCost]

    def __post_init__(self):
        if self.cu.t_count < self.u.t_count:
            raise ValueError("controlled encoding cannot cost fewer T gates")


@dataclass(frozen=True)
class SelectParams:
    M: int
    per_op: GateCost = GateCost()
    translation_invariant: bool = False
    c_depth: float = 16.0  # within SELECT_CU_DEPTH_RANGE

    def __post_init__(self):
        if self.M < 1:
            raise ValueError("M >= 1 generators required")
        lo, hi = SELECT_CU_DEPTH_RANGE
        if not lo <= self.c_depth <= hi:
            raise ValueError(f"c_depth must lie in [{lo}, {hi}]")


def sigma_pm_costs() -> BlockEncodingCost:
    """Raising/lowering operators block-encoded as 2-qubit Clifford permutations."""
    u = GateCost(t_count=0, depth=4)
    cu = GateCost(t_count=4, depth=14)

    def ck_cu(k: int) -> GateCost:
        if k < 0:
            raise ValueError("k >= 0")
        if k == 0:
            return cu
        # method-2 control addition on top of CU; k = 1 is the quoted (12, 37)
        return GateCost(t_count=4 + 8 * k, depth=5 + 32 * math.log2(k + 1))

    return BlockEncodingCost(u=u, cu=cu, ck_cu=ck_cu)


def ca_generator_cost(k: int = 0) -> BlockEncodingCost:
    """Projector-rate generator encoding for the layered-triangular lattice.

    The core is a conditioned adder over the 14 neighbour spins (widths
    summing to 20) plus the C^6 X readout; controls are added by method 2.
    """
    adder = adder_block_cost([3] * 4 + [2] * 4)  # sum m = 20 -> (80, 360)
    assert adder.t_count == 80 and adder.depth == 360
    u = GateCost(t_count=adder.t_count + multi_controlled_cost(6).t_count, depth=418)
    cu = GateCost(t_count=108, depth=427)

    def ck_cu(kk: int) -> GateCost:
        if kk < 0:
            raise ValueError("k >= 0")
        if kk == 0:
            return cu
        return GateCost(t_count=108 + 8 * kk, depth=393 + 32 * math.log2(kk + 1))

    return BlockEncodingCost(u=u, cu=cu, ck_cu=ck_cu)


def ca_generator_components() -> Dict[str, GateCost]:
    return {
        "adder_core": adder_block_cost([3] * 4 + [2] * 4),
        "c6x": multi_controlled_cost(6),
        "c7x": multi_controlled_cost(7),
    }


def select_naive(p: SelectParams) -> Tuple[GateCost, GateCost]:
    """Indexed SELECT over M generators via consecutive multi-controlled gates."""
    m = p.M
    if m < 2:
        raise ValueError("M >= 2 for the select step")
    lg = math.log2(m)
    llg = math.log2(lg) if lg > 1 else 0.0
    u = GateCost(t_count=4 * m * lg, depth=16 * m * llg)
    cu = GateCost(t_count=36 * m * lg, depth=p.c_depth * m * llg)
    return u, cu


def select_translation(p: SelectParams) -> Tuple[GateCost, GateCost]:
    """Conditional-swap SELECT routing one fixed generator to the indexed site."""
    if not p.translation_invariant:
        raise ValueError("translation-invariant select requires the invariance flag")
    m = p.M
    if m < 2:
        raise ValueError("M >= 2 for the select step")
    lg = math.log2(m)
    # U: 2M CSWAPs (4 T each) + 2M CNOTs; CNOT tree and CSWAP cascade are
    # each 2 log2 M deep
    u = GateCost(t_count=4 * 2 * m, depth=2 * lg + 2 * lg, ancillas=m, qubits_peak=m)
    cu = GateCost(t_count=10 * m, depth=58 * lg, ancillas=m, qubits_peak=m)
    return u, cu


def select_translation_unit_counts(M: int) -> Dict[str, float]:
    lg = math.log2(M)
    return {
        "cswap_count": 2 * M,
        "cnot_count": 2 * M,
        "cnot_depth": 2 * lg,
        "cswap_depth": 2 * lg,
    }


def parallel_threshold(M: int) -> bool:
    """True when the teleportation-parallel compilation beats sequential-T.

    Compares 10*M sequential cycles against 290*log2(M) parallel ones; the
    crossover sits at M = 227.
    """
    if M < 2:
        raise ValueError("M >= 2")
    return 10 * M >= 290 * math.log2(M)


def ca_shift_circuit() -> Dict[str, object]:
    """Binary-stride shift of the 9 x 9 x 25 lattice controlled on the index.

    T-count is derived from the stride decomposition (two in-plane axes of
    period 9, one axis of period 25); the depth is a calibrated constant.
    The unary-controlled alternative is exposed for comparison.
    """
    lx, ly, lz = CA_LATTICE
    n = CA_SPINS
    cswaps = (
        (2 * n / lx) * math.log2(lx) * lx
        + (2 * n / ly) * math.log2(ly) * ly
        + (2 * n / lz) * math.log2(lz) * lz
    )
    t_binary = 4 * cswaps
    # unary-controlled alternative: 2n row sequences of length lx plus n of
    # length lz, with doubly-conditioned swaps at 8 T each
    naive_t = 8 * (2 * n * lx + n * lz)
    return {
        "cost": GateCost(t_count=t_binary, depth=5000.0),
        "t_count_reported": 178_000,
        "naive_t_count": 700_000,
        "naive_t_count_derived": naive_t,
        "cswap_count": cswaps,
    }


def ca_full_cu(k: int | None = None) -> Dict[str, object]:
    """Controlled block encoding of the full lattice Lindbladian.

    Shift circuit plus 39 generator types with k = log2(39) extra controls.
    The exposed parts always sum to the totals.
    """
    if k is None:
        k = round(math.log2(CA_GENERATOR_TYPES))
    shift = ca_shift_circuit()
    gen = ca_generator_cost().ck_cu(k)
    gen_t = CA_GENERATOR_TYPES * gen.t_count
    gen_depth = CA_GENERATOR_TYPES * gen.depth
    shift_cost: GateCost = shift["cost"]  # type: ignore[assignment]
    total = GateCost(
        t_count=shift_cost.t_count + gen_t,
        depth=shift_cost.depth + gen_depth,
        qubits_peak=2 * CA_SPINS,
        ancillas=CA_SPINS,
    )
    return {
        "cost": total,
        "k": k,
        "parts": {
            "shift_t": shift_cost.t_count,
            "generators_t": gen_t,
            "shift_depth": shift_cost.depth,
            "generators_depth": gen_depth,
        },
        "generator_t_formula": gen_t,  # 39*(108+8k); the printed ~7,300 is flagged
        "paper_generator_t": 7300,
        "qubits": 2 * CA_SPINS,
    }


def hubbard_generator_cost(variant: str) -> Dict[str, object]:
    """Controlled encodings of the 40 boundary creation/annihilation operators
    on the 10 x 10 lattice."""
    c6z = multi_controlled_cost(6)
    c7z = multi_controlled_cost(7)
    c2z = multi_controlled_cost(2)
    if variant == "naive":
        per = GateCost(t_count=100 * c6z.t_count + c7z.t_count, depth=72)
        total = GateCost(t_count=40 * per.t_count, depth=2900)
        return {
            "per_generator": per,
            "cost": total,
            "t_count_reported": 81_000,
            "parts": {"c6z_per_gen": 100, "c7z_per_gen": 1},
        }
    if variant == "refined":
        t = 180 * c2z.t_count + 400 * c6z.t_count + 40 * c7z.t_count
        return {
            "cost": GateCost(t_count=t, depth=2900),
            "t_count_reported": 9_700,
            "parts": {"c2z": 180, "c6z": 400, "c7z": 40},
        }
    if variant == "translation":
        # two conditional fermionic shift circuits plus the shared C^2 Z block;
        # pinned as printed, see the component breakdown
        return {
            "cost": GateCost(t_count=1200, depth=32, ancillas=600, qubits_peak=600),
            "t_count_reported": 1_200,
            "parts": {
                "shift_circuits": 2,
                "cswaps_per_circuit": 40,
                "cz_per_circuit": 19,
                "c2z": 180,
            },
        }
    raise ValueError(f"unknown variant {variant!r}")


def hamiltonian_encoding_cost(model: str) -> Dict[str, object]:
    """Controlled Hamiltonian block encoding CV per application instance."""
    if model == "hubbard":
        v = GateCost(t_count=HUBBARD_V_T_COUNT, depth=HUBBARD_V_T_DEPTH,
                     t_depth=HUBBARD_V_T_DEPTH)
        cv = GateCost(
            t_count=HUBBARD_V_T_COUNT + HUBBARD_CV_SWAP_T,
            depth=HUBBARD_V_T_DEPTH,
            t_depth=HUBBARD_V_T_DEPTH,
        )
        cu = hubbard_generator_cost("translation")["cost"]
        combined_t = cv.t_count + cu.t_count  # paper rounds to 18,000
        return {"v": v, "cv": cv, "cv_swap_t": HUBBARD_CV_SWAP_T,
                "cu_plus_cv_t": combined_t, "t_count_reported": 18_000}
    if model == "ca":
        zero = GateCost()
        return {"v": zero, "cv": zero, "cv_swap_t": 0, "cu_plus_cv_t": 0.0,
                "t_count_reported": 0}
    raise ValueError(f"unknown model {model!r}")


def rescaling_alpha(hamiltonian_norm: float, generator_norms) -> float:
    """alpha = max(||H||, sqrt(sum ||L||^2)); multiplies the evolution time."""
    rss = math.sqrt(sum(g * g for g in generator_norms))
    return max(float(hamiltonian_norm), rss)

"""Clifford+T cost calculus: primitive gate costs, multi-controlled
decompositions, rotation synthesis, the conditioned-adder block, and the three
ways of adding controls to a compiled gate, with a small composition algebra.

All logarithms in count formulas are base 2.  Depth formulas that come out
fractional are rounded to the nearest integer at the reporting boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple


@dataclass(frozen=True)
class GateCost:
    """Additive cost vocabulary for Clifford+T compilation."""

    t_count: float = 0
    rotation_count: float = 0
    rotation_depth: float = 0
    depth: float = 0
    t_depth: Optional[float] = None
    ancillas: float = 0
    qubits_peak: float = 0
    measurements: float = 0

    def __post_init__(self):
        for name in ("t_count", "rotation_count", "rotation_depth", "depth",
                     "ancillas", "qubits_peak", "measurements"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.t_depth is not None and self.t_depth > self.depth:
            raise ValueError("t_depth cannot exceed depth")
        if self.qubits_peak and self.qubits_peak < self.ancillas:
            raise ValueError("qubits_peak cannot be below ancillas")

    def scaled(self, k: float) -> "GateCost":
        """k sequential repetitions."""
        return GateCost(
            t_count=self.t_count * k,
            rotation_count=self.rotation_count * k,
            rotation_depth=self.rotation_depth * k,
            depth=self.depth * k,
            t_depth=None if self.t_depth is None else self.t_depth * k,
            ancillas=self.ancillas,
            qubits_peak=self.qubits_peak,
            measurements=self.measurements * k,
        )

    def to_json_dict(self) -> dict:
        d = {
            "t_count": self.t_count,
            "rotation_count": self.rotation_count,
            "rotation_depth": self.rotation_depth,
            "depth": self.depth,
            "ancillas": self.ancillas,
            "qubits_peak": self.qubits_peak,
            "measurements": self.measurements,
        }
        if self.t_depth is not None:
            d["t_depth"] = self.t_depth
        return d


def seq(a: GateCost, b: GateCost) -> GateCost:
    """Sequential composition: counts and depths add, footprints take the max."""
    td = None
    if a.t_depth is not None or b.t_depth is not None:
        td = (a.t_depth or 0) + (b.t_depth or 0)
    return GateCost(
        t_count=a.t_count + b.t_count,
        rotation_count=a.rotation_count + b.rotation_count,
        rotation_depth=a.rotation_depth + b.rotation_depth,
        depth=a.depth + b.depth,
        t_depth=td,
        ancillas=max(a.ancillas, b.ancillas),
        qubits_peak=max(a.qubits_peak, b.qubits_peak),
        measurements=a.measurements + b.measurements,
    )


def par(a: GateCost, b: GateCost) -> GateCost:
    """Parallel composition: counts and footprints add, depths take the max."""
    td = None
    if a.t_depth is not None or b.t_depth is not None:
        td = max(a.t_depth or 0, b.t_depth or 0)
    return GateCost(
        t_count=a.t_count + b.t_count,
        rotation_count=a.rotation_count + b.rotation_count,
        rotation_depth=max(a.rotation_depth, b.rotation_depth),
        depth=max(a.depth, b.depth),
        t_depth=td,
        ancillas=a.ancillas + b.ancillas,
        qubits_peak=a.qubits_peak + b.qubits_peak,
        measurements=a.measurements + b.measurements,
    )


def seq_all(costs: Sequence[GateCost]) -> GateCost:
    out = GateCost()
    for c in costs:
        out = seq(out, c)
    return out


# ---------------------------------------------------------------------------
# primitive table
# ---------------------------------------------------------------------------

_PRIMITIVES: Dict[str, GateCost] = {
    "Toffoli": GateCost(t_count=4, depth=11, t_depth=1),
    "CCZ": GateCost(t_count=4, depth=11, t_depth=1),
    "CSWAP": GateCost(t_count=4, depth=13),
    "CT": GateCost(t_count=5, depth=13),
    "CCSWAP": GateCost(t_count=6, depth=18, ancillas=1, qubits_peak=1),
    "C3X": GateCost(t_count=6, depth=16),
}


def primitive_cost(gate: str) -> GateCost:
    try:
        return _PRIMITIVES[gate]
    except KeyError:
        raise ValueError(f"unknown primitive {gate!r}; known: {sorted(_PRIMITIVES)}")


def multi_controlled_cost(n: int) -> GateCost:
    """Cost of C^n X.

    n = 2 and n = 3 use the dedicated constructions; beyond that the T-count
    is 4n - 4 with depth 16*log2(n) + 12 rounded to the nearest integer.
    """
    if n < 2:
        raise ValueError("n >= 2 controls required")
    if n == 2:
        return _PRIMITIVES["Toffoli"]
    if n == 3:
        return _PRIMITIVES["C3X"]
    return GateCost(t_count=4 * n - 4, depth=round(16 * math.log2(n) + 12))


def rotation_synthesis_cost(eps: float) -> float:
    """Average T-count of one arbitrary rotation at synthesis precision eps.

    Returned unrounded; callers round to the nearest integer per rotation.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must be in (0, 1)")
    return 0.53 * math.log2(1.0 / eps) + 4.86


def adder_block_cost(m_sizes: Sequence[int]) -> GateCost:
    """Compute-condition-uncompute adder network over registers of widths m.

    Total T-count 4*sum(m), total depth 18*sum(m).
    """
    if any(m < 1 for m in m_sizes):
        raise ValueError("register widths must be >= 1")
    total = sum(m_sizes)
    return GateCost(t_count=4 * total, depth=18 * total)


# ---------------------------------------------------------------------------
# adding controls to a compiled gate
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ControlProfile:
    """Shape of a compiled gate for the three control-addition methods.

    n_q: qubit support of the gate; J: number of C^{n_j}X-type gates in the
    to-be-controlled group; P: number of bare Paulis in that group; n_list:
    existing control counts n_j of the J gates; m: controls to add.  The
    parallelism penalties r and n_r default to their stated bounds
    2*log2(n_q) and n_q.
    """

    n_q: int
    J: int
    P: int
    n_list: Tuple[int, ...]
    m: int
    r: Optional[float] = None
    n_r: Optional[float] = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m >= 1 controls to add")
        if self.J != len([n for n in self.n_list if n > 0]):
            raise ValueError("J must count the nonzero entries of n_list")

    @property
    def r_value(self) -> float:
        if self.r is not None:
            return self.r
        return 2 * math.log2(self.n_q) if self.n_q > 1 else 0.0

    @property
    def n_r_value(self) -> float:
        return self.n_r if self.n_r is not None else float(self.n_q)


@dataclass(frozen=True)
class ControlDelta:
    method: int
    t_count: float
    depth: float
    extra_qubits: float


def add_controls(p: ControlProfile, halve_method3: bool = False) -> Tuple[List[ControlDelta], int]:
    """The three control-addition methods as (T, depth, qubits) deltas.

    Returns all three deltas plus the index (0-based) of the minimal-T method.
    ``halve_method3`` applies the compute-uncompute halving trick to the
    method-3 ancilla preparation; off by default.
    """
    m = p.m
    logm = math.log2(m) if m > 1 else 0.0
    sum_primed = sum(math.log2((nj + m) / nj) for nj in p.n_list if nj > 0)
    sum_primed_one = sum(math.log2((nj + 1) / nj) for nj in p.n_list if nj > 0)

    d1 = ControlDelta(
        method=1,
        t_count=4 * (p.J * m + p.P * (m - 1)),
        depth=16 * sum_primed + 4 * p.P * (4 * logm - 3) + p.r_value,
        extra_qubits=p.n_r_value,
    )
    d2 = ControlDelta(
        method=2,
        t_count=8 * (m - 1) + 4 * p.J,
        depth=16 * sum_primed_one + 8 * (4 * logm - 3) + p.r_value,
        extra_qubits=p.n_r_value,
    )
    t3 = 8 * (m - 1) + 8 * p.n_q
    if halve_method3:
        t3 = 8 * (m - 1) + 4 * p.n_q
    d3 = ControlDelta(
        method=3,
        t_count=t3,
        depth=8 * (4 * logm - 3) + 2 * math.log2(p.n_q) + 26,
        extra_qubits=2 * p.n_q,
    )
    deltas = [d1, d2, d3]
    best = min(range(3), key=lambda i: deltas[i].t_count)
    return deltas, best

"""Parameterized surface-code footprint model.

This is an explicit stand-in for the external estimator: rotated-patch qubit
counts, an exponential logical-error model a*(p/p_th)^((d+1)/2), and two
runtime modes (sequential T consumption vs teleportation-parallel execution
that divides the runtime by the parallelism factor k).  Accuracy target is
order of magnitude, with calibratable constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .evolution import ResourceReport

MAX_CODE_DISTANCE = 99


@dataclass
class FactoryParams:
    t_states_per_cycle: float = 7.4e-4  # per factory, per code cycle
    qubits_per_factory: float = 16000.0


@dataclass
class HardwareParams:
    p_phys: float = 1e-3
    cycle_time: float = 300e-9  # seconds per code cycle
    p_threshold: float = 1e-2
    prefactor_a: float = 0.03
    factory: FactoryParams = field(default_factory=FactoryParams)

    def __post_init__(self):
        if self.p_phys >= self.p_threshold:
            raise ValueError("p_phys must sit below threshold")
        if min(self.p_phys, self.cycle_time, self.p_threshold, self.prefactor_a) <= 0:
            raise ValueError("hardware parameters must be positive")

    @staticmethod
    def from_json_dict(d: dict) -> "HardwareParams":
        fac = d.get("factory", {})
        return HardwareParams(
            p_phys=float(d.get("p_phys", 1e-3)),
            cycle_time=float(d.get("cycle_ns", 300)) * 1e-9,
            p_threshold=float(d.get("p_th", 1e-2)),
            prefactor_a=float(d.get("a", 0.03)),
            factory=FactoryParams(
                t_states_per_cycle=float(fac.get("t_states_per_cycle", 7.4e-4)),
                qubits_per_factory=float(fac.get("qubits_per_factory", 16000)),
            ),
        )

    def to_json_dict(self) -> dict:
        return {
            "p_phys": self.p_phys,
            "cycle_ns": self.cycle_time * 1e9,
            "p_th": self.p_threshold,
            "a": self.prefactor_a,
            "factory": {
                "t_states_per_cycle": self.factory.t_states_per_cycle,
                "qubits_per_factory": self.factory.qubits_per_factory,
            },
        }


@dataclass
class PhysicalEstimate:
    code_distance: int
    runtime_seconds: float
    physical_qubits: float
    factory_qubits: float
    achieved_logical_error: float
    mode: str = "sequential"
    n_factories: int = 0

    def __post_init__(self):
        if self.code_distance % 2 == 0:
            raise ValueError("code distance must be odd")

    def to_json_dict(self) -> dict:
        return {
            "code_distance": self.code_distance,
            "runtime_seconds": self.runtime_seconds,
            "physical_qubits": self.physical_qubits,
            "factory_qubits": self.factory_qubits,
            "achieved_logical_error": self.achieved_logical_error,
            "mode": self.mode,
            "n_factories": self.n_factories,
        }


def logical_error_rate(d: int, hw: HardwareParams) -> float:
    """Per logical qubit, per logical timestep (d code cycles)."""
    return hw.prefactor_a * (hw.p_phys / hw.p_threshold) ** ((d + 1) / 2)


def select_code_distance(logical_qubits: float, logical_cycles: float,
                         budget: float, hw: HardwareParams) -> int:
    """Smallest odd d whose accumulated logical error fits a third of the budget
    (the other thirds are reserved for distillation and synthesis)."""
    if not 0 < budget < 1:
        raise ValueError("budget must be in (0, 1)")
    opportunities = logical_qubits * logical_cycles
    for d in range(3, MAX_CODE_DISTANCE + 1, 2):
        # tiny relative slack so exact threshold crossings are not lost to fp
        if opportunities * logical_error_rate(d, hw) <= budget / 3.0 * (1 + 1e-9):
            return d
    raise ValueError(f"budget unreachable at distance <= {MAX_CODE_DISTANCE}")


def footprint(report: ResourceReport, hw: Optional[HardwareParams] = None,
              budget: float = 0.01, mode: str = "sequential",
              k: Optional[float] = None) -> PhysicalEstimate:
    """Physical footprint of a logical workload.

    Sequential mode consumes one T state per logical timestep, so the runtime
    is t_count * d * cycle_time; parallel mode divides it by the parallelism
    factor k.  Data qubits follow the rotated-patch count 2d^2 with a factor
    2 for routing space.
    """
    if mode not in ("sequential", "parallel"):
        raise ValueError("mode must be 'sequential' or 'parallel'")
    hw = hw or HardwareParams()
    if k is None:
        k = report.parallelism_k if report.parallelism_k > 0 else 1.0
    logical_cycles = report.t_count
    d = select_code_distance(report.qubits, logical_cycles, budget, hw)
    runtime = report.t_count * d * hw.cycle_time
    if mode == "parallel":
        runtime /= k
    compute_qubits = 2 * report.qubits * 2 * d**2
    demand_per_cycle = (1.0 if mode == "sequential" else k) / d
    n_factories = max(1, math.ceil(demand_per_cycle / hw.factory.t_states_per_cycle))
    factory_qubits = n_factories * hw.factory.qubits_per_factory
    achieved = report.qubits * logical_cycles * logical_error_rate(d, hw)
    return PhysicalEstimate(
        code_distance=d,
        runtime_seconds=runtime,
        physical_qubits=compute_qubits + factory_qubits,
        factory_qubits=factory_qubits,
        achieved_logical_error=achieved,
        mode=mode,
        n_factories=n_factories,
    )

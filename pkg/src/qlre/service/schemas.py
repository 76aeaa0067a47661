"""Pydantic request/response models for the estimation service."""

from __future__ import annotations

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class EstimateRequestModel(BaseModel):
    model: str = Field(description="built-in model name or inline custom model")
    method: str = Field(default="qsp", pattern="^(qsp|trotter)$")
    eps: float = Field(gt=0, lt=1)
    t: Optional[float] = Field(default=None, gt=0, description="evolution time; model default if omitted")
    n_s: Optional[int] = Field(default=None, ge=1, description="schedule step count")
    custom: Optional[Dict[str, Any]] = Field(
        default=None, description="custom model payload when model == 'custom'"
    )


class ResourceReportModel(BaseModel):
    model: str
    method: str
    call_count: float
    t_count: float
    depth: float
    rotation_count: float
    qubits: float
    alpha: float
    parallelism_k: float
    extras: Dict[str, float]
    provenance: Dict[str, str]


class HardwareModel(BaseModel):
    p_phys: float = 1e-3
    cycle_ns: float = 300.0
    p_th: float = 1e-2
    a: float = 0.03
    factory: Dict[str, float] = Field(
        default_factory=lambda: {"t_states_per_cycle": 7.4e-4, "qubits_per_factory": 16000.0}
    )


class PhysicalRequestModel(BaseModel):
    report: ResourceReportModel
    hardware: Optional[HardwareModel] = None
    budget: float = Field(default=0.01, gt=0, lt=1)
    mode: str = Field(default="sequential", pattern="^(sequential|parallel)$")
    k: Optional[float] = Field(default=None, gt=0)


class PhysicalEstimateModel(BaseModel):
    code_distance: int
    runtime_seconds: float
    physical_qubits: float
    factory_qubits: float
    achieved_logical_error: float
    mode: str
    n_factories: int


class VerifyRequestModel(BaseModel):
    suite: str = Field(
        default="all",
        pattern="^(channel|trotter|gap|prosen|freefermion|obfuscation|all)$",
    )


class CheckModel(BaseModel):
    name: str
    passed: bool
    value: Any = None
    detail: Any = None


class SuiteResultModel(BaseModel):
    suite: str
    passed: bool
    checks: List[CheckModel]
    seconds: Optional[float] = None


class VerifyResponseModel(BaseModel):
    passed: bool
    suites: List[SuiteResultModel]


class BenchRequestModel(BaseModel):
    type: str = Field(pattern="^(planted-tfim|prosen)$")
    n: int = Field(ge=2, le=24)
    t_gates: int = Field(default=1, ge=0)
    seed: int = 0
    time: float = Field(default=1.0, gt=0)
    seal: bool = Field(default=False, description="withhold answers from the instance payload")


class BenchResponseModel(BaseModel):
    type: str
    instance: Dict[str, Any]
    answers: Optional[Dict[str, Any]] = None


class UtilityRequestModel(BaseModel):
    tech_weight: float = Field(gt=0, le=10)
    revenue_share: float = Field(gt=0, le=10)
    extra_factors: List[float] = Field(default_factory=list)
    market_size: float = Field(ge=0)


class UtilityResponseModel(BaseModel):
    utility: float


class ModelInfoModel(BaseModel):
    name: str
    detail: Dict[str, Any]

"""FastAPI service wrapping the resource-estimation and verification toolkit.

The CLI drives this app in-process through an ASGI transport; deployments can
serve it with uvicorn (``qlre serve``).
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import bench, verify
from ..evolution import (
    ResourceReport,
    UtilityInput,
    qsp_resources,
    trotter_resources,
    utility_estimate,
)
from ..layout import HardwareParams, footprint
from ..lindblad import measure_currents, residual_norm, steady_state
from ..models import BUILTIN_MODEL_NAMES, CaModel, CustomModel, builtin_model
from .schemas import (
    BenchRequestModel,
    BenchResponseModel,
    CheckModel,
    EstimateRequestModel,
    ModelInfoModel,
    PhysicalEstimateModel,
    PhysicalRequestModel,
    ResourceReportModel,
    SuiteResultModel,
    UtilityRequestModel,
    UtilityResponseModel,
    VerifyRequestModel,
    VerifyResponseModel,
)

DEFAULT_REQUESTS = {
    "ca3co2o6": {"t": 1.0e11, "eps": 0.01, "n_s": 10},
    "hubbard-10x10": {"t": 36.0, "eps": 0.1, "n_s": 1},
}

app = FastAPI(
    title="qlre",
    description="Resource estimation and desk-scale verification for "
                "fault-tolerant open-system simulation",
    version="0.1.0",
)


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.get("/models", response_model=list[ModelInfoModel])
def list_models():
    out = []
    for name in BUILTIN_MODEL_NAMES:
        m = builtin_model(name)
        out.append(ModelInfoModel(name=name, detail=m.to_json_dict()))
    return out


def _resolve_model(req: EstimateRequestModel):
    if req.model == "custom":
        if not req.custom:
            raise HTTPException(status_code=422, detail="custom model payload missing")
        try:
            return CustomModel.from_json_dict(req.custom)
        except (KeyError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=f"bad custom model: {exc}")
    try:
        return builtin_model(req.model)
    except KeyError:
        raise HTTPException(status_code=404, detail=f"unknown model {req.model!r}")


@app.post("/estimate", response_model=ResourceReportModel)
def estimate(req: EstimateRequestModel):
    model = _resolve_model(req)
    defaults = DEFAULT_REQUESTS.get(getattr(model, "name", ""), {})
    t = req.t if req.t is not None else defaults.get("t")
    n_s = req.n_s if req.n_s is not None else defaults.get("n_s", 1)
    if t is None:
        raise HTTPException(status_code=422, detail="evolution time t required for this model")
    if req.method == "trotter":
        if not isinstance(model, CaModel):
            raise HTTPException(
                status_code=422,
                detail="the exact product-formula pipeline is defined for ca3co2o6",
            )
        report = trotter_resources(model, t, req.eps)
    else:
        report = qsp_resources(model, t, req.eps, n_s)
    return ResourceReportModel(**report.to_json_dict())


@app.post("/physical", response_model=PhysicalEstimateModel)
def physical(req: PhysicalRequestModel):
    report = ResourceReport.from_json_dict(req.report.model_dump())
    hw = HardwareParams.from_json_dict(req.hardware.model_dump()) if req.hardware else HardwareParams()
    try:
        est = footprint(report, hw, budget=req.budget, mode=req.mode, k=req.k)
    except ValueError as exc:
        raise HTTPException(status_code=409, detail=str(exc))
    return PhysicalEstimateModel(**est.to_json_dict())


@app.post("/verify", response_model=VerifyResponseModel)
def run_verification(req: VerifyRequestModel):
    if req.suite == "all":
        result = verify.run_all()
        suites = result["suites"]
        passed = result["passed"]
    else:
        suite = verify.run_suite(req.suite)
        suites = [suite]
        passed = suite["passed"]
    return VerifyResponseModel(
        passed=passed,
        suites=[
            SuiteResultModel(
                suite=s["suite"],
                passed=s["passed"],
                seconds=s.get("seconds"),
                checks=[CheckModel(**c) for c in s["checks"]],
            )
            for s in suites
        ],
    )


@app.post("/bench/generate", response_model=BenchResponseModel)
def bench_generate(req: BenchRequestModel):
    if req.type == "planted-tfim":
        if req.n > 12:
            raise HTTPException(status_code=422, detail="planted instances capped at n=12")
        inst = bench.TfimInstance(n=req.n, time=req.time)
        ob = bench.obfuscate(inst, n_t=req.t_gates, seed=req.seed)
        answers = ob.answers_json_dict()
        return BenchResponseModel(
            type=req.type,
            instance=ob.instance_json_dict(),
            answers=None if req.seal else answers,
        )
    # boundary-driven chain: spec plus steady-state current fixtures
    if req.n > 7:
        raise HTTPException(status_code=422, detail="driven-chain fixtures capped at n=7")
    spec = bench.prosen_instance(req.n)
    payload = spec.to_json_dict()
    ss = steady_state(spec)
    prof = measure_currents(bench.prosen_chain_model(req.n), ss.data)
    answers = {
        "residual": residual_norm(spec, ss.data),
        "spin_currents": prof.spin,
        "energy_currents": prof.energy,
        "spin_average": prof.spin_average,
        "energy_average": prof.energy_average,
        "gap": bench.liouvillian_gap(req.n),
    }
    return BenchResponseModel(
        type=req.type, instance=payload, answers=None if req.seal else answers
    )


@app.post("/utility", response_model=UtilityResponseModel)
def utility(req: UtilityRequestModel):
    u = UtilityInput(
        tech_weight=req.tech_weight,
        revenue_share=req.revenue_share,
        extra_factors=tuple(req.extra_factors),
        market_size=req.market_size,
    )
    return UtilityResponseModel(utility=utility_estimate(u))

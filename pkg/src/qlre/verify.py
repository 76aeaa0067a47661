"""Verification suites wrapping the kernel invariants into machine-readable
pass/fail summaries.

Each suite returns {"suite", "passed", "checks": [{name, passed, value, ...}]}
and is safe to run repeatedly; seeds are fixed.  The QLRE_THREADS environment
variable caps the worker threads used by the embarrassingly parallel suites.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Sequence

import numpy as np

from . import bench
from .channels import (
    channel_distance,
    dissipator_channel,
    kraus_completeness_defect,
    verify_trotter_bound,
    weak_channel,
)
from .lindblad import (
    HALF,
    PAPER2,
    LindbladSpec,
    measure_currents,
    residual_norm,
    steady_state,
)
from .models import tfim_chain
from .operators import OperatorSum, PauliTerm

SUITES = ("channel", "trotter", "gap", "freefermion", "obfuscation")

GAP_COEFFICIENT_WINDOW = (8.0, 14.0)
CURRENT_ASYMPTOTES = {"energy": 0.35, "spin": 0.12}


def worker_count() -> int:
    env = os.environ.get("QLRE_THREADS")
    if env:
        return max(1, int(env))
    return max(1, os.cpu_count() or 1)


def _summary(suite: str, checks: List[dict]) -> dict:
    return {
        "suite": suite,
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
    }


# ---------------------------------------------------------------------------
# channel suite: the 5 delta^2 bound
# ---------------------------------------------------------------------------

def channel_suite(n_triples: int = 300, seed: int = 2024) -> dict:
    rng = np.random.default_rng(seed)
    deltas = (0.5, 0.1, 0.01)
    cases = []
    for k in range(n_triples // len(deltas) + 1):
        n = int(rng.integers(1, 4))
        d = 2**n
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        g = g / (np.linalg.norm(g, 2) * (1.0 + rng.uniform(0.0, 1.0)))
        cases.append((g, int(rng.integers(0, 2**31))))

    def run_case(args):
        g, s = args
        worst = 0.0
        defect = 0.0
        for delta in deltas:
            wc = weak_channel(g, delta)
            ex = dissipator_channel(g, delta)
            dist = channel_distance(wc, ex, n_states=1, seed=s)
            worst = max(worst, dist / (5.0 * delta**2))
            defect = max(defect, kraus_completeness_defect(wc.kraus))
        return worst, defect

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        results = list(pool.map(run_case, cases[: max(1, n_triples // len(deltas))]))
    worst_ratio = max(r for r, _ in results)
    worst_defect = max(d for _, d in results)
    # slope of the error against delta on one fixed contraction
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    g = g / (np.linalg.norm(g, 2) * 1.25)
    ds = np.logspace(-3, -1, 7)
    errs = [
        channel_distance(weak_channel(g, float(t)), dissipator_channel(g, float(t)),
                         n_states=4, seed=seed)
        for t in ds
    ]
    slope = float(np.polyfit(np.log(ds), np.log(errs), 1)[0])
    checks = [
        {"name": "five_delta_sq_bound", "passed": worst_ratio <= 1.0,
         "value": worst_ratio, "detail": "max distance / (5 delta^2)"},
        {"name": "kraus_completeness", "passed": worst_defect <= 1e-12,
         "value": worst_defect},
        {"name": "quadratic_slope", "passed": abs(slope - 2.0) <= 0.1, "value": slope},
    ]
    return _summary("channel", checks)


# ---------------------------------------------------------------------------
# trotter suite
# ---------------------------------------------------------------------------

def _random_spec(rng: np.random.Generator, n: int = 3) -> LindbladSpec:
    terms = []
    for _ in range(3):
        sites = rng.choice(n, size=2, replace=False)
        letters = {int(q): "XYZ"[int(rng.integers(0, 3))] for q in sites}
        terms.append(PauliTerm.from_map(float(rng.normal()), letters))
    h = OperatorSum(n, terms)
    gens = []
    for _ in range(int(rng.integers(2, 5))):
        ts = [
            PauliTerm.from_map(float(rng.normal()) * 0.4, {q: p})
            for q in range(n)
            for p in "XYZ"
        ]
        op = OperatorSum(n, ts)
        op = op * (1.0 / (op.norm_bound() * (1.0 + float(rng.uniform(0, 1)))))
        gens.append((1.0, op))
    return LindbladSpec(h, gens, PAPER2)


def trotter_suite(n_specs: int = 20, seed: int = 77) -> dict:
    rng = np.random.default_rng(seed)
    specs = [_random_spec(rng) for _ in range(n_specs)]

    def run(idx_spec):
        idx, spec = idx_spec
        out = []
        for delta in (1e-2, 1e-3):
            chk = verify_trotter_bound(spec, delta, n_states=8, seed=seed + idx)
            out.append((delta, chk))
        return out

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        results = list(pool.map(run, enumerate(specs)))
    all_pass = all(chk.passed for group in results for _, chk in group)
    worst = max(chk.lhs / chk.rhs for group in results for _, chk in group)
    checks = [
        {"name": "product_formula_bound", "passed": all_pass, "value": worst,
         "detail": f"worst lhs/rhs over {n_specs} specs x 2 deltas"},
    ]
    return _summary("trotter", checks)


# ---------------------------------------------------------------------------
# gap / steady-state suite
# ---------------------------------------------------------------------------

def gap_suite(n_values: Sequence[int] = (4, 5, 6)) -> dict:
    lo, hi = GAP_COEFFICIENT_WINDOW
    per_convention: Dict[str, Dict[int, float]] = {}
    for conv in (PAPER2, HALF):
        per_convention[conv] = {n: bench.liouvillian_gap(n, conv) for n in n_values}
    fits = {conv: bench.gap_law_fit(n_values, conv, gaps=g)
            for conv, g in per_convention.items()}
    # the published n^-3 law normalizes the dissipator without the factor 2,
    # so the half-convention fit is the one measured against the window; both
    # conventions are reported side by side
    fitted = fits[HALF]
    checks = [
        {"name": "gap_positive", "passed": all(g > 0 for g in per_convention[HALF].values()),
         "value": min(per_convention[HALF].values())},
        {"name": "gap_decreasing", "passed": all(
            per_convention[HALF][a] > per_convention[HALF][b]
            for a, b in zip(n_values, list(n_values)[1:])), "value": None},
        {"name": "gap_law_coefficient", "passed": lo <= fitted <= hi, "value": fitted,
         "detail": {"half": fits[HALF], "paper2": fits[PAPER2],
                    "per_n_half": {str(k): v * k**3 for k, v in per_convention[HALF].items()}}},
    ]
    return _summary("gap", checks)


def prosen_suite(n_values: Sequence[int] = (4, 5, 6)) -> dict:
    """Steady-state invariants and current profiles of the driven chain."""
    residuals = {}
    uniformity = {}
    s_avg = {}
    q_avg = {}
    for n in n_values:
        spec = bench.prosen_instance(n)
        ss = steady_state(spec)
        ss.validate()
        residuals[n] = residual_norm(spec, ss.data)
        prof = measure_currents(bench.prosen_chain_model(n), ss.data)
        bulk = prof.spin[1:-1]
        uniformity[n] = max(bulk) - min(bulk) if len(bulk) > 1 else 0.0
        s_avg[n] = prof.spin_average
        q_avg[n] = prof.energy_average
    s_seq = [s_avg[n] for n in n_values]
    q_seq = [q_avg[n] for n in n_values]

    def monotone(seq, strict=False):
        up = all(b > a if strict else b >= a for a, b in zip(seq, seq[1:]))
        dn = all(b < a if strict else b <= a for a, b in zip(seq, seq[1:]))
        return up or dn

    checks = [
        {"name": "ness_residual", "passed": max(residuals.values()) <= 1e-10,
         "value": max(residuals.values())},
        {"name": "bulk_spin_uniformity", "passed": max(uniformity.values()) <= 1e-8,
         "value": max(uniformity.values())},
        {"name": "spin_average_monotone", "passed": monotone(s_seq, strict=True),
         "value": s_seq, "detail": {"published_asymptote": CURRENT_ASYMPTOTES["spin"]}},
        {"name": "energy_average_monotone", "passed": monotone(q_seq, strict=False),
         "value": q_seq, "detail": {"published_asymptote": CURRENT_ASYMPTOTES["energy"]}},
    ]
    return _summary("prosen", checks)


# ---------------------------------------------------------------------------
# free-fermion suite
# ---------------------------------------------------------------------------

def _dense_zz(n: int, i: int, j: int, t: float) -> float:
    h = tfim_chain(n).to_dense()
    w, v = np.linalg.eigh(h)
    plus = np.full(2**n, 2 ** (-n / 2), dtype=complex)
    psi = v @ (np.exp(-1j * w * t) * (v.conj().T @ plus))
    zz = OperatorSum(n, [PauliTerm.from_map(1.0, {i: "Z", j: "Z"})]).to_dense()
    return float(np.real(psi.conj() @ (zz @ psi)))


def freefermion_suite(sizes: Sequence[int] = (4, 6, 8, 10),
                      times: Sequence[float] = (0.1, 1.0, 5.0)) -> dict:
    worst = 0.0
    t0_worst = 0.0
    for n in sizes:
        # dense reference spectrum once per size
        h = tfim_chain(n).to_dense()
        w, v = np.linalg.eigh(h)
        plus = np.full(2**n, 2 ** (-n / 2), dtype=complex)
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for t in times:
            psi = v @ (np.exp(-1j * w * t) * (v.conj().T @ plus))
            for i, j in pairs:
                zz = OperatorSum(n, [PauliTerm.from_map(1.0, {i: "Z", j: "Z"})]).to_dense()
                dense_val = float(np.real(psi.conj() @ (zz @ psi)))
                worst = max(worst, abs(bench.zz_correlator(n, i, j, t) - dense_val))
        for i, j in pairs:
            t0_worst = max(t0_worst, abs(bench.zz_correlator(n, i, j, 0.0)))
    checks = [
        {"name": "dense_agreement", "passed": worst <= 1e-8, "value": worst},
        {"name": "t0_correlators_zero", "passed": t0_worst == 0.0, "value": t0_worst},
    ]
    return _summary("freefermion", checks)


# ---------------------------------------------------------------------------
# obfuscation suite
# ---------------------------------------------------------------------------

def obfuscation_suite(seed: int = 31) -> dict:
    sealed_gap = 0.0
    spectrum_gap = 0.0
    for n, n_t, s in ((6, 1, seed), (8, 1, seed + 1), (6, 2, seed + 2)):
        inst = bench.TfimInstance(n=n, time=1.1)
        ob = bench.obfuscate(inst, n_t=n_t, seed=s)
        dense = bench.dense_expectations(ob)
        sealed_gap = max(
            sealed_gap, max(abs(a - b) for a, b in zip(ob.sealed_answers, dense))
        )
        w0 = np.sort(np.linalg.eigvalsh(inst.hamiltonian.to_dense()))
        w1 = np.sort(np.linalg.eigvalsh(ob.hamiltonian.to_dense()))
        spectrum_gap = max(spectrum_gap, float(np.max(np.abs(w0 - w1))))
    # DLA: invariant under Clifford dressing, strictly grown by one T gate
    clifford_ok = True
    growth_ok = True
    dims = {}
    for n in (3, 4, 5):
        h = tfim_chain(n)
        d0, _ = bench.dla_dimension(h)
        from .clifford import conjugate_by_T, conjugate_by_clifford, random_clifford

        for s in range(3):
            dc, _ = bench.dla_dimension(
                conjugate_by_clifford(random_clifford(n, seed + s), h)
            )
            clifford_ok = clifford_ok and dc == d0
        dt, _ = bench.dla_dimension(conjugate_by_T(n // 2, h))
        growth_ok = growth_ok and dt > d0
        dims[n] = (d0, dt)
    ratios = [dims[n][1] / dims[n][0] for n in (3, 4, 5)]
    accelerating = all(b > a for a, b in zip(ratios, ratios[1:]))
    checks = [
        {"name": "sealed_answers_match_dense", "passed": sealed_gap <= 1e-10,
         "value": sealed_gap},
        {"name": "spectra_preserved", "passed": spectrum_gap <= 1e-10,
         "value": spectrum_gap},
        {"name": "dla_clifford_invariant", "passed": clifford_ok, "value": None},
        {"name": "dla_t_gate_growth", "passed": growth_ok and accelerating,
         "value": {str(k): list(v) for k, v in dims.items()}},
    ]
    return _summary("obfuscation", checks)


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

def run_suite(name: str) -> dict:
    started = time.time()
    if name == "channel":
        out = channel_suite()
    elif name == "trotter":
        out = trotter_suite()
    elif name == "gap":
        out = gap_suite()
    elif name == "prosen":
        out = prosen_suite()
    elif name == "freefermion":
        out = freefermion_suite()
    elif name == "obfuscation":
        out = obfuscation_suite()
    else:
        raise ValueError(f"unknown suite {name!r}; known: {SUITES + ('prosen',)}")
    out["seconds"] = round(time.time() - started, 3)
    return out


def run_all() -> dict:
    suites = [run_suite(s) for s in SUITES + ("prosen",)]
    return {
        "passed": all(s["passed"] for s in suites),
        "suites": suites,
    }

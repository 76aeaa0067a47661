"""Batch front end.

Every subcommand talks to the FastAPI service: in-process through an ASGI
transport by default, or over the network when --server is given, so the CLI
stays a thin client of the same validated interface.
"""

from __future__ import annotations

import csv
import json
import sys
from pathlib import Path
from typing import Optional

import click
import httpx


def _client(server: Optional[str]) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=3600.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service.app import app

    return TestClient(app)


def _dump_json(path: Path, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _dump_report_csv(path: Path, payload: dict) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["name", "value", "provenance"])
        prov = payload.get("provenance", {})
        for name in ("call_count", "t_count", "depth", "rotation_count",
                     "qubits", "alpha", "parallelism_k"):
            w.writerow([name, repr(payload[name]), prov.get(name, "derived-formula")])
        for k in sorted(payload.get("extras", {})):
            w.writerow([k, repr(payload["extras"][k]), prov.get(k, "derived-formula")])


@click.group()
@click.option("--server", default=None, help="remote service URL; in-process when omitted")
@click.pass_context
def main(ctx, server):
    """Resource estimation and verification for open-system simulation."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


@main.command()
@click.option("--model", required=True,
              help="ca3co2o6 | hubbard-10x10 | path to a custom model JSON")
@click.option("--method", type=click.Choice(["qsp", "trotter"]), default="qsp")
@click.option("--eps", type=float, required=True)
@click.option("--time", "t", type=float, default=None, help="evolution time (model default if omitted)")
@click.option("--steps", "n_s", type=int, default=None, help="schedule step count")
@click.option("--out", type=click.Path(path_type=Path), required=True)
@click.pass_context
def estimate(ctx, model, method, eps, t, n_s, out):
    """Logical resource report (JSON + CSV)."""
    body = {"model": model, "method": method, "eps": eps}
    if t is not None:
        body["t"] = t
    if n_s is not None:
        body["n_s"] = n_s
    if model not in ("ca3co2o6", "hubbard-10x10", "hubbard", "custom"):
        p = Path(model)
        if not p.exists():
            click.echo(f"error: model file {model!r} not found", err=True)
            sys.exit(2)
        body["model"] = "custom"
        body["custom"] = json.loads(p.read_text())
    with _client(ctx.obj["server"]) as client:
        r = client.post("/estimate", json=body)
    if r.status_code != 200:
        click.echo(f"error: {r.status_code} {r.text}", err=True)
        sys.exit(2)
    payload = r.json()
    _dump_json(out, payload)
    _dump_report_csv(out.with_suffix(".csv"), payload)
    click.echo(f"wrote {out} and {out.with_suffix('.csv')}")
    click.echo(f"T-count {payload['t_count']:.4g}, depth {payload['depth']:.4g}, "
               f"qubits {payload['qubits']:.0f}, alpha {payload['alpha']:.4g}")


@main.command()
@click.option("--report", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--hardware", type=click.Path(exists=True, path_type=Path), default=None)
@click.option("--mode", type=click.Choice(["sequential", "parallel"]), default="sequential")
@click.option("--budget", type=float, default=0.01)
@click.option("--k", type=float, default=None, help="override parallelism factor")
@click.option("--out", type=click.Path(path_type=Path), required=True)
@click.pass_context
def physical(ctx, report, hardware, mode, budget, k, out):
    """Surface-code footprint of a logical report."""
    body = {
        "report": json.loads(report.read_text()),
        "mode": mode,
        "budget": budget,
    }
    if hardware:
        body["hardware"] = json.loads(hardware.read_text())
    if k is not None:
        body["k"] = k
    with _client(ctx.obj["server"]) as client:
        r = client.post("/physical", json=body)
    if r.status_code == 409:
        click.echo(f"error: infeasible budget: {r.text}", err=True)
        sys.exit(3)
    if r.status_code != 200:
        click.echo(f"error: {r.status_code} {r.text}", err=True)
        sys.exit(2)
    payload = r.json()
    _dump_json(out, payload)
    click.echo(
        f"d={payload['code_distance']}, runtime {payload['runtime_seconds']:.4g} s, "
        f"{payload['physical_qubits']:.4g} physical qubits "
        f"({payload['factory_qubits']:.4g} factory)"
    )


@main.command()
@click.option("--suite",
              type=click.Choice(["channel", "trotter", "gap", "prosen",
                                 "freefermion", "obfuscation", "all"]),
              default="all")
@click.option("--out", type=click.Path(path_type=Path), default=None)
@click.pass_context
def verify(ctx, suite, out):
    """Run verification suites; exit 0 iff everything passes."""
    with _client(ctx.obj["server"]) as client:
        r = client.post("/verify", json={"suite": suite})
    if r.status_code != 200:
        click.echo(f"error: {r.status_code} {r.text}", err=True)
        sys.exit(2)
    payload = r.json()
    if out:
        _dump_json(out, payload)
    for s in payload["suites"]:
        mark = "PASS" if s["passed"] else "FAIL"
        click.echo(f"[{mark}] {s['suite']} ({s.get('seconds', 0)}s)")
        for c in s["checks"]:
            cm = "pass" if c["passed"] else "FAIL"
            click.echo(f"    {cm:4s} {c['name']}: {c['value']}")
    sys.exit(0 if payload["passed"] else 1)


@main.group()
def bench():
    """Planted benchmark instances."""


@bench.command("gen")
@click.option("--type", "kind", type=click.Choice(["planted-tfim", "prosen"]), required=True)
@click.option("--n", type=int, required=True)
@click.option("--t-gates", type=int, default=1)
@click.option("--seed", type=int, default=0)
@click.option("--time", type=float, default=1.0)
@click.option("--seal", is_flag=True, default=False,
              help="write answers only to the detached answers file")
@click.option("--out", type=click.Path(path_type=Path), required=True,
              help="output directory")
@click.pass_context
def bench_gen(ctx, kind, n, t_gates, seed, time, seal, out):
    """Generate an instance plus (optionally detached) answers."""
    body = {"type": kind, "n": n, "t_gates": t_gates, "seed": seed,
            "time": time, "seal": False}
    with _client(ctx.obj["server"]) as client:
        r = client.post("/bench/generate", json=body)
    if r.status_code != 200:
        click.echo(f"error: {r.status_code} {r.text}", err=True)
        sys.exit(2)
    payload = r.json()
    out.mkdir(parents=True, exist_ok=True)
    stem = f"{kind}-n{n}-seed{seed}"
    inst_path = out / f"{stem}.json"
    written = [inst_path]
    if seal:
        ans_path = out / f"{stem}.answers.json"
        _dump_json(inst_path, payload["instance"])
        _dump_json(ans_path, payload["answers"])
        written.append(ans_path)
    else:
        _dump_json(inst_path, {**payload["instance"], "answers": payload["answers"]})
    if kind == "prosen":
        cur_path = out / f"{stem}.currents.csv"
        with cur_path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["kind", "index", "value"])
            for i, v in enumerate(payload["answers"]["spin_currents"]):
                w.writerow(["spin", i, repr(v)])
            for i, v in enumerate(payload["answers"]["energy_currents"]):
                w.writerow(["energy", i, repr(v)])
        written.append(cur_path)
    click.echo("wrote " + ", ".join(str(p) for p in written))


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the estimation service with uvicorn."""
    import uvicorn

    uvicorn.run("qlre.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()

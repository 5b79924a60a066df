"""Thin command-line client for the inference service.

By default the service runs in-process (no server needed); `--server URL`
points the same commands at a remote instance. Exit codes: 0 success,
1 input/parse error, 2 inference error (impossible evidence), 3 internal
invariant failure.
"""
from __future__ import annotations

import csv
import json
import sys
from io import StringIO

import click
import httpx

from .format import metric_str, prob_str

EXIT_INPUT = 1
EXIT_INFERENCE = 2
EXIT_INTERNAL = 3

_KIND_EXIT = {"input": EXIT_INPUT, "inference": EXIT_INFERENCE, "internal": EXIT_INTERNAL}


class Client:
    """Posts to either a remote server or an in-process ASGI app."""

    def __init__(self, server: str | None):
        if server:
            self._http = httpx.Client(base_url=server, timeout=60.0)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service.app import create_app

            self._http = TestClient(create_app(), raise_server_exceptions=False)

    def post(self, path: str, payload: dict) -> dict:
        try:
            resp = self._http.post(path, json=payload)
        except httpx.HTTPError as exc:
            _fail(f"cannot reach server: {exc}", EXIT_INPUT)
        if resp.status_code == 200:
            return resp.json()
        try:
            body = resp.json()
        except ValueError:
            body = {}
        kind = body.get("kind")
        if kind is None:
            kind = "input" if resp.status_code < 500 else "internal"
        detail = body.get("detail", f"server returned HTTP {resp.status_code}")
        if not isinstance(detail, str):
            detail = json.dumps(detail)
        _fail(detail, _KIND_EXIT.get(kind, EXIT_INTERNAL))


def _fail(message: str, code: int) -> "t.NoReturn":  # noqa: F821
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _read_model(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        _fail(f"cannot read model file {path!r}: {exc}", EXIT_INPUT)


def _parse_binding(text: str) -> tuple[str, int]:
    name, sep, bit = text.partition("=")
    if not sep or bit not in ("0", "1"):
        _fail(f"expected NAME=0 or NAME=1, got {text!r}", EXIT_INPUT)
    return name, int(bit)


def _parse_targets(raw: tuple[str, ...]) -> tuple[list[str], dict[str, int]]:
    names: list[str] = []
    fixed: dict[str, int] = {}
    for item in raw:
        if "=" in item:
            name, bit = _parse_binding(item)
            names.append(name)
            fixed[name] = bit
        else:
            names.append(item)
    return names, fixed


def _split_names(text: str) -> list[str]:
    return [p.strip() for p in text.split(",") if p.strip()]


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _table_lines(dist: dict) -> list[str]:
    return [f"{e['outcome']} {prob_str(e['probability'])}" for e in dist["entries"]]


@click.group()
@click.option("--server", default=None, metavar="URL", help="Remote service URL (default: run in-process).")
@click.pass_context
def main(ctx, server):
    """Quantum Bayesian inference over .qbn model files."""
    ctx.obj = Client(server)


@main.command()
@click.argument("model", type=click.Path())
@click.option("--target", "targets", multiple=True, required=True, metavar="NAME[=BIT]")
@click.option("--evidence", "evidence", multiple=True, metavar="NAME=BIT")
@click.option("--engine", type=click.Choice(["quantum", "classical", "both"]), default="quantum", show_default=True)
@click.pass_obj
def query(client: Client, model, targets, evidence, engine):
    """Conditional distribution over the targets given the evidence."""
    names, fixed = _parse_targets(targets)
    ev = dict(_parse_binding(e) for e in evidence)
    out = client.post(
        "/query",
        {"model_text": _read_model(model), "targets": names, "evidence": ev, "engine": engine},
    )
    for label in ("quantum", "classical"):
        dist = out.get(label)
        if dist is None:
            continue
        if engine == "both":
            click.echo(f"[{label}]")
        for entry in dist["entries"]:
            if fixed and any(
                entry["outcome"][dist["scope"].index(n)] != str(b)
                for n, b in fixed.items()
            ):
                continue
            click.echo(f"{entry['outcome']} {prob_str(entry['probability'])}")
    if out.get("max_abs_diff") is not None:
        click.echo(f"max_abs_diff={out['max_abs_diff']:.3e}")


@main.command()
@click.argument("model", type=click.Path())
@click.option("--joint", "joint", is_flag=True)
@click.option("--marginal", "marginal_vars", default=None, metavar="NAMES")
@click.option("--conditional", "conditional_vars", default=None, metavar="NAMES")
@click.option("--evidence", "evidence", multiple=True, metavar="NAME=BIT")
@click.option("--order", default=None, metavar="NAMES", help="Display order for the outcome bit-strings.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--output", "-o", default=None, type=click.Path(), help="Write to a file instead of stdout.")
@click.pass_obj
def dist(client: Client, model, joint, marginal_vars, conditional_vars, evidence, order, fmt, output):
    """Export a joint, marginal, or conditional distribution."""
    chosen = sum(bool(x) for x in (joint, marginal_vars, conditional_vars))
    if chosen != 1:
        _fail("choose exactly one of --joint, --marginal, --conditional", EXIT_INPUT)
    if joint:
        kind, variables = "joint", []
    elif marginal_vars:
        kind, variables = "marginal", _split_names(marginal_vars)
    else:
        kind, variables = "conditional", _split_names(conditional_vars)
    ev = dict(_parse_binding(e) for e in evidence)
    payload = {
        "model_text": _read_model(model),
        "kind": kind,
        "variables": variables,
        "evidence": ev,
        "order": _split_names(order) if order else None,
    }
    out = client.post("/distribution", payload)
    if fmt == "json":
        doc = {
            "scope": out["scope"],
            "entries": {e["outcome"]: e["probability"] for e in out["entries"]},
        }
        _emit(json.dumps(doc, indent=2) + "\n", output)
    else:
        lines = ["outcome,probability"]
        lines += [f"{e['outcome']},{prob_str(e['probability'])}" for e in out["entries"]]
        _emit("\n".join(lines) + "\n", output)


@main.command()
@click.argument("model", type=click.Path())
@click.option("--entropy", "entropy_var", default=None, metavar="NAME")
@click.option("--posterior-entropy", "pe_var", default=None, metavar="NAME")
@click.option("--evidence", "evidence", multiple=True, metavar="NAME=BIT")
@click.option("--mi", "mi_vars", default=None, metavar="A,B")
@click.option("--fidelity", "fidelity_files", nargs=2, default=None, type=click.Path(), metavar="A.CSV B.CSV")
@click.option("--cdf", "cdf", is_flag=True)
@click.option("--top", "top", default=None, type=int, metavar="K")
@click.option("--output", "-o", default=None, type=click.Path())
@click.pass_obj
def metrics(client: Client, model, entropy_var, pe_var, evidence, mi_vars, fidelity_files, cdf, top, output):
    """Information-theoretic metrics and ranked-outcome exports."""
    chosen = sum(bool(x) for x in (entropy_var, pe_var, mi_vars, fidelity_files, cdf, top is not None))
    if chosen != 1:
        _fail(
            "choose exactly one of --entropy, --posterior-entropy, --mi, --fidelity, --cdf, --top",
            EXIT_INPUT,
        )
    if fidelity_files:
        p = _read_dist_csv(fidelity_files[0])
        q = _read_dist_csv(fidelity_files[1])
        out = client.post("/metrics/fidelity", {"p": p, "q": q})
        click.echo(f"{out['name']}={metric_str(out['value'])}")
        return
    ev = dict(_parse_binding(e) for e in evidence)
    payload = {"model_text": _read_model(model), "evidence": ev, "variables": [], "k": top or 5}
    if entropy_var:
        payload.update(metric="entropy", variables=[entropy_var])
    elif pe_var:
        payload.update(metric="posterior_entropy", variables=[pe_var])
    elif mi_vars:
        payload.update(metric="mutual_information", variables=_split_names(mi_vars))
    elif cdf:
        payload.update(metric="cdf")
    else:
        payload.update(metric="top_k")
    out = client.post("/metrics", payload)
    if "rows" in out:
        lines = ["outcome,probability,cumulative"]
        lines += [
            f"{r['outcome']},{prob_str(r['probability'])},{prob_str(r['cumulative'])}"
            for r in out["rows"]
        ]
        _emit("\n".join(lines) + "\n", output)
    else:
        click.echo(f"{out['name']}={metric_str(out['value'])}")


def _read_dist_csv(path: str) -> dict[str, float]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        _fail(f"cannot read {path!r}: {exc}", EXIT_INPUT)
    reader = csv.DictReader(StringIO(text))
    if reader.fieldnames is None or "outcome" not in reader.fieldnames or "probability" not in reader.fieldnames:
        _fail(f"{path!r} must be a CSV with outcome,probability columns", EXIT_INPUT)
    out = {}
    for row in reader:
        try:
            out[row["outcome"]] = float(row["probability"])
        except (TypeError, ValueError):
            _fail(f"{path!r}: bad probability in row {row!r}", EXIT_INPUT)
    return out


@main.command()
@click.argument("model", type=click.Path())
@click.option("--noise", required=True, type=float, metavar="EPS")
@click.option("--trials", required=True, type=int, metavar="M")
@click.option("--seed", default=0, type=int, show_default=True)
@click.pass_obj
def perturb(client: Client, model, noise, trials, seed):
    """Top-3 stability under random CPT perturbations."""
    out = client.post(
        "/perturb",
        {"model_text": _read_model(model), "noise": noise, "trials": trials, "seed": seed},
    )
    click.echo("baseline_top3=" + ",".join(out["baseline_top3"]))
    for i, t in enumerate(out["trials"], start=1):
        click.echo(f"trial={i} top3={','.join(t['top3'])} mass={t['mass']:.12f}")
    click.echo(f"agreement_fraction={out['agreement_fraction']:.9f}")
    click.echo(f"min_top3_mass={out['min_mass']:.12f}")
    click.echo(f"mean_top3_mass={out['mean_mass']:.12f}")


@main.command()
@click.argument("model", type=click.Path())
@click.pass_obj
def circuit(client: Client, model):
    """Dump the compiled gate list."""
    out = client.post("/circuit", {"model_text": _read_model(model)})
    for line in out["lines"]:
        click.echo(line)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host, port):
    """Run the inference service as an HTTP server."""
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()

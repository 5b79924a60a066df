"""FastAPI service exposing the inference engine.

Every endpoint takes the model text in the request body, so the server is
stateless and safe for concurrent clients. Engine errors map onto HTTP
statuses via their `kind`: input -> 400, inference -> 422, internal -> 500.
"""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..bayesnet import BayesNet, parse_model, validate
from ..compiler import compile_network, dump_circuit, simulate
from ..errors import QBayesError, UsageError
from ..format import outcome_str
from ..inference import Distribution, conditional, joint_distribution, marginal, reorder
from ..metrics import (
    cdf_over_sorted_outcomes,
    entropy,
    mutual_information,
    posterior_entropy,
    top_k,
)
from ..oracle import oracle_query
from ..perturb import perturb_experiment
from . import schemas

_STATUS = {"input": 400, "inference": 422, "internal": 500}


def _quantum_joint(net: BayesNet) -> Distribution:
    return joint_distribution(simulate(compile_network(net)), net)


def _resolve(net: BayesNet, names: list[str]) -> list[int]:
    seen = set()
    out = []
    for name in names:
        i = net.index_of(name)
        if i in seen:
            raise UsageError(f"variable {name!r} listed twice")
        seen.add(i)
        out.append(i)
    return out


def _resolve_evidence(net: BayesNet, evidence: dict[str, int]) -> dict[int, int]:
    out = {}
    for name, bit in evidence.items():
        if bit not in (0, 1):
            raise UsageError(f"evidence bit for {name!r} must be 0 or 1, got {bit!r}")
        out[net.index_of(name)] = bit
    return out


def _dist_out(net: BayesNet, dist: Distribution) -> schemas.DistributionOut:
    return schemas.DistributionOut(
        scope=[net.name_of(v) for v in dist.scope],
        entries=[
            schemas.Entry(outcome=outcome_str(bits), probability=p)
            for bits, p in dist.items()
        ],
    )


def create_app() -> FastAPI:
    app = FastAPI(title="qbayes", version="0.1.0")

    @app.exception_handler(QBayesError)
    async def _engine_error(request: Request, exc: QBayesError):
        return JSONResponse(
            status_code=_STATUS[exc.kind],
            content={"detail": str(exc), "kind": exc.kind},
        )

    @app.get("/health")
    async def health():
        return {"status": "ok"}

    @app.post("/validate", response_model=schemas.ValidateOut)
    async def validate_model(req: schemas.ModelRequest):
        net = parse_model(req.model_text)  # raises ModelError on any violation
        return schemas.ValidateOut(
            ok=not validate(net),
            violations=validate(net),
            variables=[v.name for v in net.variables],
        )

    @app.post("/query", response_model=schemas.QueryOut)
    async def query(req: schemas.QueryRequest):
        net = parse_model(req.model_text)
        targets = _resolve(net, req.targets)
        evidence = _resolve_evidence(net, req.evidence)
        out = schemas.QueryOut()
        if req.engine in ("quantum", "both"):
            q = conditional(_quantum_joint(net), targets, evidence)
            out.quantum = _dist_out(net, q)
        if req.engine in ("classical", "both"):
            c = oracle_query(net, targets, evidence)
            out.classical = _dist_out(net, c)
        if out.quantum is not None and out.classical is not None:
            out.max_abs_diff = max(
                abs(a.probability - b.probability)
                for a, b in zip(out.quantum.entries, out.classical.entries)
            )
        return out

    @app.post("/distribution", response_model=schemas.DistributionOut)
    async def distribution(req: schemas.DistRequest):
        net = parse_model(req.model_text)
        joint = _quantum_joint(net)
        if req.kind == "joint":
            dist = joint
        elif req.kind == "marginal":
            if not req.variables:
                raise UsageError("marginal requires at least one variable")
            dist = marginal(joint, _resolve(net, req.variables))
        else:
            if not req.variables:
                raise UsageError("conditional requires at least one target variable")
            dist = conditional(
                joint, _resolve(net, req.variables), _resolve_evidence(net, req.evidence)
            )
        if req.order is not None:
            dist = reorder(dist, _resolve(net, req.order))
        return _dist_out(net, dist)

    @app.post("/metrics", response_model=schemas.MetricOut | schemas.RankedOut)
    async def metrics(req: schemas.MetricsRequest):
        net = parse_model(req.model_text)
        joint = _quantum_joint(net)
        if req.metric == "entropy":
            if len(req.variables) != 1:
                raise UsageError("entropy takes exactly one variable")
            (v,) = _resolve(net, req.variables)
            value = entropy(marginal(joint, [v]))
            return schemas.MetricOut(name=f"entropy({net.name_of(v)})", value=value)
        if req.metric == "posterior_entropy":
            if len(req.variables) != 1:
                raise UsageError("posterior_entropy takes exactly one variable")
            (v,) = _resolve(net, req.variables)
            evidence = _resolve_evidence(net, req.evidence)
            value = posterior_entropy(joint, v, evidence)
            given = ",".join(
                f"{net.name_of(i)}={b}" for i, b in sorted(evidence.items())
            )
            return schemas.MetricOut(
                name=f"posterior_entropy({net.name_of(v)}|{given})", value=value
            )
        if req.metric == "mutual_information":
            if len(req.variables) != 2:
                raise UsageError("mutual information takes exactly two variables")
            a, b = _resolve(net, req.variables)
            value = mutual_information(joint, a, b)
            return schemas.MetricOut(
                name=f"mutual_information({net.name_of(a)},{net.name_of(b)})",
                value=value,
            )
        if req.metric == "cdf":
            ranked = cdf_over_sorted_outcomes(joint)
            probs = {bits: p for bits, p in joint.items()}
            rows = [
                schemas.RankedRow(
                    outcome=outcome_str(bits), probability=probs[bits], cumulative=cum
                )
                for bits, cum in ranked
            ]
            return schemas.RankedOut(rows=rows)
        # top_k
        ranked = top_k(joint, req.k)
        rows = []
        cum = 0.0
        for bits, p in ranked:
            cum += p
            rows.append(
                schemas.RankedRow(outcome=outcome_str(bits), probability=p, cumulative=cum)
            )
        return schemas.RankedOut(rows=rows)

    @app.post("/metrics/fidelity", response_model=schemas.MetricOut)
    async def metric_fidelity(req: schemas.FidelityRequest):
        if set(req.p) != set(req.q):
            raise UsageError("fidelity inputs must share the same outcome set")
        from math import sqrt

        s = sum(sqrt(req.p[k] * req.q[k]) for k in req.p)
        return schemas.MetricOut(name="fidelity", value=s * s)

    @app.post("/perturb", response_model=schemas.PerturbOut)
    async def perturb(req: schemas.PerturbRequest):
        net = parse_model(req.model_text)
        report = perturb_experiment(net, req.noise, req.trials, req.seed)
        return schemas.PerturbOut(
            baseline_top3=list(report.baseline_top3),
            trials=[
                schemas.TrialOut(top3=list(t.top3), mass=t.mass) for t in report.trials
            ],
            agreement_fraction=report.agreement_fraction,
            min_mass=report.min_mass,
            mean_mass=report.mean_mass,
        )

    @app.post("/circuit", response_model=schemas.CircuitOut)
    async def circuit(req: schemas.ModelRequest):
        net = parse_model(req.model_text)
        text = dump_circuit(compile_network(net))
        return schemas.CircuitOut(lines=text.splitlines())

    return app

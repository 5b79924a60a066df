"""Robustness experiment: jitter CPT probabilities and watch the top-3 set.

Noise is applied to the classical CPT parameters (then recompiled), not to
raw amplitudes, so every perturbed state stays normalized by construction.
Draws follow a fixed order (variables in declaration order, rows ascending)
from a seeded PCG64 generator, making reports bit-identical across runs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bayesnet import BayesNet, CPT, _assignments
from .compiler import compile_network, simulate
from .errors import UsageError
from .format import outcome_str
from .inference import joint_distribution
from .metrics import top_k

MAX_NOISE = 0.2
TOP_N = 3


@dataclass(frozen=True)
class TrialResult:
    top3: tuple[str, ...]  # outcome strings, descending probability
    mass: float  # cumulative probability of the top-3 set


@dataclass(frozen=True)
class PerturbReport:
    baseline_top3: tuple[str, ...]
    trials: tuple[TrialResult, ...]
    agreement_fraction: float
    min_mass: float
    mean_mass: float


def _top3(net: BayesNet) -> TrialResult:
    joint = joint_distribution(simulate(compile_network(net)), net)
    ranked = top_k(joint, TOP_N)
    return TrialResult(
        tuple(outcome_str(bits) for bits, _ in ranked),
        float(sum(p for _, p in ranked)),
    )


def _perturbed(net: BayesNet, rng: np.random.Generator, eps: float) -> BayesNet:
    cpts = []
    for cpt in net.cpts:
        rows = {}
        for a in _assignments(len(cpt.parents)):
            u = float(rng.uniform(-eps, eps))
            rows[a] = min(max(cpt.rows[a] + u, 0.0), 1.0)
        cpts.append(CPT(cpt.parents, rows))
    return BayesNet(net.variables, tuple(cpts))


def perturb_experiment(
    net: BayesNet, noise: float, trials: int, seed: int
) -> PerturbReport:
    if not 0.0 <= noise <= MAX_NOISE:
        raise UsageError(f"noise must be in [0, {MAX_NOISE}], got {noise!r}")
    if trials < 1:
        raise UsageError(f"trials must be >= 1, got {trials}")
    if not 0 <= seed < 2**64:
        raise UsageError("seed must fit in 64 unsigned bits")
    baseline = _top3(net)
    rng = np.random.default_rng(seed)
    results = []
    for _ in range(trials):
        results.append(_top3(_perturbed(net, rng, noise)))
    agree = sum(1 for t in results if set(t.top3) == set(baseline.top3))
    masses = [t.mass for t in results]
    return PerturbReport(
        baseline_top3=baseline.top3,
        trials=tuple(results),
        agreement_fraction=agree / trials,
        min_mass=min(masses),
        mean_mass=sum(masses) / trials,
    )


def render_report(report: PerturbReport) -> str:
    lines = ["baseline_top3=" + ",".join(report.baseline_top3)]
    for i, t in enumerate(report.trials, start=1):
        lines.append(f"trial={i} top3={','.join(t.top3)} mass={t.mass:.12f}")
    lines.append(f"agreement_fraction={report.agreement_fraction:.9f}")
    lines.append(f"min_top3_mass={report.min_mass:.12f}")
    lines.append(f"mean_top3_mass={report.mean_mass:.12f}")
    return "\n".join(lines) + "\n"

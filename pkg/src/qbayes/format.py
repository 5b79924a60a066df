"""Deterministic text rendering shared by the CLI and golden-file tests.

Probabilities print with 12 decimals, metrics with 9; bit-strings render the
first scope variable leftmost. Fixed formatting keeps exports byte-stable.
"""
from __future__ import annotations

from .inference import Distribution

PROB_DECIMALS = 12
METRIC_DECIMALS = 9


def outcome_str(bits: tuple[int, ...]) -> str:
    return "".join(str(b) for b in bits)


def prob_str(p: float) -> str:
    return f"{p:.{PROB_DECIMALS}f}"


def metric_str(v: float) -> str:
    return f"{v:.{METRIC_DECIMALS}f}"


def distribution_rows(dist: Distribution) -> list[tuple[str, float]]:
    """(outcome string, probability) in ascending outcome order."""
    return [(outcome_str(bits), p) for bits, p in dist.items()]


def distribution_csv(dist: Distribution) -> str:
    lines = ["outcome,probability"]
    for outcome, p in distribution_rows(dist):
        lines.append(f"{outcome},{prob_str(p)}")
    return "\n".join(lines) + "\n"


def ranked_csv(rows: list[tuple[str, float, float]]) -> str:
    """CSV for cdf / top-k exports: outcome, probability, cumulative."""
    lines = ["outcome,probability,cumulative"]
    for outcome, p, cum in rows:
        lines.append(f"{outcome},{prob_str(p)},{prob_str(cum)}")
    return "\n".join(lines) + "\n"

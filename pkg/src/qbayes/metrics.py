"""Information-theoretic and distribution-shape metrics.

All logs are base 2; zero-probability terms are skipped rather than fed to
log2, so no NaN can propagate. Tie-breaks for cdf/top-k sort equal
probabilities by ascending bit-tuple, making every export reproducible.
"""
from __future__ import annotations

from math import log2

from .errors import UsageError
from .inference import Distribution, Evidence, marginal, posterior

_MI_CLAMP = 1e-12  # nonnegativity is a theorem; smaller negatives are noise


def entropy(dist: Distribution) -> float:
    """Shannon entropy in bits; 0*log2(0) taken as 0."""
    h = 0.0
    for p in dist.probs:
        if p > 0.0:
            h -= p * log2(p)
    return max(h, 0.0)


def posterior_entropy(dist: Distribution, query: int, evidence: Evidence) -> float:
    return entropy(posterior(dist, query, evidence))


def mutual_information(dist: Distribution, a: int, b: int) -> float:
    if a == b:
        raise UsageError("mutual information needs two distinct variables")
    pab = marginal(dist, [a, b])
    pa = marginal(pab, [a])
    pb = marginal(pab, [b])
    mi = 0.0
    for bits, pxy in pab.items():
        if pxy <= 0.0:
            continue
        px = pa.prob_of(bits[:1])
        py = pb.prob_of(bits[1:])
        mi += pxy * log2(pxy / (px * py))
    if mi < 0.0:
        if mi < -_MI_CLAMP:
            return mi  # genuinely negative would signal a bug; surface it
        mi = 0.0
    return mi


def fidelity(p: Distribution, q: Distribution) -> float:
    """(sum_i sqrt(p_i q_i))**2 over identical scopes."""
    if p.scope != q.scope:
        raise UsageError("fidelity requires identical scopes")
    import numpy as np

    s = float(np.sqrt(p.probs * q.probs).sum())
    return s * s


def _sorted_outcomes(dist: Distribution) -> list[tuple[tuple[int, ...], float]]:
    return sorted(dist.items(), key=lambda kv: (-kv[1], kv[0]))


def cdf_over_sorted_outcomes(
    dist: Distribution,
) -> list[tuple[tuple[int, ...], float]]:
    """Outcomes by descending probability with cumulative mass."""
    out = []
    cum = 0.0
    for bits, p in _sorted_outcomes(dist):
        cum += p
        out.append((bits, cum))
    return out


def top_k(dist: Distribution, k: int) -> list[tuple[tuple[int, ...], float]]:
    if k < 1:
        raise UsageError(f"k must be >= 1, got {k}")
    return _sorted_outcomes(dist)[:k]

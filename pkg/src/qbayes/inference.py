"""Distributions over variable subsets and symbolic post-selection queries.

A Distribution stores a dense probability table over its scope; entry index
bit j holds the value of scope[j]. Conditioning filters the table on the
evidence-consistent entries and renormalizes; nothing is ever mutated, so a
single extracted joint can serve any number of queries.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

from .bayesnet import BayesNet
from .errors import ImpossibleEvidenceError, UsageError
from .statevector import Statevector, probabilities

ZERO_MASS = 1e-300  # below this, evidence is treated as impossible

Evidence = Mapping[int, int]  # variable index -> observed bit


@dataclass(frozen=True, eq=False)
class Distribution:
    scope: tuple[int, ...]
    probs: np.ndarray  # length 2**len(scope); bit j of the index = scope[j]

    def __post_init__(self):
        if self.probs.shape != (1 << len(self.scope),):
            raise ValueError("probability table length must be 2**len(scope)")

    def prob_of(self, bits: tuple[int, ...]) -> float:
        idx = 0
        for j, b in enumerate(bits):
            idx |= (b & 1) << j
        return float(self.probs[idx])

    def items(self) -> Iterator[tuple[tuple[int, ...], float]]:
        """(bit-tuple over scope, probability), ascending display order.

        Display order reads the first scope variable as the most significant
        bit, matching the rendered bit-string convention.
        """
        m = len(self.scope)
        for disp in range(1 << m):
            bits = tuple((disp >> (m - 1 - j)) & 1 for j in range(m))
            yield bits, self.prob_of(bits)

    def total(self) -> float:
        return float(self.probs.sum())


def _positions(dist: Distribution, variables: list[int]) -> dict[int, int]:
    pos = {v: j for j, v in enumerate(dist.scope)}
    for v in variables:
        if v not in pos:
            raise UsageError(f"variable index {v} not in distribution scope")
    return pos


def joint_distribution(sv: Statevector, net: BayesNet) -> Distribution:
    if sv.n_qubits != net.n:
        raise UsageError(
            f"statevector has {sv.n_qubits} qubits but the network has {net.n} variables"
        )
    return Distribution(tuple(range(net.n)), probabilities(sv))


def marginal(dist: Distribution, variables: list[int]) -> Distribution:
    pos = _positions(dist, variables)
    idx = np.arange(dist.probs.size, dtype=np.int64)
    out_index = np.zeros_like(idx)
    for j, v in enumerate(variables):
        out_index |= ((idx >> pos[v]) & 1) << j
    out = np.zeros(1 << len(variables))
    np.add.at(out, out_index, dist.probs)
    return Distribution(tuple(variables), out)


def conditional(
    dist: Distribution, targets: list[int], evidence: Evidence
) -> Distribution:
    overlap = set(targets) & set(evidence)
    if overlap:
        names = ", ".join(str(v) for v in sorted(overlap))
        raise UsageError(f"targets overlap evidence variables: {names}")
    pos = _positions(dist, list(targets) + list(evidence))
    idx = np.arange(dist.probs.size, dtype=np.int64)
    sel = np.ones(dist.probs.size, dtype=bool)
    for v, bit in evidence.items():
        if bit not in (0, 1):
            raise UsageError(f"evidence bit must be 0 or 1, got {bit!r}")
        sel &= (idx >> pos[v]) & 1 == bit
    mass = float(dist.probs[sel].sum())
    if mass < ZERO_MASS:
        raise ImpossibleEvidenceError("evidence has zero probability mass")
    out_index = np.zeros(dist.probs.size, dtype=np.int64)
    for j, v in enumerate(targets):
        out_index |= ((idx >> pos[v]) & 1) << j
    out = np.zeros(1 << len(targets))
    np.add.at(out, out_index[sel], dist.probs[sel])
    return Distribution(tuple(targets), out / mass)


def posterior(dist: Distribution, query: int, evidence: Evidence) -> Distribution:
    """Two-entry distribution over {query=0, query=1} given the evidence."""
    return conditional(dist, [query], evidence)


def reorder(dist: Distribution, new_scope: list[int]) -> Distribution:
    """Same distribution with the scope permuted (for display ordering)."""
    if sorted(new_scope) != sorted(dist.scope) or len(new_scope) != len(dist.scope):
        raise UsageError("new scope must be a permutation of the old scope")
    pos = {v: j for j, v in enumerate(dist.scope)}
    idx = np.arange(dist.probs.size, dtype=np.int64)
    out_index = np.zeros_like(idx)
    for j, v in enumerate(new_scope):
        out_index |= ((idx >> pos[v]) & 1) << j
    out = np.zeros_like(dist.probs)
    out[out_index] = dist.probs
    return Distribution(tuple(new_scope), out)

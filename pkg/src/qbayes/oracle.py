"""Classical exact inference by full joint enumeration.

This is the ground-truth cross-check for the quantum path. `oracle_query`
deliberately conditions with its own plain-Python loop rather than reusing
the vectorized machinery in `inference`, keeping the two routes independent.
"""
from __future__ import annotations

import numpy as np

from .bayesnet import BayesNet, _assignments, validate
from .errors import CapacityError, ImpossibleEvidenceError, ModelError, UsageError
from .inference import Distribution, Evidence, ZERO_MASS
from .statevector import MAX_QUBITS


def enumerate_joint(net: BayesNet) -> Distribution:
    """P(a) = prod_v [p_v(a) if a_v=1 else 1-p_v(a)] over all 2**n assignments."""
    violations = validate(net)
    if violations:
        raise ModelError("invalid model:\n" + "\n".join(f"  - {v}" for v in violations))
    n = net.n
    if n > MAX_QUBITS:
        raise CapacityError(f"enumeration capped at {MAX_QUBITS} variables, got {n}")
    idx = np.arange(1 << n, dtype=np.int64)
    probs = np.ones(1 << n)
    for v, cpt in zip(net.variables, net.cpts):
        k = len(cpt.parents)
        table = np.array([cpt.rows[a] for a in _assignments(k)])
        row = np.zeros(idx.size, dtype=np.int64)
        for j, pq in enumerate(cpt.parents):
            row |= ((idx >> pq) & 1) << (k - 1 - j)
        p1 = table[row]
        bit = (idx >> v.index) & 1
        probs *= np.where(bit == 1, p1, 1.0 - p1)
    return Distribution(tuple(range(n)), probs)


def oracle_query(
    net: BayesNet, targets: list[int], evidence: Evidence
) -> Distribution:
    """Conditional over `targets` given `evidence`, straight from the joint."""
    overlap = set(targets) & set(evidence)
    if overlap:
        names = ", ".join(str(v) for v in sorted(overlap))
        raise UsageError(f"targets overlap evidence variables: {names}")
    joint = enumerate_joint(net)
    for v in list(targets) + list(evidence):
        if not 0 <= v < net.n:
            raise UsageError(f"variable index {v} out of range")
    out = [0.0] * (1 << len(targets))
    mass = 0.0
    for i, p in enumerate(joint.probs):
        if any((i >> v) & 1 != bit for v, bit in evidence.items()):
            continue
        mass += p
        key = 0
        for j, v in enumerate(targets):
            key |= ((i >> v) & 1) << j
        out[key] += p
    if mass < ZERO_MASS:
        raise ImpossibleEvidenceError("evidence has zero probability mass")
    return Distribution(tuple(targets), np.array(out) / mass)

"""Shared fixtures and independent oracles for the test suite.

The dense-matrix helpers build full 2^n x 2^n unitaries by tensor-product
extension (kron with identities / control projectors) and never touch the
optimized pairwise update path, so they can serve as an independent check.
"""
from __future__ import annotations

from math import cos, sin
from pathlib import Path

import numpy as np
import pytest

from qbayes.bayesnet import BayesNet, CPT, Variable, _assignments
from qbayes.statevector import Gate, RYGate

REPO_ROOT = Path(__file__).resolve().parent.parent
IDS_MODEL = REPO_ROOT / "src" / "qbayes" / "data" / "ids.qbn"

_I2 = np.eye(2)
_PROJ = {0: np.diag([1.0, 0.0]), 1: np.diag([0.0, 1.0])}


def ry_matrix(theta: float) -> np.ndarray:
    c, s = cos(theta / 2.0), sin(theta / 2.0)
    return np.array([[c, -s], [s, c]])


def expand(ops: dict[int, np.ndarray], n: int) -> np.ndarray:
    """kron-extend per-qubit operators with identities (qubit 0 = LSB)."""
    m = np.eye(1)
    for k in reversed(range(n)):
        m = np.kron(m, ops.get(k, _I2))
    return m


def gate_matrix(gate: Gate, n: int) -> np.ndarray:
    if isinstance(gate, RYGate):
        return expand({gate.target: ry_matrix(gate.theta)}, n)
    projectors = {q: _PROJ[bit] for q, bit in gate.controls}
    active = expand({**projectors, gate.target: ry_matrix(gate.theta)}, n)
    match = expand(projectors, n)
    return active + (np.eye(1 << n) - match)


def dense_apply(gates: list[Gate], n: int) -> np.ndarray:
    """Full matrix product chain applied to |0...0>."""
    state = np.zeros(1 << n)
    state[0] = 1.0
    for g in gates:
        state = gate_matrix(g, n) @ state
    return state


def random_net(
    rng: np.random.Generator,
    n_min: int = 2,
    n_max: int = 5,
    max_parents: int = 3,
) -> BayesNet:
    """Random DAG with uniform CPT entries; declaration order is shuffled
    relative to topological order so compilation must actually reorder."""
    n = int(rng.integers(n_min, n_max + 1))
    topo = list(rng.permutation(n))  # topo[t] = declaration index at level t
    level = {v: t for t, v in enumerate(topo)}
    cpts: list[CPT] = []
    for i in range(n):
        candidates = [v for v in range(n) if level[v] < level[i]]
        k = int(rng.integers(0, min(max_parents, len(candidates)) + 1))
        parents = tuple(
            int(v) for v in rng.choice(candidates, size=k, replace=False)
        ) if k else ()
        rows = {a: float(rng.uniform(0.0, 1.0)) for a in _assignments(k)}
        cpts.append(CPT(parents, rows))
    variables = tuple(Variable(f"V{i}", i) for i in range(n))
    return BayesNet(variables, tuple(cpts))


@pytest.fixture(scope="session")
def ids_path() -> Path:
    return IDS_MODEL


@pytest.fixture(scope="session")
def ids_text(ids_path) -> str:
    return ids_path.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def ids_net(ids_text):
    from qbayes.bayesnet import parse_model

    return parse_model(ids_text)

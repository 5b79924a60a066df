"""Compile a Bayesian network into a rotation-gate circuit and simulate it.

Each root variable gets one RY encoding its prior; each CPT row of a
dependent variable gets one controlled RY whose control polarities spell the
parent assignment. Gates are emitted in topological variable order, rows in
ascending assignment order, so compilation is fully deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import asin, sqrt

from .bayesnet import BayesNet, _assignments, topological_order, validate
from .errors import InvariantError, ModelError, UsageError
from .statevector import (
    NORM_TOL,
    ControlledRYGate,
    Gate,
    RYGate,
    Statevector,
    apply_gate,
    new_zero_state,
    validate_gate,
)

_P_JITTER = 1e-15  # tolerate representation jitter just past [0, 1]


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple[Gate, ...]


def angle_for_probability(p: float) -> float:
    """theta = 2*arcsin(sqrt(p)), so that sin^2(theta/2) = p."""
    if not (-_P_JITTER <= p <= 1.0 + _P_JITTER):
        raise UsageError(f"probability must be in [0, 1], got {p!r}")
    p = min(max(p, 0.0), 1.0)
    return 2.0 * asin(sqrt(p))


def compile_network(net: BayesNet) -> Circuit:
    violations = validate(net)
    if violations:
        raise ModelError("invalid model:\n" + "\n".join(f"  - {v}" for v in violations))
    gates: list[Gate] = []
    for i in topological_order(net):
        cpt = net.cpts[i]
        if not cpt.parents:
            gates.append(RYGate(i, angle_for_probability(cpt.rows[()])))
            continue
        for a in _assignments(len(cpt.parents)):
            controls = tuple(zip(cpt.parents, a))
            gates.append(
                ControlledRYGate(controls, i, angle_for_probability(cpt.rows[a]))
            )
    circuit = Circuit(net.n, tuple(gates))
    for g in circuit.gates:
        validate_gate(g, circuit.n_qubits)
    return circuit


def simulate(circuit: Circuit) -> Statevector:
    """Apply the gate list left-to-right to |0...0>; asserts normalization."""
    sv = new_zero_state(circuit.n_qubits)
    for gate in circuit.gates:
        sv = apply_gate(sv, gate)
    drift = abs(sv.norm_squared() - 1.0)
    if drift >= NORM_TOL:
        raise InvariantError(f"statevector norm drifted by {drift:.3e}")
    return sv


def dump_circuit(circuit: Circuit) -> str:
    """Text dump, one gate per line, theta with 17 significant digits."""
    lines = []
    for gate in circuit.gates:
        if isinstance(gate, RYGate):
            lines.append(f"RY q{gate.target} {gate.theta:.17g}")
        else:
            ctl = " ".join(
                f"{'+' if bit else '-'}q{q}" for q, bit in gate.controls
            )
            lines.append(f"CRY {ctl} q{gate.target} {gate.theta:.17g}")
    return "\n".join(lines) + ("\n" if lines else "")

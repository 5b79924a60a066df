"""Exact complex statevector with RY-family gate application.

Convention: qubit k occupies bit k of the basis index (qubit 0 is the least
significant bit). Amplitudes are stored as a flat complex128 array of length
2**n_qubits. All public operations are pure: they return a new Statevector
and never mutate their input.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import cos, sin

import numpy as np

from .errors import CapacityError, UsageError

MAX_QUBITS = 24  # 2**24 complex doubles ~ 256 MB

NORM_TOL = 1e-12


@dataclass(frozen=True)
class RYGate:
    target: int
    theta: float


@dataclass(frozen=True)
class ControlledRYGate:
    """RY on `target`, active only where every control qubit matches its bit.

    `controls` holds (qubit, required_bit) pairs; required_bit 1 is a positive
    control, 0 a negative control.
    """

    controls: tuple[tuple[int, int], ...]
    target: int
    theta: float


Gate = RYGate | ControlledRYGate


def validate_gate(gate: Gate, n_qubits: int) -> None:
    if isinstance(gate, RYGate):
        if not 0 <= gate.target < n_qubits:
            raise UsageError(f"gate target q{gate.target} out of range for {n_qubits} qubits")
        return
    qubits = [q for q, _ in gate.controls]
    if len(set(qubits)) != len(qubits):
        raise UsageError(f"duplicate control qubits in {sorted(qubits)}")
    if gate.target in qubits:
        raise UsageError(f"target q{gate.target} also appears as a control")
    for q, bit in gate.controls:
        if not 0 <= q < n_qubits:
            raise UsageError(f"control qubit q{q} out of range for {n_qubits} qubits")
        if bit not in (0, 1):
            raise UsageError(f"control bit must be 0 or 1, got {bit!r}")
    if not 0 <= gate.target < n_qubits:
        raise UsageError(f"gate target q{gate.target} out of range for {n_qubits} qubits")


class Statevector:
    """Length-2**n complex amplitude vector."""

    __slots__ = ("n_qubits", "amplitudes")

    def __init__(self, n_qubits: int, amplitudes: np.ndarray):
        if amplitudes.shape != (1 << n_qubits,):
            raise ValueError("amplitude array length must be 2**n_qubits")
        self.n_qubits = n_qubits
        self.amplitudes = amplitudes

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


def new_zero_state(n: int) -> Statevector:
    """|0...0> on n qubits."""
    if not 1 <= n <= MAX_QUBITS:
        raise CapacityError(f"qubit count must be in [1, {MAX_QUBITS}], got {n}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    return Statevector(n, amps)


def apply_ry(sv: Statevector, target: int, theta: float) -> Statevector:
    """RY(theta) on one qubit: a0' = c*a0 - s*a1, a1' = s*a0 + c*a1."""
    if not 0 <= target < sv.n_qubits:
        raise UsageError(f"target q{target} out of range for {sv.n_qubits} qubits")
    amps = sv.amplitudes.copy()
    idx = np.arange(amps.size, dtype=np.int64)
    i0 = idx[(idx >> target) & 1 == 0]
    i1 = i0 | (1 << target)
    c, s = cos(theta / 2.0), sin(theta / 2.0)
    a0 = amps[i0].copy()
    a1 = amps[i1]
    amps[i0] = c * a0 - s * a1
    amps[i1] = s * a0 + c * a1
    return Statevector(sv.n_qubits, amps)


def apply_controlled_ry(
    sv: Statevector,
    controls: tuple[tuple[int, int], ...],
    target: int,
    theta: float,
) -> Statevector:
    """RY(theta) restricted to the subspace where every control matches.

    Amplitudes outside the matching subspace are left bit-identical.
    """
    gate = ControlledRYGate(tuple(controls), target, theta)
    validate_gate(gate, sv.n_qubits)
    amps = sv.amplitudes.copy()
    idx = np.arange(amps.size, dtype=np.int64)
    sel = (idx >> target) & 1 == 0
    for q, bit in gate.controls:
        sel &= (idx >> q) & 1 == bit
    i0 = idx[sel]
    i1 = i0 | (1 << target)
    c, s = cos(theta / 2.0), sin(theta / 2.0)
    a0 = amps[i0].copy()
    a1 = amps[i1]
    amps[i0] = c * a0 - s * a1
    amps[i1] = s * a0 + c * a1
    return Statevector(sv.n_qubits, amps)


def apply_gate(sv: Statevector, gate: Gate) -> Statevector:
    if isinstance(gate, RYGate):
        return apply_ry(sv, gate.target, gate.theta)
    return apply_controlled_ry(sv, gate.controls, gate.target, gate.theta)


def probabilities(sv: Statevector) -> np.ndarray:
    """P(i) = |c_i|**2 for every basis index."""
    return np.abs(sv.amplitudes) ** 2

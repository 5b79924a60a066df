"""Quantum Bayesian inference engine.

Compiles binary-variable Bayesian networks into RY / controlled-RY circuits,
simulates the exact complex statevector, and answers joint, marginal,
conditional, and posterior queries by symbolic post-selection, cross-checked
against a classical enumeration oracle.
"""
from .bayesnet import BayesNet, CPT, Variable, load_model, parse_model, render_model, topological_order, validate
from .compiler import Circuit, angle_for_probability, compile_network, dump_circuit, simulate
from .errors import (
    CapacityError,
    ImpossibleEvidenceError,
    InvariantError,
    ModelError,
    QBayesError,
    UsageError,
)
from .inference import Distribution, conditional, joint_distribution, marginal, posterior, reorder
from .metrics import cdf_over_sorted_outcomes, entropy, fidelity, mutual_information, posterior_entropy, top_k
from .oracle import enumerate_joint, oracle_query
from .perturb import PerturbReport, perturb_experiment
from .statevector import (
    MAX_QUBITS,
    ControlledRYGate,
    RYGate,
    Statevector,
    apply_controlled_ry,
    apply_gate,
    apply_ry,
    new_zero_state,
    probabilities,
)

__version__ = "0.1.0"

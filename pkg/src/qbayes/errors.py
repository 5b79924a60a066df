"""Exception hierarchy shared across the engine.

The CLI / service map these onto exit codes and HTTP statuses:
input problems (model text, flags, variable names) -> 1 / 400,
inference failures (impossible evidence) -> 2 / 422,
internal invariant violations (norm drift) -> 3 / 500.
"""


class QBayesError(Exception):
    """Base class for all engine errors."""

    kind = "internal"


class ModelError(QBayesError):
    """Model text failed to parse or validate."""

    kind = "input"


class UsageError(QBayesError):
    """Bad selection: unknown variable, target/evidence overlap, bad parameter."""

    kind = "input"


class CapacityError(QBayesError):
    """Qubit count outside the supported range."""

    kind = "input"


class ImpossibleEvidenceError(QBayesError):
    """Conditioning on an assignment carrying zero probability mass."""

    kind = "inference"


class InvariantError(QBayesError):
    """An internal invariant (e.g. statevector normalization) was violated."""

    kind = "internal"

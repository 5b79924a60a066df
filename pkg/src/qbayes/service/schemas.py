"""Pydantic request/response models for the inference service."""
from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class ModelRequest(BaseModel):
    model_text: str


class QueryRequest(ModelRequest):
    targets: list[str] = Field(min_length=1)
    evidence: dict[str, int] = Field(default_factory=dict)
    engine: Literal["quantum", "classical", "both"] = "quantum"


class DistRequest(ModelRequest):
    kind: Literal["joint", "marginal", "conditional"]
    variables: list[str] = Field(default_factory=list)
    evidence: dict[str, int] = Field(default_factory=dict)
    order: Optional[list[str]] = None


class MetricsRequest(ModelRequest):
    metric: Literal["entropy", "posterior_entropy", "mutual_information", "cdf", "top_k"]
    variables: list[str] = Field(default_factory=list)
    evidence: dict[str, int] = Field(default_factory=dict)
    k: int = 5


class FidelityRequest(BaseModel):
    p: dict[str, float]
    q: dict[str, float]


class PerturbRequest(ModelRequest):
    noise: float
    trials: int
    seed: int = 0


class DistributionOut(BaseModel):
    scope: list[str]
    entries: list[Entry]


class Entry(BaseModel):
    outcome: str
    probability: float


class QueryOut(BaseModel):
    quantum: Optional[DistributionOut] = None
    classical: Optional[DistributionOut] = None
    max_abs_diff: Optional[float] = None


class MetricOut(BaseModel):
    name: str
    value: float


class RankedRow(BaseModel):
    outcome: str
    probability: float
    cumulative: float


class RankedOut(BaseModel):
    rows: list[RankedRow]


class TrialOut(BaseModel):
    top3: list[str]
    mass: float


class PerturbOut(BaseModel):
    baseline_top3: list[str]
    trials: list[TrialOut]
    agreement_fraction: float
    min_mass: float
    mean_mass: float


class CircuitOut(BaseModel):
    lines: list[str]


class ValidateOut(BaseModel):
    ok: bool
    violations: list[str]
    variables: list[str]


DistributionOut.model_rebuild()

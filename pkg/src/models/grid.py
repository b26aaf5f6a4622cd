"""Parameter grids, per-setting results and their summaries."""

import math
from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.special import logit

from .config import PARAMETER_NAMES, Coupling, OutcomeKind

RESULT_COLUMNS: tuple[str, ...] = (
    "index",
    *PARAMETER_NAMES,
    "true_nde",
    "true_nie",
    "est_nde",
    "est_nie",
    "bias_nde",
    "bias_nie",
    "bounds_lower",
    "bounds_upper",
    "method",
)

SWEEP_COLUMNS: tuple[str, ...] = ("beta5", "beta3", "beta4", "bias_nde")


def _span(lo: float, hi: float, num: int = 4) -> tuple[float, ...]:
    return tuple(float(v) for v in np.linspace(lo, hi, num))


# Mediator lists are shared by both outcome families.
_MEDIATOR_VALUES: dict[str, tuple[float, ...]] = {
    "alpha0": _span(logit(0.3), logit(0.8)),
    "alpha1": _span(math.log(0.7), math.log(2.5)),
    "alpha2": _span(math.log(0.3), math.log(0.9)),
}

BINARY_DEFAULT_VALUES: dict[str, tuple[float, ...]] = {
    **_MEDIATOR_VALUES,
    "beta0": _span(logit(0.3), logit(0.6)),
    "beta1": _span(math.log(0.5), math.log(3.0)),
    "beta2": _span(math.log(1.0), math.log(3.5)),
    "beta3": _span(math.log(0.5), math.log(0.9)),
    "beta4": _span(math.log(0.7), math.log(1.4)) + (0.0,),
    "beta5": _span(math.log(1.0), math.log(2.0)),
}

CONTINUOUS_DEFAULT_VALUES: dict[str, tuple[float, ...]] = {
    **_MEDIATOR_VALUES,
    "beta0": _span(40.0, 60.0),
    "beta1": _span(-10.0, 10.0),
    "beta2": _span(-20.0, 10.0),
    "beta3": _span(-15.0, -5.0),
    "beta4": _span(-20.0, -10.0),
    "beta5": _span(-15.0, 15.0),
}


def default_values(outcome_kind: OutcomeKind) -> dict[str, tuple[float, ...]]:
    """Default per-parameter value lists for an outcome family."""
    if OutcomeKind(outcome_kind) == OutcomeKind.BINARY:
        return dict(BINARY_DEFAULT_VALUES)
    return dict(CONTINUOUS_DEFAULT_VALUES)


class GridMethod(str, Enum):
    """How truth and estimand are evaluated per setting."""
    QUADRATURE = "quadrature"
    MONTE_CARLO = "monte_carlo"


class ParameterLists(BaseModel):
    """Per-parameter value lists; a missing list falls back to the defaults."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    alpha0: Optional[list[float]] = Field(None, min_length=1)
    alpha1: Optional[list[float]] = Field(None, min_length=1)
    alpha2: Optional[list[float]] = Field(None, min_length=1)
    beta0: Optional[list[float]] = Field(None, min_length=1)
    beta1: Optional[list[float]] = Field(None, min_length=1)
    beta2: Optional[list[float]] = Field(None, min_length=1)
    beta3: Optional[list[float]] = Field(None, min_length=1)
    beta4: Optional[list[float]] = Field(None, min_length=1)
    beta5: Optional[list[float]] = Field(None, min_length=1)


class GridSpec(BaseModel):
    """An exhaustive sweep over structural parameter values."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    outcome_kind: OutcomeKind
    values: ParameterLists = Field(default_factory=ParameterLists)
    method: GridMethod = GridMethod.QUADRATURE
    mc_n: int = Field(1_000_000, ge=1, description="Units per setting for monte_carlo")
    base_seed: int = Field(2470, ge=0, lt=2**64)
    parallelism: int = Field(1, ge=1)
    u_mean: float = 2.0
    u_sd: float = Field(1.0, gt=0)
    y_noise_sd: float = Field(1.0, gt=0)
    coupling: Coupling = Coupling.SHARED_NOISE
    nodes: Optional[int] = Field(None, ge=8, description="Quadrature nodes; None uses the env default")
    allow_large: bool = Field(False, description="Permit grids above the size cap")
    allow_full_mc: bool = Field(False, description="Permit monte_carlo above the MC gate")

    def resolved_values(self) -> dict[str, tuple[float, ...]]:
        """Value lists in PARAMETER_NAMES order with defaults filled in."""
        defaults = default_values(self.outcome_kind)
        given = self.values.model_dump()
        return {
            name: tuple(float(v) for v in given[name]) if given[name] is not None else defaults[name]
            for name in PARAMETER_NAMES
        }

    @property
    def size(self) -> int:
        return math.prod(len(v) for v in self.resolved_values().values())

    def model_settings(self) -> dict:
        """Non-coefficient ModelConfig fields shared by every setting."""
        return {
            "outcome_kind": self.outcome_kind,
            "u_mean": self.u_mean,
            "u_sd": self.u_sd,
            "y_noise_sd": self.y_noise_sd,
            "coupling": self.coupling,
        }


class GridResultRow(BaseModel):
    """Truth, estimand, bias and bounds for one grid setting."""

    model_config = ConfigDict(frozen=True)

    index: int = Field(ge=0)
    alpha0: float
    alpha1: float
    alpha2: float
    beta0: float
    beta1: float
    beta2: float
    beta3: float
    beta4: float
    beta5: float
    true_nde: float
    true_nie: float
    est_nde: float
    est_nie: float
    bias_nde: float
    bias_nie: float
    bounds_lower: Optional[float] = None
    bounds_upper: Optional[float] = None
    method: GridMethod

    def parameters(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in PARAMETER_NAMES}


class BiasStratum(BaseModel):
    """Bias range within one subset of grid rows."""

    model_config = ConfigDict(frozen=True)

    label: str
    count: int
    bias_nde_min: float
    bias_nde_max: float
    max_abs_bias_nde: float
    worst: GridResultRow


class WorstCaseRow(BaseModel):
    """One line of the worst-case table: NDE, estimand, bias and bounds."""

    model_config = ConfigDict(frozen=True)

    label: str
    index: int
    true_nde: float
    est_nde: float
    bias_nde: float
    bounds_lower: Optional[float] = None
    bounds_upper: Optional[float] = None
    parameters: dict[str, float]


class InteractionCell(BaseModel):
    """max |bias_nde| at one (beta4, beta5) grid level."""

    model_config = ConfigDict(frozen=True)

    beta4: float
    beta5: float
    max_abs_bias_nde: float
    count: int


class BiasSummary(BaseModel):
    """Bias ranges, worst-case settings and the interaction cross-tabulation."""

    model_config = ConfigDict(frozen=True)

    n_rows: int
    bias_nde_min: float
    bias_nde_max: float
    bias_nie_min: float
    bias_nie_max: float
    argmin: GridResultRow
    argmax: GridResultRow
    strata: list[BiasStratum]
    worst_cases: list[WorstCaseRow]
    interaction: list[InteractionCell]


class SweepRow(BaseModel):
    """One point of the bias-versus-beta5 sweep."""

    model_config = ConfigDict(frozen=True)

    beta5: float
    beta3: float
    beta4: float
    bias_nde: float

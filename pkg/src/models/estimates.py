"""Effect estimates, sufficient statistics and bounds."""

from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .config import OutcomeKind


class EstimationMethod(str, Enum):
    """How an EffectEstimates record was produced."""
    MC_TRUTH = "mc_truth"
    QUADRATURE_TRUTH = "quadrature_truth"
    GFORMULA = "gformula"
    LSEM = "lsem"
    INTERVENTIONAL = "interventional"
    SEPARABLE = "separable"


class EffectEstimates(BaseModel):
    """Natural direct, indirect and total effects of A=1 versus A=0."""

    model_config = ConfigDict(frozen=True)

    nde: float
    nie: float
    te: float
    ey_nested: float = Field(description="E{Y(1, M(0))}")
    method: EstimationMethod
    n_or_nodes: int = Field(ge=0, description="Sample size or quadrature nodes")
    mc_se: Optional[float] = Field(None, description="Monte Carlo standard error of nde")
    mc_se_nie: Optional[float] = None
    mc_se_te: Optional[float] = None
    ey_treated: Optional[float] = Field(None, description="E{Y(1, M(1))}")
    ey_control: Optional[float] = Field(None, description="E{Y(0, M(0))}")

    @classmethod
    def from_means(
        cls,
        ey_control: float,
        ey_nested: float,
        ey_treated: float,
        method: EstimationMethod,
        n_or_nodes: int,
        **extra: Optional[float],
    ) -> "EffectEstimates":
        """Assemble NDE/NIE/TE from E{Y(0,M(0))}, E{Y(1,M(0))} and E{Y(1,M(1))}."""
        nde = ey_nested - ey_control
        nie = ey_treated - ey_nested
        return cls(
            nde=nde,
            nie=nie,
            te=nde + nie,
            ey_nested=ey_nested,
            method=method,
            n_or_nodes=n_or_nodes,
            ey_treated=ey_treated,
            ey_control=ey_control,
            **extra,
        )

    def as_lines(self) -> list[tuple[str, object]]:
        """Ordered key/value pairs for text reports."""
        pairs: list[tuple[str, object]] = [
            ("nde", self.nde),
            ("nie", self.nie),
            ("te", self.te),
            ("ey_nested", self.ey_nested),
            ("method", self.method.value),
            ("n_or_nodes", self.n_or_nodes),
        ]
        for name in ("mc_se", "mc_se_nie", "mc_se_te", "ey_treated", "ey_control"):
            value = getattr(self, name)
            if value is not None:
                pairs.append((name, value))
        return pairs


class InterventionalEffects(BaseModel):
    """Standardized (interventional) and organic effects with their checks.

    ey_random[a][a'] is E{Y(a, M ~ p_a')}, the outcome under a mediator drawn
    from the marginal law of M(a') independently of the unit.
    """

    model_config = ConfigDict(frozen=True)

    de_st: float
    ie_st: float
    de_org: float
    ie_org: float
    te: float = Field(description="E{Y(1)} - E{Y(0)}")
    te_check: tuple[float, float] = Field(description="E{Y(a, M~p_a)} - E{Y(a)} for a = 0, 1")
    te_check_se: tuple[float, float]
    ey_random: tuple[tuple[float, float], tuple[float, float]]
    ey_factual: tuple[float, float] = Field(description="E{Y(a)} for a = 0, 1")
    p_m1: tuple[float, float] = Field(description="P(M(a) = 1) used to draw M")
    mc_se: float = Field(description="Monte Carlo standard error of de_st")
    n: int


class SeparableEffects(BaseModel):
    """Separable direct and indirect effects from component interventions."""

    model_config = ConfigDict(frozen=True)

    de_sep: float
    ie_sep: float
    te: float
    ey_components: tuple[tuple[float, float], tuple[float, float]] = Field(
        description="E{Y(A^Y=a_y, A^M=a_m)} indexed [a_y][a_m]"
    )
    n: int


class OracleReport(BaseModel):
    """Population truth, g-formula estimand and their gap for one configuration."""

    model_config = ConfigDict(frozen=True)

    outcome_kind: OutcomeKind
    gamma: float = Field(ge=0.0, le=1.0, description="P(M(0) = 1)")
    psi: float = Field(description="E{U M(0)}")
    eta: float = Field(description="E{Y(1, M(0))}")
    eta_prime: float = Field(description="g-formula estimand of E{Y(1, M(0))}")
    truth: EffectEstimates
    estimand: EffectEstimates
    bias_nde: float
    bias_nie: float
    nodes: int


class CellStats(BaseModel):
    """Per-(a, m) sample means and mediator frequencies.

    Empty cells carry NaN means; empty_cells lists them.
    """

    model_config = ConfigDict(frozen=True)

    mean_y: tuple[tuple[float, float], tuple[float, float]]
    p_m1_given_a: tuple[float, float]
    mean_y_given_a: tuple[float, float]
    counts: tuple[tuple[int, int], tuple[int, int]]

    @property
    def empty_cells(self) -> list[tuple[int, int]]:
        return [(a, m) for a in (0, 1) for m in (0, 1) if self.counts[a][m] == 0]

    @property
    def n(self) -> int:
        return int(sum(sum(row) for row in self.counts))

    def p_m_given_a(self, m: int, a: int) -> float:
        p1 = self.p_m1_given_a[a]
        return p1 if m == 1 else 1.0 - p1

    @classmethod
    def from_sums(cls, counts: np.ndarray, sums: np.ndarray) -> "CellStats":
        """Build from 2x2 arrays of cell counts and outcome sums."""
        counts = np.asarray(counts, dtype=np.int64).reshape(2, 2)
        sums = np.asarray(sums, dtype=float).reshape(2, 2)
        with np.errstate(invalid="ignore", divide="ignore"):
            mean_y = np.where(counts > 0, sums / np.maximum(counts, 1), np.nan)
            arm = counts.sum(axis=1)
            p_m1 = np.where(arm > 0, counts[:, 1] / np.maximum(arm, 1), np.nan)
            mean_arm = np.where(arm > 0, sums.sum(axis=1) / np.maximum(arm, 1), np.nan)
        return cls(
            mean_y=tuple(tuple(float(v) for v in row) for row in mean_y),
            p_m1_given_a=tuple(float(v) for v in p_m1),
            mean_y_given_a=tuple(float(v) for v in mean_arm),
            counts=tuple(tuple(int(v) for v in row) for row in counts),
        )


class LsemCoefficients(BaseModel):
    """Linear structural equations with an intermediate confounder L.

    L = alpha_0 + alpha_A A + e_L
    M = beta_0 + beta_A A + beta_L L + e_M
    Y = theta_0 + theta_A A + theta_L L + theta_M M + e_Y
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    alpha_0: float = 0.0
    alpha_A: float
    beta_0: float = 0.0
    beta_A: float
    beta_L: float
    theta_0: float = 0.0
    theta_A: float
    theta_L: float
    theta_M: float
    std_errors: Optional[dict[str, float]] = Field(
        None, description="OLS standard errors keyed by coefficient name, when fitted"
    )


class BoundsInput(BaseModel):
    """The five observable quantities the NDE bounds depend on."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    p_m0_a0: float = Field(ge=0.0, le=1.0, description="P(M=0 | A=0)")
    p_m1_a0: float = Field(ge=0.0, le=1.0, description="P(M=1 | A=0)")
    ey_a1_m0: float = Field(ge=0.0, le=1.0, description="E[Y | A=1, M=0]")
    ey_a1_m1: float = Field(ge=0.0, le=1.0, description="E[Y | A=1, M=1]")
    ey_a0: float = Field(ge=0.0, le=1.0, description="E[Y | A=0]")

    @model_validator(mode="after")
    def _mediator_law_sums_to_one(self) -> "BoundsInput":
        if abs(self.p_m0_a0 + self.p_m1_a0 - 1.0) > 1e-9:
            raise ValueError("p_m0_a0 + p_m1_a0 must equal 1")
        return self


class NdeBounds(BaseModel):
    """Sharp nonparametric interval for the NDE of A=1 versus A=0."""

    model_config = ConfigDict(frozen=True)

    lower: float = Field(ge=-1.0, le=1.0)
    upper: float = Field(ge=-1.0, le=1.0)
    informative: bool
    contains_zero: bool

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float, tol: float = 1e-12) -> bool:
        return self.lower - tol <= value <= self.upper + tol

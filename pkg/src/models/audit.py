"""Assumption-audit reports and identification scenarios."""

import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, computed_field

DEFAULT_THRESHOLD = 5.0


class DiagnosticStatistic(BaseModel):
    """An association statistic with its Monte Carlo standard error.

    A check fails when |statistic| exceeds threshold standard errors.
    """

    model_config = ConfigDict(frozen=True)

    name: str
    statistic: float
    std_error: float = Field(ge=0.0)
    threshold: float = Field(DEFAULT_THRESHOLD, gt=0.0)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def z(self) -> float:
        if self.statistic == 0.0:
            return 0.0
        if self.std_error == 0.0:
            return math.copysign(math.inf, self.statistic)
        return self.statistic / self.std_error

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return abs(self.z) <= self.threshold

    def with_threshold(self, threshold: float) -> "DiagnosticStatistic":
        return self.model_copy(update={"threshold": threshold})


class AuditReport(BaseModel):
    """Cross-world, single-world and alternative-assumption diagnostics.

    cw_assoc and de_assump_gap are keyed by the mediator level m.
    """

    model_config = ConfigDict(frozen=True)

    cw_assoc: dict[int, DiagnosticStatistic]
    sw_assoc: dict[str, DiagnosticStatistic]
    b_variation: float = Field(ge=0.0)
    de_assump_gap: dict[int, DiagnosticStatistic]
    n: int
    threshold: float = DEFAULT_THRESHOLD
    b_tolerance: float = Field(1e-9, ge=0.0, description="b_variation at or below this passes")

    @computed_field  # type: ignore[prop-decorator]
    @property
    def flags(self) -> dict[str, bool]:
        """Per-check pass/fail."""
        flags = {f"cross_world_m{m}": s.passed for m, s in sorted(self.cw_assoc.items())}
        flags.update({f"single_world_{k}": s.passed for k, s in self.sw_assoc.items()})
        flags["no_interaction"] = self.b_variation <= self.b_tolerance
        flags.update(
            {f"direct_effect_m{m}": s.passed for m, s in sorted(self.de_assump_gap.items())}
        )
        return flags

    @property
    def single_world_passed(self) -> bool:
        return all(s.passed for s in self.sw_assoc.values())

    @property
    def cross_world_passed(self) -> bool:
        return all(s.passed for s in self.cw_assoc.values())


class ScenarioFlags(BaseModel):
    """Structural features of a mediation scenario."""

    model_config = ConfigDict(frozen=True)

    has_intermediate_confounder: bool = False
    has_crossworld_confounder: bool = False
    lsem_assumed: bool = False
    all_binary: bool = False


class IdentificationStrategy(str, Enum):
    """Route by which the NDE can be learned from observed data."""
    POINT_NONPARAMETRIC = "point_nonparametric"
    POINT_LSEM = "point_lsem"
    BOUNDS_ONLY = "bounds_only"
    NOT_IDENTIFIED = "not_identified"


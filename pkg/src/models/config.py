"""Structural model configuration."""

from enum import Enum
from typing import Any, Mapping, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .errors import InvalidConfig

PARAMETER_NAMES: tuple[str, ...] = (
    "alpha0",
    "alpha1",
    "alpha2",
    "beta0",
    "beta1",
    "beta2",
    "beta3",
    "beta4",
    "beta5",
)


class OutcomeKind(str, Enum):
    """Outcome family of the structural model."""
    CONTINUOUS = "continuous"
    BINARY = "binary"


class Coupling(str, Enum):
    """How noise is shared across the counterfactual worlds of one unit."""
    SHARED_NOISE = "shared_noise"
    INDEPENDENT_REDRAW = "independent_redraw"


class ModelConfig(BaseModel):
    """Parameters of the mediator and outcome structural equations.

    Mediator:  M(a) = 1 iff -eps_M < alpha0 + alpha1*a + alpha2*(1-a)*U
    Outcome:   Y(a,m) = beta0 + beta1*a + beta2*m + beta3*a*U + beta4*a*m + beta5*a*m*U
               plus N(0, y_noise_sd) noise (continuous), or thresholded against a
               standard logistic draw (binary).
    """

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        allow_inf_nan=False,
        json_schema_extra={
            "example": {
                "outcome_kind": "binary",
                "alpha0": -3.5,
                "alpha1": 0.5,
                "alpha2": 2.5,
                "beta0": -4.0,
                "beta1": -1.0,
                "beta2": 3.5,
                "beta3": 3.25,
                "beta4": 3.0,
                "beta5": -5.0,
            }
        },
    )

    outcome_kind: OutcomeKind
    alpha0: float = Field(0.0, description="Mediator intercept")
    alpha1: float = Field(0.0, description="Mediator coefficient on A")
    alpha2: float = Field(0.0, description="Mediator coefficient on (1-A)U")
    beta0: float = Field(0.0, description="Outcome intercept")
    beta1: float = Field(0.0, description="Outcome coefficient on A")
    beta2: float = Field(0.0, description="Outcome coefficient on M")
    beta3: float = Field(0.0, description="Outcome coefficient on AU")
    beta4: float = Field(0.0, description="Outcome coefficient on AM")
    beta5: float = Field(0.0, description="Outcome coefficient on AMU")
    u_mean: float = Field(2.0, description="Mean of the latent U")
    u_sd: float = Field(1.0, gt=0, description="Standard deviation of the latent U")
    y_noise_sd: float = Field(
        1.0, gt=0, description="Residual sd of continuous Y; ignored for binary Y"
    )
    coupling: Coupling = Coupling.SHARED_NOISE

    @property
    def is_binary(self) -> bool:
        return self.outcome_kind == OutcomeKind.BINARY

    def parameter_vector(self) -> np.ndarray:
        """The nine structural coefficients in PARAMETER_NAMES order."""
        return np.array([getattr(self, name) for name in PARAMETER_NAMES], dtype=float)

    def parameters(self) -> dict[str, float]:
        return {name: float(getattr(self, name)) for name in PARAMETER_NAMES}

    def with_parameters(self, **updates: float) -> "ModelConfig":
        """Copy with some coefficients replaced, re-validated."""
        unknown = set(updates) - set(PARAMETER_NAMES)
        if unknown:
            raise InvalidConfig(f"unknown parameters: {sorted(unknown)}")
        return validate_config({**self.model_dump(), **updates})

    @classmethod
    def from_vector(cls, vector: Sequence[float], **settings: Any) -> "ModelConfig":
        if len(vector) != len(PARAMETER_NAMES):
            raise InvalidConfig(f"expected {len(PARAMETER_NAMES)} parameters, got {len(vector)}")
        values = {name: float(v) for name, v in zip(PARAMETER_NAMES, vector)}
        return validate_config({**settings, **values})


def describe_validation_error(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        location = ".".join(str(p) for p in item["loc"]) or "<root>"
        parts.append(f"{location}: {item['msg']}")
    return "; ".join(parts)


def validate_config(raw: ModelConfig | Mapping[str, Any]) -> ModelConfig:
    """Validate a model configuration and fill in defaults.

    Args:
        raw: A ModelConfig (possibly built without validation) or a plain mapping.

    Returns:
        A validated, frozen ModelConfig.

    Raises:
        InvalidConfig: non-positive u_sd / y_noise_sd or non-finite coefficients.
    """
    data = raw.model_dump() if isinstance(raw, ModelConfig) else dict(raw)
    try:
        return ModelConfig.model_validate(data)
    except ValidationError as e:
        raise InvalidConfig(f"invalid model config: {describe_validation_error(e)}") from e

"""Counterfactual units, factual rows and the array containers built from them."""

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from .config import OutcomeKind
from .errors import InvalidInput

COUNTERFACTUAL_COLUMNS: tuple[str, ...] = (
    "cf_u",
    "cf_m0",
    "cf_m1",
    "cf_y00",
    "cf_y01",
    "cf_y10",
    "cf_y11",
)


class CounterfactualUnit(BaseModel):
    """One unit's latent draws and its full counterfactual table.

    y_am[a][m] holds Y(a, m). Under independent_redraw coupling eps_m and
    eps_y are the draws used for M(0) and Y(0, 0).
    """

    model_config = ConfigDict(frozen=True)

    u: float
    eps_m: float
    eps_y: float
    m0: int = Field(ge=0, le=1)
    m1: int = Field(ge=0, le=1)
    y_am: tuple[tuple[float, float], tuple[float, float]]

    def mediator(self, a: int) -> int:
        return self.m1 if a else self.m0

    def nested(self, a: int, a_prime: int) -> float:
        """Y(a, M(a'))."""
        return self.y_am[a][self.mediator(a_prime)]


class ObservedRow(BaseModel):
    """A factual (A, M, Y) observation."""

    model_config = ConfigDict(frozen=True)

    a: int = Field(ge=0, le=1)
    m: int = Field(ge=0, le=1)
    y: float


def infer_outcome_kind(y: np.ndarray) -> OutcomeKind:
    """Binary iff every outcome value is 0 or 1."""
    y = np.asarray(y, dtype=float)
    if y.size and np.all((y == 0.0) | (y == 1.0)):
        return OutcomeKind.BINARY
    return OutcomeKind.CONTINUOUS


def _binary_column(values: np.ndarray, name: str) -> np.ndarray:
    values = np.asarray(values)
    if values.ndim != 1:
        raise InvalidInput(f"{name} must be one-dimensional")
    if values.size and not np.all((values == 0) | (values == 1)):
        raise InvalidInput(f"{name} must contain only 0 and 1")
    return values.astype(np.int8)


@dataclass(frozen=True)
class ObservedDataset:
    """Factual (A, M, Y) rows held column-wise."""

    a: np.ndarray
    m: np.ndarray
    y: np.ndarray
    outcome_kind: OutcomeKind = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        a = _binary_column(self.a, "A")
        m = _binary_column(self.m, "M")
        y = np.asarray(self.y, dtype=float)
        if not (a.shape == m.shape == y.shape):
            raise InvalidInput("A, M and Y must have the same length")
        if not np.all(np.isfinite(y)):
            raise InvalidInput("Y must be finite")
        kind = self.outcome_kind or infer_outcome_kind(y)
        if kind == OutcomeKind.BINARY and infer_outcome_kind(y) != OutcomeKind.BINARY and y.size:
            raise InvalidInput("binary outcome requires Y in {0, 1}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "outcome_kind", OutcomeKind(kind))

    def __len__(self) -> int:
        return int(self.y.shape[0])

    @property
    def is_binary(self) -> bool:
        return self.outcome_kind == OutcomeKind.BINARY

    @classmethod
    def from_frame(
        cls, frame: pd.DataFrame, outcome_kind: Optional[OutcomeKind] = None
    ) -> "ObservedDataset":
        return cls(
            frame["A"].to_numpy(), frame["M"].to_numpy(), frame["Y"].to_numpy(), outcome_kind
        )

    def to_frame(self) -> pd.DataFrame:
        y = self.y.astype(np.int64) if self.is_binary else self.y
        return pd.DataFrame({"A": self.a.astype(np.int64), "M": self.m.astype(np.int64), "Y": y})


@dataclass(frozen=True)
class CounterfactualBatch:
    """Counterfactual units held as arrays; y[i, a, m] is Y_i(a, m)."""

    outcome_kind: OutcomeKind
    u: np.ndarray
    eps_m: np.ndarray
    eps_y: np.ndarray
    m0: np.ndarray
    m1: np.ndarray
    y: np.ndarray

    def __post_init__(self) -> None:
        n = self.u.shape[0]
        if self.y.shape != (n, 2, 2):
            raise InvalidInput(f"outcome table must have shape ({n}, 2, 2), got {self.y.shape}")
        for name in ("eps_m", "eps_y", "m0", "m1"):
            if getattr(self, name).shape != (n,):
                raise InvalidInput(f"{name} must have shape ({n},)")

    def __len__(self) -> int:
        return int(self.u.shape[0])

    @property
    def is_binary(self) -> bool:
        return self.outcome_kind == OutcomeKind.BINARY

    def mediator(self, a: int) -> np.ndarray:
        return self.m1 if a else self.m0

    def outcome(self, a: int, m: int) -> np.ndarray:
        return self.y[:, a, m]

    def nested(self, a: int, a_prime: int) -> np.ndarray:
        """Y(a, M(a')) for every unit."""
        return self.y[np.arange(len(self)), a, self.mediator(a_prime)]

    def project(self, assignments: np.ndarray) -> ObservedDataset:
        """Factual rows by consistency: M = M(A), Y = Y(A, M)."""
        a = np.asarray(assignments).astype(np.int8)
        if a.shape != (len(self),):
            raise InvalidInput("one assignment per unit is required")
        m = np.where(a == 1, self.m1, self.m0).astype(np.int8)
        y = self.y[np.arange(len(self)), a, m]
        return ObservedDataset(a, m, y, self.outcome_kind)

    def unit(self, i: int) -> CounterfactualUnit:
        return CounterfactualUnit(
            u=float(self.u[i]),
            eps_m=float(self.eps_m[i]),
            eps_y=float(self.eps_y[i]),
            m0=int(self.m0[i]),
            m1=int(self.m1[i]),
            y_am=(
                (float(self.y[i, 0, 0]), float(self.y[i, 0, 1])),
                (float(self.y[i, 1, 0]), float(self.y[i, 1, 1])),
            ),
        )

    @classmethod
    def from_units(
        cls, units: Sequence[CounterfactualUnit], outcome_kind: Optional[OutcomeKind] = None
    ) -> "CounterfactualBatch":
        y = np.array([u.y_am for u in units], dtype=float).reshape(-1, 2, 2)
        return cls(
            outcome_kind=outcome_kind or infer_outcome_kind(y.ravel()),
            u=np.array([u.u for u in units], dtype=float),
            eps_m=np.array([u.eps_m for u in units], dtype=float),
            eps_y=np.array([u.eps_y for u in units], dtype=float),
            m0=np.array([u.m0 for u in units], dtype=np.int8),
            m1=np.array([u.m1 for u in units], dtype=np.int8),
            y=y,
        )

    def counterfactual_frame(self) -> pd.DataFrame:
        """Simulation-only cf_ columns."""
        cast = (lambda v: v.astype(np.int64)) if self.is_binary else (lambda v: v)
        return pd.DataFrame(
            {
                "cf_u": self.u,
                "cf_m0": self.m0.astype(np.int64),
                "cf_m1": self.m1.astype(np.int64),
                "cf_y00": cast(self.y[:, 0, 0]),
                "cf_y01": cast(self.y[:, 0, 1]),
                "cf_y10": cast(self.y[:, 1, 0]),
                "cf_y11": cast(self.y[:, 1, 1]),
            }
        )

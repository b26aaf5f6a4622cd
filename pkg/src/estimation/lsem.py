"""Linear structural equations with an intermediate confounder L.

Under the linear model the contrast L(a) - L(a') = alpha_A (a - a') is the
same for every unit, which identifies

    NDE = (theta_A + theta_L alpha_A)(a - a')
    NIE = (theta_M beta_A + theta_M beta_L alpha_A)(a - a')
"""

from dataclasses import dataclass

import numpy as np
import pandas as pd

from ..models.errors import InvalidInput, RankDeficient
from ..models.estimates import EffectEstimates, EstimationMethod, LsemCoefficients
from ..simulation.effects import Moments
from ..simulation.sampling import draw_assignments
from ..simulation.streams import make_stream
from ..utils.logging_config import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class LsemDataset:
    """Observed (A, L, M, Y) rows held column-wise."""

    a: np.ndarray
    l: np.ndarray
    m: np.ndarray
    y: np.ndarray

    def __post_init__(self) -> None:
        cols = [np.asarray(v, dtype=float) for v in (self.a, self.l, self.m, self.y)]
        if len({c.shape for c in cols}) != 1 or cols[0].ndim != 1:
            raise InvalidInput("A, L, M and Y must be one-dimensional and of equal length")
        if cols[0].size == 0:
            raise InvalidInput("LSEM dataset is empty")
        if not all(np.all(np.isfinite(c)) for c in cols):
            raise InvalidInput("LSEM dataset has non-finite values")
        if not np.all((cols[0] == 0) | (cols[0] == 1)):
            raise InvalidInput("A must contain only 0 and 1")
        for name, col in zip(("a", "l", "m", "y"), cols):
            object.__setattr__(self, name, col)

    def __len__(self) -> int:
        return int(self.a.shape[0])

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> "LsemDataset":
        return cls(
            frame["A"].to_numpy(), frame["L"].to_numpy(), frame["M"].to_numpy(), frame["Y"].to_numpy()
        )

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"A": self.a.astype(np.int64), "L": self.l, "M": self.m, "Y": self.y})


def ols(design: np.ndarray, response: np.ndarray, names: tuple[str, ...]) -> tuple[np.ndarray, np.ndarray]:
    """Least squares by the normal equations.

    Returns:
        Coefficients and their standard errors (zero when there are no
        residual degrees of freedom).

    Raises:
        RankDeficient: the design does not have full column rank.
    """
    n, p = design.shape
    rank = np.linalg.matrix_rank(design)
    if rank < p:
        raise RankDeficient(f"design for {names} has rank {rank} < {p}")
    xtx = design.T @ design
    coef = np.linalg.solve(xtx, design.T @ response)
    resid = response - design @ coef
    dof = n - p
    sigma2 = float(resid @ resid) / dof if dof > 0 else 0.0
    se = np.sqrt(np.clip(np.diag(np.linalg.inv(xtx)) * sigma2, 0.0, None))
    return coef, se


def fit_lsem(data: LsemDataset) -> LsemCoefficients:
    """Fit L ~ A, M ~ A + L and Y ~ A + L + M by ordinary least squares.

    Raises:
        RankDeficient: a design is collinear, e.g. A is constant.
    """
    ones = np.ones(len(data))
    l_coef, l_se = ols(np.column_stack([ones, data.a]), data.l, ("alpha_0", "alpha_A"))
    m_coef, m_se = ols(
        np.column_stack([ones, data.a, data.l]), data.m, ("beta_0", "beta_A", "beta_L")
    )
    y_coef, y_se = ols(
        np.column_stack([ones, data.a, data.l, data.m]),
        data.y,
        ("theta_0", "theta_A", "theta_L", "theta_M"),
    )
    names = (
        "alpha_0", "alpha_A",
        "beta_0", "beta_A", "beta_L",
        "theta_0", "theta_A", "theta_L", "theta_M",
    )
    values = np.concatenate([l_coef, m_coef, y_coef])
    errors = np.concatenate([l_se, m_se, y_se])
    logger.debug("lsem_fitted", n=len(data))
    return LsemCoefficients(
        **{name: float(v) for name, v in zip(names, values)},
        std_errors={name: float(v) for name, v in zip(names, errors)},
    )


def _nested_mean(coef: LsemCoefficients, a: float, a_prime: float) -> float:
    """E{Y(a, L(a), M(a', L(a')))} with mean-zero errors."""
    l_a = coef.alpha_0 + coef.alpha_A * a
    l_ap = coef.alpha_0 + coef.alpha_A * a_prime
    m_ap = coef.beta_0 + coef.beta_A * a_prime + coef.beta_L * l_ap
    return coef.theta_0 + coef.theta_A * a + coef.theta_L * l_a + coef.theta_M * m_ap


def lsem_effects(coef: LsemCoefficients, a: float = 1.0, a_prime: float = 0.0) -> EffectEstimates:
    """Natural effects of a versus a' implied by the linear structural equations."""
    delta = a - a_prime
    nde = (coef.theta_A + coef.theta_L * coef.alpha_A) * delta
    nie = (coef.theta_M * coef.beta_A + coef.theta_M * coef.beta_L * coef.alpha_A) * delta
    return EffectEstimates(
        nde=nde,
        nie=nie,
        te=nde + nie,
        ey_nested=_nested_mean(coef, a, a_prime),
        method=EstimationMethod.LSEM,
        n_or_nodes=0,
        ey_treated=_nested_mean(coef, a, a),
        ey_control=_nested_mean(coef, a_prime, a_prime),
    )


def _errors(stream: np.random.Generator, n: int, noise_sd: float) -> tuple[np.ndarray, ...]:
    return tuple(stream.normal(0.0, noise_sd, n) for _ in range(3))


def simulate_lsem(
    coef: LsemCoefficients, n: int, seed: int, noise_sd: float = 1.0, p_treated: float = 0.5
) -> LsemDataset:
    """Factual (A, L, M, Y) rows from the linear model with randomized A."""
    if n < 1:
        raise InvalidInput("n must be at least 1")
    stream = make_stream(seed)
    a = draw_assignments(stream, n, p_treated).astype(float)
    e_l, e_m, e_y = _errors(stream, n, noise_sd)
    confounder = coef.alpha_0 + coef.alpha_A * a + e_l
    m = coef.beta_0 + coef.beta_A * a + coef.beta_L * confounder + e_m
    y = coef.theta_0 + coef.theta_A * a + coef.theta_L * confounder + coef.theta_M * m + e_y
    return LsemDataset(a, confounder, m, y)


def lsem_nested_effects(
    coef: LsemCoefficients,
    n: int,
    seed: int,
    a: float = 1.0,
    a_prime: float = 0.0,
    noise_sd: float = 1.0,
) -> EffectEstimates:
    """Monte Carlo natural effects from nested counterfactuals built on shared errors.

    Y(a, M(a')) = Y(a, L(a), M(a', L(a'))) per unit, averaged over n units.
    """
    if n < 1:
        raise InvalidInput("n must be at least 1")
    stream = make_stream(seed)
    e_l, e_m, e_y = _errors(stream, n, noise_sd)

    def nested(x: float, x_prime: float) -> np.ndarray:
        l_x = coef.alpha_0 + coef.alpha_A * x + e_l
        l_xp = coef.alpha_0 + coef.alpha_A * x_prime + e_l
        m_xp = coef.beta_0 + coef.beta_A * x_prime + coef.beta_L * l_xp + e_m
        return coef.theta_0 + coef.theta_A * x + coef.theta_L * l_x + coef.theta_M * m_xp + e_y

    y_control = nested(a_prime, a_prime)
    y_nested = nested(a, a_prime)
    y_treated = nested(a, a)
    moments = Moments.of(
        np.column_stack(
            [y_control, y_nested, y_treated, y_nested - y_control, y_treated - y_nested, y_treated - y_control]
        )
    )
    mean = moments.mean
    se = moments.std_error
    return EffectEstimates(
        nde=float(mean[3]),
        nie=float(mean[4]),
        te=float(mean[5]),
        ey_nested=float(mean[1]),
        method=EstimationMethod.LSEM,
        n_or_nodes=n,
        mc_se=float(se[3]),
        mc_se_nie=float(se[4]),
        mc_se_te=float(se[5]),
        ey_treated=float(mean[2]),
        ey_control=float(mean[0]),
    )

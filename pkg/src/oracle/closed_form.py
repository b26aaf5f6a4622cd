"""Population truth, g-formula estimand and bias by integration over U.

Everything is evaluated on a (settings x nodes) array so a whole chunk of a
parameter grid is integrated at once; single configurations go through the
same path with one row.

With g(u) = expit(alpha0 + alpha2 u), gamma = E g(U) = P(M(0)=1) and
psi = E{U g(U)} = E{U M(0)}. M(1) does not depend on U, so
P(M(1)=1) = expit(alpha0 + alpha1).
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import expit

from ..config import get_quadrature_nodes
from ..models.config import ModelConfig, OutcomeKind, validate_config
from ..models.errors import NonFinite, NotBinaryOutcome
from ..models.estimates import BoundsInput, EffectEstimates, EstimationMethod, OracleReport
from .quadrature import normal_rule


@dataclass(frozen=True)
class OracleArrays:
    """Per-setting population quantities; every field has shape (B,).

    eta = E{Y(1, M(0))}; eta_prime is its g-formula estimand.
    eh0, eh1 = E{Y(1, m)} for m = 0, 1, which equal E[Y | A=1, M=m].
    """

    gamma: np.ndarray
    psi: np.ndarray
    eta: np.ndarray
    eta_prime: np.ndarray
    ey_control: np.ndarray
    ey_treated: np.ndarray
    eh0: np.ndarray
    eh1: np.ndarray

    @property
    def true_nde(self) -> np.ndarray:
        return self.eta - self.ey_control

    @property
    def true_nie(self) -> np.ndarray:
        return self.ey_treated - self.eta

    @property
    def est_nde(self) -> np.ndarray:
        return self.eta_prime - self.ey_control

    @property
    def est_nie(self) -> np.ndarray:
        return self.ey_treated - self.eta_prime


def _weighted(values: np.ndarray, w: np.ndarray) -> np.ndarray:
    # Row-wise sums keep each setting's value independent of its chunk.
    return (values * w).sum(axis=1)


def evaluate_parameters(
    params: np.ndarray,
    outcome_kind: OutcomeKind,
    u_mean: float = 2.0,
    u_sd: float = 1.0,
    nodes: Optional[int] = None,
) -> OracleArrays:
    """Integrate the oracle quantities for a (B, 9) array of coefficients.

    Args:
        params: Rows of (alpha0, alpha1, alpha2, beta0, ..., beta5).
        outcome_kind: Outcome family.
        u_mean: Mean of U.
        u_sd: Standard deviation of U.
        nodes: Gauss-Hermite nodes; defaults to CWMED_QUADRATURE_NODES.

    Returns:
        OracleArrays with one entry per row of params.

    Raises:
        NonFinite: any integral is not finite.
    """
    params = np.atleast_2d(np.asarray(params, dtype=float))
    u, w = normal_rule(u_mean, u_sd, nodes)
    a0, a1, a2, b0, b1, b2, b3, b4, b5 = (params[:, [j]] for j in range(9))

    g = expit(a0 + a2 * u)
    gamma = _weighted(g, w)
    psi = _weighted(g * u, w)
    p1 = expit(a0 + a1)[:, 0]

    if OutcomeKind(outcome_kind) == OutcomeKind.BINARY:
        h0 = expit(b0 + b1 + b3 * u)
        h1 = expit(b0 + b1 + b2 + b4 + (b3 + b5) * u)
        eh0 = _weighted(h0, w)
        eh1 = _weighted(h1, w)
        eta = _weighted(h0 * (1.0 - g) + h1 * g, w)
        eta_prime = (1.0 - gamma) * eh0 + gamma * eh1
        ey_control = expit(b0[:, 0]) * (1.0 - gamma) + expit(b0 + b2)[:, 0] * gamma
        ey_treated = (1.0 - p1) * eh0 + p1 * eh1
    else:
        b0, b1, b2, b3, b4, b5 = (c[:, 0] for c in (b0, b1, b2, b3, b4, b5))
        eh0 = b0 + b1 + b3 * u_mean
        eh1 = b0 + b1 + b2 + b4 + (b3 + b5) * u_mean
        eta = b0 + b1 + b3 * u_mean + (b2 + b4) * gamma + b5 * psi
        eta_prime = b0 + b1 + b3 * u_mean + gamma * (b2 + b4 + b5 * u_mean)
        ey_control = b0 + b2 * gamma
        ey_treated = b0 + b1 + b3 * u_mean + p1 * (b2 + b4 + b5 * u_mean)

    arrays = OracleArrays(
        gamma=gamma,
        psi=psi,
        eta=eta,
        eta_prime=eta_prime,
        ey_control=ey_control,
        ey_treated=ey_treated,
        eh0=eh0,
        eh1=eh1,
    )
    for name, values in vars(arrays).items():
        if not np.all(np.isfinite(values)):
            raise NonFinite(f"oracle quantity {name} is not finite")
    return arrays


def _evaluate(config: ModelConfig, nodes: Optional[int]) -> tuple[OracleArrays, int]:
    config = validate_config(config)
    nodes = get_quadrature_nodes() if nodes is None else int(nodes)
    arrays = evaluate_parameters(
        config.parameter_vector(), config.outcome_kind, config.u_mean, config.u_sd, nodes
    )
    return arrays, nodes


def compute_gamma_psi(config: ModelConfig, nodes: Optional[int] = None) -> tuple[float, float]:
    """gamma = E[expit(alpha0 + alpha2 U)], psi = E[U expit(alpha0 + alpha2 U)]."""
    arrays, _ = _evaluate(config, nodes)
    return float(arrays.gamma[0]), float(arrays.psi[0])


def _estimates(
    arrays: OracleArrays, nested: np.ndarray, nodes: int, method: EstimationMethod
) -> EffectEstimates:
    return EffectEstimates.from_means(
        ey_control=float(arrays.ey_control[0]),
        ey_nested=float(nested[0]),
        ey_treated=float(arrays.ey_treated[0]),
        method=method,
        n_or_nodes=nodes,
    )


def truth_closed_form(config: ModelConfig, nodes: Optional[int] = None) -> EffectEstimates:
    """True NDE, NIE and TE from E{Y(0,M(0))}, E{Y(1,M(0))} and E{Y(1,M(1))}."""
    arrays, nodes = _evaluate(config, nodes)
    return _estimates(arrays, arrays.eta, nodes, EstimationMethod.QUADRATURE_TRUTH)


def estimand_closed_form(config: ModelConfig, nodes: Optional[int] = None) -> EffectEstimates:
    """Population value of the mediational g-formula.

    Same assembly as truth_closed_form with E{Y(1,M(0))} replaced by
    sum_m E[Y | A=1, M=m] P(M=m | A=0).
    """
    arrays, nodes = _evaluate(config, nodes)
    return _estimates(arrays, arrays.eta_prime, nodes, EstimationMethod.GFORMULA)


def analytic_bias(config: ModelConfig, nodes: Optional[int] = None) -> OracleReport:
    """Truth, estimand and their gap, with the intermediate integrals.

    Continuous Y: bias_nde = beta5 (psi - u_mean gamma).
    Binary Y: bias_nde = eta - eta_prime.
    """
    config = validate_config(config)
    arrays, nodes = _evaluate(config, nodes)
    truth = _estimates(arrays, arrays.eta, nodes, EstimationMethod.QUADRATURE_TRUTH)
    estimand = _estimates(arrays, arrays.eta_prime, nodes, EstimationMethod.GFORMULA)
    gamma = float(arrays.gamma[0])
    psi = float(arrays.psi[0])
    if config.is_binary:
        bias_nde = float(arrays.eta[0] - arrays.eta_prime[0])
    else:
        bias_nde = config.beta5 * (psi - config.u_mean * gamma)
    return OracleReport(
        outcome_kind=config.outcome_kind,
        gamma=min(max(gamma, 0.0), 1.0),
        psi=psi,
        eta=float(arrays.eta[0]),
        eta_prime=float(arrays.eta_prime[0]),
        truth=truth,
        estimand=estimand,
        bias_nde=bias_nde,
        bias_nie=truth.nie - estimand.nie,
        nodes=nodes,
    )


def closed_form_bounds_input(config: ModelConfig, nodes: Optional[int] = None) -> BoundsInput:
    """Population inputs of the NDE bounds for a binary-outcome model."""
    config = validate_config(config)
    if not config.is_binary:
        raise NotBinaryOutcome("NDE bounds need a binary outcome")
    arrays, _ = _evaluate(config, nodes)
    # Quadrature weights sum to 1 only up to rounding.
    gamma, eh0, eh1, ey_a0 = (
        min(max(float(v[0]), 0.0), 1.0)
        for v in (arrays.gamma, arrays.eh0, arrays.eh1, arrays.ey_control)
    )
    return BoundsInput(
        p_m0_a0=1.0 - gamma, p_m1_a0=gamma, ey_a1_m0=eh0, ey_a1_m1=eh1, ey_a0=ey_a0
    )

"""Closed-form oracles: true effects, g-formula estimands and their bias."""

from .closed_form import (
    OracleArrays,
    analytic_bias,
    closed_form_bounds_input,
    compute_gamma_psi,
    estimand_closed_form,
    evaluate_parameters,
    truth_closed_form,
)
from .quadrature import normal_expectation, normal_rule

__all__ = [
    "OracleArrays",
    "analytic_bias",
    "closed_form_bounds_input",
    "compute_gamma_psi",
    "estimand_closed_form",
    "evaluate_parameters",
    "normal_expectation",
    "normal_rule",
    "truth_closed_form",
]

"""Tests for the linear structural equations with an intermediate confounder."""

import numpy as np
import pytest

from src.estimation.lsem import (
    LsemDataset,
    fit_lsem,
    lsem_effects,
    lsem_nested_effects,
    ols,
    simulate_lsem,
)
from src.models.errors import InvalidInput, RankDeficient
from src.models.estimates import EstimationMethod, LsemCoefficients

COEFFICIENT_NAMES = (
    "alpha_0", "alpha_A",
    "beta_0", "beta_A", "beta_L",
    "theta_0", "theta_A", "theta_L", "theta_M",
)


@pytest.fixture
def coef() -> LsemCoefficients:
    return LsemCoefficients(alpha_A=2.0, beta_A=1.0, beta_L=0.5, theta_A=1.0, theta_L=1.0, theta_M=1.0)


@pytest.fixture
def full_coef() -> LsemCoefficients:
    return LsemCoefficients(
        alpha_0=0.4,
        alpha_A=-1.5,
        beta_0=1.0,
        beta_A=0.7,
        beta_L=2.0,
        theta_0=-3.0,
        theta_A=0.25,
        theta_L=1.5,
        theta_M=-0.8,
    )


def _noiseless(coef: LsemCoefficients) -> LsemDataset:
    # Errors are orthogonal to every regressor, so OLS reproduces the coefficients.
    a = np.array([0, 0, 0, 0, 1, 1, 1, 1], dtype=float)
    e_l = np.array([1, -1, 1, -1, 1, -1, 1, -1], dtype=float)
    e_m = np.array([1, 1, -1, -1, 1, 1, -1, -1], dtype=float)
    l = coef.alpha_0 + coef.alpha_A * a + e_l
    m = coef.beta_0 + coef.beta_A * a + coef.beta_L * l + e_m
    y = coef.theta_0 + coef.theta_A * a + coef.theta_L * l + coef.theta_M * m
    return LsemDataset(a, l, m, y)


class TestLsemEffects:
    def test_worked_example(self, coef):
        effects = lsem_effects(coef)
        assert effects.nde == pytest.approx(3.0)
        assert effects.nie == pytest.approx(2.0)
        assert effects.te == pytest.approx(5.0)
        assert effects.method == EstimationMethod.LSEM

    def test_no_intermediate_pathway(self):
        coef = LsemCoefficients(alpha_A=2.0, beta_A=1.5, beta_L=0.0, theta_A=0.7, theta_L=0.0, theta_M=3.0)
        effects = lsem_effects(coef)
        assert effects.nde == pytest.approx(0.7)
        assert effects.nie == pytest.approx(4.5)

    def test_same_levels_give_no_effect(self, coef):
        effects = lsem_effects(coef, a=0.3, a_prime=0.3)
        assert effects.nde == 0.0
        assert effects.nie == 0.0

    def test_linear_in_contrast(self, full_coef):
        unit = lsem_effects(full_coef)
        wide = lsem_effects(full_coef, a=3.0, a_prime=1.0)
        assert wide.nde == pytest.approx(2 * unit.nde)
        assert wide.nie == pytest.approx(2 * unit.nie)

    def test_means_are_consistent(self, full_coef):
        effects = lsem_effects(full_coef)
        assert effects.ey_nested - effects.ey_control == pytest.approx(effects.nde)
        assert effects.ey_treated - effects.ey_nested == pytest.approx(effects.nie)

    def test_matches_nested_counterfactuals(self, coef):
        mc = lsem_nested_effects(coef, 200_000, seed=5)
        # Errors cancel inside each unit's contrast.
        assert mc.nde == pytest.approx(3.0, abs=1e-9)
        assert mc.nie == pytest.approx(2.0, abs=1e-9)

    def test_rejects_non_finite_coefficients(self):
        with pytest.raises(ValueError):
            LsemCoefficients(alpha_A=float("inf"), beta_A=1.0, beta_L=0.5, theta_A=1.0, theta_L=1.0, theta_M=1.0)


class TestFitLsem:
    def test_noiseless_recovery(self, full_coef):
        fitted = fit_lsem(_noiseless(full_coef))
        for name in COEFFICIENT_NAMES:
            assert getattr(fitted, name) == pytest.approx(getattr(full_coef, name), abs=1e-8)

    def test_simulated_recovery(self, full_coef):
        fitted = fit_lsem(simulate_lsem(full_coef, 100_000, seed=2))
        for name in COEFFICIENT_NAMES:
            se = fitted.std_errors[name]
            assert se > 0
            assert abs(getattr(fitted, name) - getattr(full_coef, name)) < 5 * se

    def test_fitted_effects_match_truth(self, coef):
        fitted = fit_lsem(simulate_lsem(coef, 100_000, seed=3))
        effects = lsem_effects(fitted)
        assert effects.nde == pytest.approx(3.0, abs=0.05)
        assert effects.nie == pytest.approx(2.0, abs=0.05)

    def test_constant_treatment_is_rank_deficient(self):
        data = LsemDataset(np.ones(5), np.arange(5.0), np.arange(5.0) ** 2, np.ones(5))
        with pytest.raises(RankDeficient):
            fit_lsem(data)

    def test_ols_without_residual_degrees_of_freedom(self):
        design = np.array([[1.0, 0.0], [1.0, 1.0]])
        coef, se = ols(design, np.array([2.0, 5.0]), ("c", "slope"))
        np.testing.assert_allclose(coef, [2.0, 3.0])
        np.testing.assert_array_equal(se, [0.0, 0.0])


class TestLsemDataset:
    def test_rejects_empty(self):
        with pytest.raises(InvalidInput):
            LsemDataset(np.array([]), np.array([]), np.array([]), np.array([]))

    def test_rejects_non_binary_treatment(self):
        with pytest.raises(InvalidInput):
            LsemDataset(np.array([0.0, 0.5]), np.zeros(2), np.zeros(2), np.zeros(2))

    def test_rejects_unequal_lengths(self):
        with pytest.raises(InvalidInput):
            LsemDataset(np.array([0.0, 1.0]), np.zeros(3), np.zeros(2), np.zeros(2))

    def test_simulation_is_seeded(self, coef):
        first = simulate_lsem(coef, 1000, seed=9)
        second = simulate_lsem(coef, 1000, seed=9)
        np.testing.assert_array_equal(first.y, second.y)
        assert len(first) == 1000

"""Tests for the quadrature oracle: truth, g-formula estimand and their gap."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import expit, logit

from src.estimation.gformula import estimate_gformula
from src.models.config import ModelConfig, OutcomeKind
from src.models.estimates import EstimationMethod
from src.models.errors import InvalidInput, NonFinite, NotBinaryOutcome
from src.oracle.closed_form import (
    analytic_bias,
    closed_form_bounds_input,
    compute_gamma_psi,
    estimand_closed_form,
    evaluate_parameters,
    truth_closed_form,
)
from src.oracle.quadrature import normal_expectation, normal_rule
from src.simulation.effects import mc_true_effects
from src.simulation.sampling import simulate_observed

GRID_LOW = np.array([-0.85, -0.36, -1.2, -0.85, -0.69, 0.0, -0.69, -0.36, 0.0])
GRID_HIGH = np.array([1.39, 0.92, -0.1, 0.41, 1.1, 1.25, -0.1, 0.34, 0.69])


def random_configs(kind: OutcomeKind, count: int, seed: int) -> list[ModelConfig]:
    rng = np.random.default_rng(seed)
    vectors = rng.uniform(GRID_LOW, GRID_HIGH, size=(count, GRID_LOW.size))
    return [ModelConfig.from_vector(tuple(v), outcome_kind=kind) for v in vectors]


grid_vector = st.tuples(
    st.floats(min_value=-0.85, max_value=1.39),
    st.floats(min_value=-0.36, max_value=0.92),
    st.floats(min_value=-1.2, max_value=-0.1),
    st.floats(min_value=-0.85, max_value=0.41),
    st.floats(min_value=-0.69, max_value=1.1),
    st.floats(min_value=0.0, max_value=1.25),
    st.floats(min_value=-0.69, max_value=-0.1),
    st.floats(min_value=-0.36, max_value=0.34),
    st.floats(min_value=0.0, max_value=0.69),
)


class TestQuadrature:
    def test_mean(self):
        assert normal_expectation(lambda u: u, 2.0, 1.0, 64) == pytest.approx(2.0, abs=1e-12)

    def test_variance(self):
        assert normal_expectation(lambda u: u**2, 0.0, 1.0, 64) == pytest.approx(1.0, abs=1e-12)

    def test_scalar_integrand(self):
        value = normal_expectation(lambda u: 3.0, 1.0, 2.0, 16)
        assert value == pytest.approx(3.0, abs=1e-12)

    def test_sigmoid_matches_riemann_sum(self):
        sigma = 2.0
        grid = np.linspace(-10 * sigma, 10 * sigma, 400_001)
        density = np.exp(-0.5 * (grid / sigma) ** 2) / (sigma * np.sqrt(2 * np.pi))
        riemann = float(np.sum(expit(grid + 0.3) * density) * (grid[1] - grid[0]))
        assert normal_expectation(lambda u: expit(u + 0.3), 0.0, sigma, 64) == pytest.approx(
            riemann, abs=1e-6
        )

    def test_weights_sum_to_one(self):
        _, w = normal_rule(0.0, 1.0, 32)
        assert w.sum() == pytest.approx(1.0, abs=1e-13)

    def test_too_few_nodes(self):
        with pytest.raises(InvalidInput):
            normal_rule(0.0, 1.0, 7)

    def test_non_finite_integrand(self):
        with pytest.raises(NonFinite):
            normal_expectation(lambda u: np.full_like(u, np.inf), 0.0, 1.0, 16)


class TestGammaPsi:
    def test_independent_mediator(self):
        gamma, psi = compute_gamma_psi(ModelConfig(outcome_kind=OutcomeKind.BINARY))
        assert gamma == pytest.approx(0.5, abs=1e-12)
        assert psi == pytest.approx(1.0, abs=1e-12)

    def test_alpha2_zero(self):
        config = ModelConfig(outcome_kind=OutcomeKind.BINARY, alpha0=float(logit(0.3)))
        gamma, _ = compute_gamma_psi(config)
        assert gamma == pytest.approx(0.3, abs=1e-12)

    def test_matches_monte_carlo(self, binary_config):
        gamma, psi = compute_gamma_psi(binary_config)
        rng = np.random.default_rng(17)
        u = rng.normal(2.0, 1.0, 1_000_000)
        g = expit(binary_config.alpha0 + binary_config.alpha2 * u)
        assert abs(g.mean() - gamma) < 4 * g.std() / 1000
        assert abs((u * g).mean() - psi) < 4 * (u * g).std() / 1000

    def test_gamma_monotone_in_alpha0(self):
        values = [
            compute_gamma_psi(
                ModelConfig(outcome_kind=OutcomeKind.BINARY, alpha0=a0, alpha2=-1.2)
            )[0]
            for a0 in np.linspace(-2, 2, 9)
        ]
        assert np.all(np.diff(values) > 0)


class TestTruthAndEstimand:
    def test_additive_continuous_nde_is_beta1(self):
        config = ModelConfig(outcome_kind=OutcomeKind.CONTINUOUS, alpha2=-0.8, beta1=2.5)
        assert truth_closed_form(config).nde == pytest.approx(2.5, abs=1e-12)

    def test_binary_null_model(self):
        truth = truth_closed_form(ModelConfig(outcome_kind=OutcomeKind.BINARY, alpha2=-1.0))
        assert truth.nde == pytest.approx(0.0, abs=1e-12)
        assert truth.nie == pytest.approx(0.0, abs=1e-12)
        for value in (truth.ey_control, truth.ey_nested, truth.ey_treated):
            assert value == pytest.approx(0.5, abs=1e-12)

    def test_continuous_beta5_zero_estimand_equals_truth(self, continuous_config):
        config = continuous_config.with_parameters(beta5=0.0)
        assert estimand_closed_form(config).nde == pytest.approx(
            truth_closed_form(config).nde, abs=1e-10
        )

    def test_binary_alpha2_zero_estimand_equals_truth(self, binary_config):
        config = binary_config.with_parameters(alpha2=0.0)
        assert estimand_closed_form(config).nde == pytest.approx(
            truth_closed_form(config).nde, abs=1e-12
        )

    def test_continuous_formula(self, continuous_config):
        c = continuous_config
        gamma, psi = compute_gamma_psi(c)
        truth = truth_closed_form(c)
        expected = c.beta0 + c.beta1 + (c.beta2 + c.beta4) * gamma + 2 * c.beta3 + c.beta5 * psi
        assert truth.ey_nested == pytest.approx(expected, abs=1e-9)
        assert truth.ey_control == pytest.approx(c.beta0 + c.beta2 * gamma, abs=1e-9)

    @pytest.mark.parametrize("fixture", ["binary_config", "continuous_config"])
    def test_matches_monte_carlo_truth(self, fixture, request):
        config = request.getfixturevalue(fixture)
        truth = truth_closed_form(config)
        mc = mc_true_effects(config, 400_000, seed=99)
        assert abs(mc.nde - truth.nde) < 5 * mc.mc_se
        assert abs(mc.nie - truth.nie) < 5 * mc.mc_se_nie

    def test_method_labels(self, binary_config):
        assert truth_closed_form(binary_config).method == EstimationMethod.QUADRATURE_TRUTH
        assert estimand_closed_form(binary_config).method == EstimationMethod.GFORMULA
        report = analytic_bias(binary_config)
        assert report.estimand.method == EstimationMethod.GFORMULA

    def test_vectorized_rows_match_single_configs(self, binary_config, extreme_config):
        rows = np.vstack([binary_config.parameter_vector(), extreme_config.parameter_vector()])
        arrays = evaluate_parameters(rows, OutcomeKind.BINARY, nodes=64)
        assert arrays.true_nde[1] == pytest.approx(truth_closed_form(extreme_config, 64).nde, abs=1e-14)
        assert arrays.est_nde[0] == pytest.approx(estimand_closed_form(binary_config, 64).nde, abs=1e-14)


class TestAnalyticBias:
    def test_continuous_formula(self, continuous_config):
        report = analytic_bias(continuous_config)
        gamma, psi = compute_gamma_psi(continuous_config)
        assert report.bias_nde == pytest.approx(continuous_config.beta5 * (psi - 2.0 * gamma))

    def test_continuous_alpha2_zero_has_no_bias(self, continuous_config):
        report = analytic_bias(continuous_config.with_parameters(alpha2=0.0))
        assert report.bias_nde == pytest.approx(0.0, abs=1e-10)

    def test_extreme_binary_setting(self, extreme_config):
        report = analytic_bias(extreme_config)
        assert report.bias_nde == pytest.approx(-0.18, abs=0.02)
        assert report.bias_nie == pytest.approx(-report.bias_nde, abs=1e-12)

    def test_extreme_binary_setting_matches_monte_carlo(self, extreme_config):
        report = analytic_bias(extreme_config)
        mc = mc_true_effects(extreme_config, 400_000, seed=2470)
        assert abs(mc.nde - report.truth.nde) < 5 * mc.mc_se

    @settings(max_examples=40, deadline=None)
    @given(vector=grid_vector, binary=st.booleans())
    def test_bias_is_truth_minus_estimand(self, vector, binary):
        kind = OutcomeKind.BINARY if binary else OutcomeKind.CONTINUOUS
        config = ModelConfig.from_vector(vector, outcome_kind=kind)
        report = analytic_bias(config)
        gap = truth_closed_form(config).nde - estimand_closed_form(config).nde
        assert report.bias_nde == pytest.approx(gap, abs=1e-8)
        assert report.bias_nie == pytest.approx(-report.bias_nde, abs=1e-10)

    @settings(max_examples=25, deadline=None)
    @given(vector=grid_vector)
    def test_node_doubling_is_stable(self, vector):
        params = np.asarray(vector)[None, :]
        base = evaluate_parameters(params, OutcomeKind.BINARY, nodes=64)
        fine = evaluate_parameters(params, OutcomeKind.BINARY, nodes=128)
        for name in ("gamma", "psi", "eta", "eta_prime", "ey_control", "ey_treated"):
            assert getattr(base, name)[0] == pytest.approx(getattr(fine, name)[0], abs=1e-9)


class TestBoundsInput:
    def test_population_inputs(self, binary_config):
        inp = closed_form_bounds_input(binary_config)
        gamma, _ = compute_gamma_psi(binary_config)
        assert inp.p_m1_a0 == pytest.approx(gamma)
        assert inp.p_m0_a0 + inp.p_m1_a0 == pytest.approx(1.0)

    def test_requires_binary_outcome(self, continuous_config):
        with pytest.raises(NotBinaryOutcome):
            closed_form_bounds_input(continuous_config)


def gformula_std_error(data) -> float:
    """Plug-in standard error of the g-formula NDE from factual rows."""
    a, m, y = data.a, data.m, data.y
    p1 = m[a == 0].mean()
    var = 0.0
    contrast = []
    for level, weight in ((0, 1 - p1), (1, p1)):
        cells = [y[(a == arm) & (m == level)] for arm in (0, 1)]
        var_cells = sum(c.var(ddof=1) / c.size for c in cells)
        contrast.append(cells[1].mean() - cells[0].mean())
        var += weight**2 * var_cells
    var += (contrast[1] - contrast[0]) ** 2 * p1 * (1 - p1) / (a == 0).sum()
    return float(np.sqrt(var))


@pytest.mark.slow
class TestRandomConfigsAgainstMonteCarlo:
    N = 400_000

    @pytest.mark.parametrize("kind", [OutcomeKind.BINARY, OutcomeKind.CONTINUOUS])
    def test_truth_matches_monte_carlo(self, kind):
        for i, config in enumerate(random_configs(kind, 8, seed=2470)):
            truth = truth_closed_form(config)
            mc = mc_true_effects(config, self.N, seed=100 + i)
            assert abs(mc.nde - truth.nde) < 5 * mc.mc_se
            assert abs(mc.nie - truth.nie) < 5 * mc.mc_se_nie

    @pytest.mark.parametrize("kind", [OutcomeKind.BINARY, OutcomeKind.CONTINUOUS])
    def test_estimate_and_bias_match_closed_form(self, kind):
        for i, config in enumerate(random_configs(kind, 8, seed=4711)):
            sim = simulate_observed(config, self.N, seed=200 + i)
            estimate = estimate_gformula(sim.observed)
            est_se = gformula_std_error(sim.observed)
            assert abs(estimate.nde - estimand_closed_form(config).nde) < 5 * est_se

            units = sim.counterfactuals
            direct = units.nested(1, 0) - units.nested(0, 0)
            truth_se = direct.std(ddof=1) / np.sqrt(self.N)
            mc_bias = direct.mean() - estimate.nde
            assert abs(mc_bias - analytic_bias(config).bias_nde) < 5 * (truth_se + est_se)

"""Tests for the mediational g-formula and the one-pass simulation study."""

import numpy as np
import pytest

from src.estimation.gformula import cell_statistics, estimate_gformula, gformula_from_cells
from src.estimation.study import mc_gformula_study
from src.models.config import OutcomeKind
from src.models.counterfactuals import ObservedDataset
from src.models.errors import EmptyCell, InvalidInput, PositivityViolation
from src.models.estimates import CellStats, EstimationMethod
from src.oracle.closed_form import analytic_bias, estimand_closed_form
from src.simulation.effects import mc_true_effects
from src.simulation.sampling import simulate_observed


def _dataset(rows) -> ObservedDataset:
    arr = np.array(rows, dtype=float)
    return ObservedDataset(arr[:, 0], arr[:, 1], arr[:, 2])


class TestCellStatistics:
    def test_eight_rows(self, eight_rows):
        cells = cell_statistics(eight_rows)
        assert cells.counts == ((2, 2), (2, 2))
        assert cells.mean_y == ((0.5, 1.0), (0.5, 0.5))
        assert cells.p_m1_given_a == (0.5, 0.5)
        assert cells.mean_y_given_a == (0.75, 0.5)
        assert cells.n == 8

    def test_empty_cell_is_reported(self):
        data = _dataset([(0, 0, 1), (0, 1, 0), (1, 0, 1)])
        with pytest.raises(EmptyCell) as info:
            cell_statistics(data)
        assert info.value.cells == [(1, 1)]

    def test_missing_mediator_level(self):
        data = _dataset([(0, 1, 1), (0, 1, 0), (1, 1, 1)])
        with pytest.raises(EmptyCell) as info:
            cell_statistics(data)
        assert info.value.cells == [(0, 0), (1, 0)]

    def test_lenient_mode_marks_empty_cells(self):
        cells = cell_statistics(_dataset([(0, 0, 1), (0, 1, 0), (1, 0, 1)]), strict=False)
        assert cells.empty_cells == [(1, 1)]
        assert np.isnan(cells.mean_y[1][1])

    def test_from_sums(self):
        cells = CellStats.from_sums(np.array([[1, 3], [2, 2]]), np.array([[1.0, 3.0], [0.0, 2.0]]))
        assert cells.p_m_given_a(0, 0) == 0.25
        assert cells.mean_y_given_a == (1.0, 0.5)


class TestEstimateGformula:
    def test_eight_rows(self, eight_rows):
        est = estimate_gformula(eight_rows)
        assert est.nde == pytest.approx(-0.25, abs=1e-15)
        assert est.nie == pytest.approx(0.0, abs=1e-15)
        assert est.te == pytest.approx(-0.25, abs=1e-15)
        assert est.method == EstimationMethod.GFORMULA
        assert est.n_or_nodes == 8

    def test_decomposition(self, binary_config):
        est = estimate_gformula(simulate_observed(binary_config, 20_000, seed=6).observed)
        assert est.nde + est.nie == est.te

    def test_positivity(self):
        with pytest.raises(PositivityViolation) as info:
            estimate_gformula(_dataset([(0, 0, 1), (0, 1, 0), (1, 1, 1)]))
        assert info.value.cells == [(1, 0)]

    def test_constant_outcome(self):
        data = _dataset([(a, m, 2.5) for a in (0, 1) for m in (0, 1) for _ in range(3)])
        est = estimate_gformula(data)
        assert est.nde == 0.0
        assert est.nie == 0.0

    def test_row_order_does_not_matter(self, eight_rows):
        rng = np.random.default_rng(0)
        rows = np.column_stack([eight_rows.a, eight_rows.m, eight_rows.y * 0.1 + 0.3])
        base = estimate_gformula(_dataset(rows))
        for _ in range(5):
            shuffled = estimate_gformula(_dataset(rows[rng.permutation(len(rows))]))
            assert (shuffled.nde, shuffled.nie, shuffled.te) == (base.nde, base.nie, base.te)

    def test_duplication_does_not_matter(self, eight_rows):
        rows = np.column_stack([eight_rows.a, eight_rows.m, eight_rows.y])
        base = estimate_gformula(_dataset(rows))
        doubled = estimate_gformula(_dataset(np.vstack([rows, rows])))
        assert (doubled.nde, doubled.nie) == (base.nde, base.nie)
        assert doubled.n_or_nodes == 16

    def test_affine_equivariance(self, continuous_config):
        data = simulate_observed(continuous_config, 5000, seed=13).observed
        base = estimate_gformula(data)
        scaled = estimate_gformula(ObservedDataset(data.a, data.m, 3.0 * data.y - 7.0))
        assert scaled.nde == pytest.approx(3.0 * base.nde, rel=1e-9, abs=1e-9)
        assert scaled.nie == pytest.approx(3.0 * base.nie, rel=1e-9, abs=1e-9)

    def test_rejects_non_binary_mediator(self):
        with pytest.raises(InvalidInput):
            ObservedDataset(np.array([0, 1]), np.array([0, 3]), np.array([0.0, 1.0]))

    def test_gformula_from_cells_uses_given_n(self, eight_rows):
        assert gformula_from_cells(cell_statistics(eight_rows), n=99).n_or_nodes == 99


class TestGformulaStudy:
    def test_truth_matches_monte_carlo_truth(self, binary_config):
        study = mc_gformula_study(binary_config, 30_000, seed=77, jobs=1, block_size=7000)
        truth = mc_true_effects(binary_config, 30_000, seed=77, jobs=1, block_size=7000)
        assert study.truth == truth

    def test_estimate_converges_to_estimand(self, binary_config):
        study = mc_gformula_study(binary_config, 400_000, seed=78)
        estimand = estimand_closed_form(binary_config)
        assert study.estimate.nde == pytest.approx(estimand.nde, abs=0.012)
        assert study.estimate.nie == pytest.approx(estimand.nie, abs=0.012)

    def test_extreme_setting_bias(self, extreme_config):
        study = mc_gformula_study(extreme_config, 400_000, seed=2470)
        assert study.bias_nde == pytest.approx(analytic_bias(extreme_config).bias_nde, abs=0.02)
        assert study.bias_nde == pytest.approx(study.truth.nde - study.estimate.nde)

    def test_treatment_probability(self, binary_config):
        study = mc_gformula_study(binary_config, 100_000, seed=79, p_treated=0.3)
        treated = sum(study.cells.counts[1]) / study.n
        assert treated == pytest.approx(0.3, abs=5 * np.sqrt(0.21 / 100_000))

    def test_scheduling_invariance(self, continuous_config):
        serial = mc_gformula_study(continuous_config, 20_000, seed=80, jobs=1, block_size=4000)
        threaded = mc_gformula_study(continuous_config, 20_000, seed=80, jobs=3, block_size=4000)
        assert serial == threaded

    def test_rejects_empty_sample(self, binary_config):
        with pytest.raises(InvalidInput):
            mc_gformula_study(binary_config, 0, seed=1)

    def test_continuous_outcome_kind(self, continuous_config):
        study = mc_gformula_study(continuous_config, 5000, seed=81)
        assert study.cells.n == 5000
        assert continuous_config.outcome_kind == OutcomeKind.CONTINUOUS

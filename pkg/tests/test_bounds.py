"""Tests for the nonparametric NDE bounds."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.estimation.bounds import bound_arrays, bounds_from_data, compute_nde_bounds
from src.models.config import ModelConfig, OutcomeKind
from src.models.counterfactuals import ObservedDataset
from src.models.errors import InvalidInput, NotBinaryOutcome, PositivityViolation
from src.models.estimates import BoundsInput
from src.oracle.closed_form import closed_form_bounds_input, evaluate_parameters, truth_closed_form
from src.simulation.sampling import simulate_observed

unit_interval = st.floats(min_value=0.0, max_value=1.0)


def _inputs(p1, e0, e1, ey0) -> dict:
    return {"p_m0_a0": 1.0 - p1, "p_m1_a0": p1, "ey_a1_m0": e0, "ey_a1_m1": e1, "ey_a0": ey0}


class TestComputeNdeBounds:
    def test_worked_example(self):
        bounds = compute_nde_bounds(BoundsInput(**_inputs(0.5, 0.6, 0.7, 0.5)))
        assert bounds.lower == pytest.approx(-0.2)
        assert bounds.upper == pytest.approx(0.5)
        assert bounds.informative
        assert bounds.contains_zero

    def test_degenerate_mediator(self):
        bounds = compute_nde_bounds(_inputs(0.0, 0.3, 0.9, 0.2))
        assert bounds.lower == pytest.approx(0.1)
        assert bounds.upper == pytest.approx(0.1)
        assert bounds.width == pytest.approx(0.0, abs=1e-15)
        assert not bounds.contains_zero

    def test_eight_row_inputs(self):
        bounds = compute_nde_bounds(_inputs(0.5, 0.5, 0.5, 0.75))
        assert (bounds.lower, bounds.upper) == (-0.75, 0.25)

    def test_extreme_inputs(self):
        bounds = compute_nde_bounds(_inputs(0.5, 0.0, 0.0, 1.0))
        assert (bounds.lower, bounds.upper) == (-1.0, -1.0)
        bounds = compute_nde_bounds(_inputs(0.5, 1.0, 1.0, 0.0))
        assert (bounds.lower, bounds.upper) == (1.0, 1.0)

    @pytest.mark.parametrize(
        "raw",
        [
            _inputs(0.5, 1.2, 0.5, 0.5),
            _inputs(0.5, 0.5, 0.5, -0.1),
            {"p_m0_a0": 0.6, "p_m1_a0": 0.6, "ey_a1_m0": 0.5, "ey_a1_m1": 0.5, "ey_a0": 0.5},
        ],
    )
    def test_rejects_invalid_inputs(self, raw):
        with pytest.raises(InvalidInput):
            compute_nde_bounds(raw)

    @settings(max_examples=200, deadline=None)
    @given(p1=unit_interval, e0=unit_interval, e1=unit_interval, ey0=unit_interval)
    def test_width_is_non_negative(self, p1, e0, e1, ey0):
        bounds = compute_nde_bounds(_inputs(p1, e0, e1, ey0))
        assert bounds.lower <= bounds.upper + 1e-12
        assert -1.0 <= bounds.lower and bounds.upper <= 1.0

    @settings(max_examples=100, deadline=None)
    @given(
        p1=unit_interval,
        e0=unit_interval,
        e1=unit_interval,
        ey0=st.floats(min_value=0.0, max_value=0.5),
        shift=st.floats(min_value=0.0, max_value=0.5),
    )
    def test_outcome_shift_moves_both_bounds(self, p1, e0, e1, ey0, shift):
        base = compute_nde_bounds(_inputs(p1, e0, e1, ey0))
        moved = compute_nde_bounds(_inputs(p1, e0, e1, ey0 + shift))
        assert moved.lower == pytest.approx(base.lower - shift, abs=1e-12)
        assert moved.upper == pytest.approx(base.upper - shift, abs=1e-12)

    def test_vectorized_bounds_match_scalar(self):
        lower, upper = bound_arrays([0.5, 1.0], [0.5, 0.0], [0.6, 0.3], [0.7, 0.9], [0.5, 0.2])
        np.testing.assert_allclose(lower, [-0.2, 0.1])
        np.testing.assert_allclose(upper, [0.5, 0.1])


class TestValidity:
    @settings(max_examples=300, deadline=None)
    @given(
        vector=st.tuples(*[st.floats(min_value=-4.0, max_value=4.0) for _ in range(9)]),
    )
    def test_population_truth_lies_inside(self, vector):
        config = ModelConfig.from_vector(vector, outcome_kind=OutcomeKind.BINARY)
        bounds = compute_nde_bounds(closed_form_bounds_input(config))
        assert bounds.contains(truth_closed_form(config).nde, tol=1e-9)

    def test_corner_settings(self):
        levels = np.array([-3.0, 3.0])
        corners = np.array(np.meshgrid(*[levels] * 9, indexing="ij")).reshape(9, -1).T
        arrays = evaluate_parameters(corners, OutcomeKind.BINARY, nodes=64)
        lower, upper = bound_arrays(
            1.0 - arrays.gamma, arrays.gamma, arrays.eh0, arrays.eh1, arrays.ey_control
        )
        assert np.all(lower - 1e-9 <= arrays.true_nde)
        assert np.all(arrays.true_nde <= upper + 1e-9)


class TestBoundsFromData:
    def test_eight_rows(self, eight_rows):
        bounds = bounds_from_data(eight_rows)
        assert (bounds.lower, bounds.upper) == (-0.75, 0.25)

    def test_continuous_outcome(self):
        data = ObservedDataset(np.array([0, 1]), np.array([0, 1]), np.array([0.5, 2.0]))
        with pytest.raises(NotBinaryOutcome):
            bounds_from_data(data)

    def test_empty_treated_cell(self):
        data = ObservedDataset(np.array([0, 0, 1]), np.array([0, 1, 1]), np.array([1.0, 0.0, 1.0]))
        with pytest.raises(PositivityViolation) as info:
            bounds_from_data(data)
        assert info.value.cells == [(1, 0)]

    def test_empty_control_cell_is_allowed(self):
        data = ObservedDataset(
            np.array([0, 0, 1, 1]), np.array([1, 1, 0, 1]), np.array([1.0, 0.0, 1.0, 0.0])
        )
        bounds = bounds_from_data(data)
        assert bounds.lower == pytest.approx(-0.5)
        assert bounds.upper == pytest.approx(-0.5)

    def test_simulated_data_approaches_population_bounds(self, binary_config):
        n = 400_000
        data = simulate_observed(binary_config, n, seed=44).observed
        sample = bounds_from_data(data)
        population = compute_nde_bounds(closed_form_bounds_input(binary_config))
        tol = 0.02
        assert sample.lower == pytest.approx(population.lower, abs=tol)
        assert sample.upper == pytest.approx(population.upper, abs=tol)

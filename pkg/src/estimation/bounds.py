"""Nonparametric bounds on the NDE for binary A, M and Y.

lower = max(0, p0 + e0 - 1) + max(0, p1 + e1 - 1) - E[Y | A=0]
upper = min(p0, e0) + min(p1, e1) - E[Y | A=0]

with p_m = P(M=m | A=0) and e_m = E[Y | A=1, M=m]. The bounds hold without
the cross-world independence assumption.
"""

from typing import Any, Mapping

import numpy as np
from pydantic import ValidationError

from ..models.config import describe_validation_error
from ..models.counterfactuals import ObservedDataset
from ..models.errors import InvalidInput, NotBinaryOutcome, PositivityViolation
from ..models.estimates import BoundsInput, NdeBounds
from .gformula import cell_statistics


def bound_arrays(p0, p1, e0, e1, ey_a0) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized lower and upper bounds, clipped to [-1, 1]."""
    p0, p1, e0, e1, ey_a0 = (np.asarray(v, dtype=float) for v in (p0, p1, e0, e1, ey_a0))
    lower = np.maximum(0.0, p0 + e0 - 1.0) + np.maximum(0.0, p1 + e1 - 1.0) - ey_a0
    upper = np.minimum(p0, e0) + np.minimum(p1, e1) - ey_a0
    return np.clip(lower, -1.0, 1.0), np.clip(upper, -1.0, 1.0)


def _validated(inp: BoundsInput | Mapping[str, Any]) -> BoundsInput:
    data = inp.model_dump() if isinstance(inp, BoundsInput) else dict(inp)
    try:
        return BoundsInput.model_validate(data)
    except ValidationError as e:
        raise InvalidInput(f"invalid bounds input: {describe_validation_error(e)}") from e


def compute_nde_bounds(inp: BoundsInput | Mapping[str, Any]) -> NdeBounds:
    """Sharp bounds on the NDE of A=1 versus A=0.

    Raises:
        InvalidInput: probabilities outside [0, 1] or a mediator law not summing to 1.
    """
    inp = _validated(inp)
    lower, upper = bound_arrays(inp.p_m0_a0, inp.p_m1_a0, inp.ey_a1_m0, inp.ey_a1_m1, inp.ey_a0)
    lower, upper = float(lower), float(upper)
    return NdeBounds(
        lower=lower,
        upper=upper,
        informative=not (lower == -1.0 and upper == 1.0),
        contains_zero=lower <= 0.0 <= upper,
    )


def bounds_from_data(data: ObservedDataset) -> NdeBounds:
    """Plug-in bounds from the cell statistics of a binary-outcome dataset.

    Raises:
        NotBinaryOutcome: Y is not binary.
        PositivityViolation: a cell (A=1, M=m) or the arm A=0 is empty.
    """
    if not data.is_binary:
        raise NotBinaryOutcome("NDE bounds need a binary outcome")
    cells = cell_statistics(data, strict=False)
    missing = [(1, m) for m in (0, 1) if cells.counts[1][m] == 0]
    if sum(cells.counts[0]) == 0:
        missing.extend((0, m) for m in (0, 1))
    if missing:
        raise PositivityViolation(f"bounds need non-empty cells: {missing}", missing)
    return compute_nde_bounds(
        {
            "p_m0_a0": cells.p_m_given_a(0, 0),
            "p_m1_a0": cells.p_m_given_a(1, 0),
            "ey_a1_m0": cells.mean_y[1][0],
            "ey_a1_m1": cells.mean_y[1][1],
            "ey_a0": cells.mean_y_given_a[0],
        }
    )

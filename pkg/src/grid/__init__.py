"""Parameter grids over the structural model and their bias summaries."""

from .engine import GridResults, ParameterGrid, build_grid, confirm_extremes, run_grid
from .summary import interaction_sweep, summarize_bias, sweep_frame, sweep_values

__all__ = [
    "GridResults",
    "ParameterGrid",
    "build_grid",
    "confirm_extremes",
    "interaction_sweep",
    "run_grid",
    "summarize_bias",
    "sweep_frame",
    "sweep_values",
]

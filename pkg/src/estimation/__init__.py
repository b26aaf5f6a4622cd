"""Estimators: mediational g-formula, LSEM identification and NDE bounds."""

from .gformula import cell_statistics, cell_sums, estimate_gformula, gformula_from_cells
from .bounds import bound_arrays, bounds_from_data, compute_nde_bounds
from .lsem import LsemDataset, fit_lsem, lsem_effects, lsem_nested_effects, simulate_lsem
from .study import GformulaStudy, mc_gformula_study

__all__ = [
    "GformulaStudy",
    "LsemDataset",
    "bound_arrays",
    "bounds_from_data",
    "cell_statistics",
    "cell_sums",
    "compute_nde_bounds",
    "estimate_gformula",
    "fit_lsem",
    "gformula_from_cells",
    "lsem_effects",
    "lsem_nested_effects",
    "mc_gformula_study",
    "simulate_lsem",
]

"""Exhaustive parameter grids: construction, evaluation and Monte Carlo confirmation.

Settings are ordered lexicographically by parameter with alpha0 varying
fastest and beta5 slowest; a setting's index fixes its position, its
Monte Carlo seed and its output row.
"""

from collections.abc import Sequence
from typing import Iterator, Optional, overload

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from ..config import GRID_MAX_SETTINGS, MC_GRID_GATE, get_grid_chunk_size, get_quadrature_nodes
from ..estimation.bounds import bound_arrays
from ..estimation.study import mc_gformula_study
from ..models.config import PARAMETER_NAMES, ModelConfig, OutcomeKind
from ..models.errors import GridTooLarge, InvalidInput, MediationError, SettingFailed
from ..models.grid import RESULT_COLUMNS, GridMethod, GridResultRow, GridSpec
from ..oracle.closed_form import evaluate_parameters
from ..simulation.streams import mix_seed
from ..utils.logging_config import get_logger

logger = get_logger(__name__)


class ParameterGrid(Sequence):
    """Lazy, index-addressable Cartesian product of parameter value lists."""

    def __init__(self, spec: GridSpec):
        self.spec = spec
        self.values = spec.resolved_values()
        self._settings = spec.model_settings()
        # Slowest parameter first, so C-order unravelling leaves alpha0 fastest.
        self._lists = [np.asarray(self.values[name]) for name in reversed(PARAMETER_NAMES)]
        self._shape = tuple(len(v) for v in self._lists)
        self._size = int(np.prod(self._shape, dtype=np.int64))

    def __len__(self) -> int:
        return self._size

    def parameters_at(self, indices: np.ndarray) -> np.ndarray:
        """(len(indices), 9) coefficient rows for the given setting indices."""
        indices = np.asarray(indices, dtype=np.int64)
        if indices.size and (indices.min() < 0 or indices.max() >= self._size):
            raise IndexError("setting index out of range")
        positions = np.unravel_index(indices, self._shape)
        columns = [values[pos] for values, pos in zip(self._lists, positions)]
        return np.column_stack(columns[::-1]).astype(float)

    @property
    def matrix(self) -> np.ndarray:
        """All settings as a (size, 9) array in index order."""
        return self.parameters_at(np.arange(self._size))

    @overload
    def __getitem__(self, index: int) -> ModelConfig: ...

    @overload
    def __getitem__(self, index: slice) -> list[ModelConfig]: ...

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(self._size))]
        if index < 0:
            index += self._size
        row = self.parameters_at(np.array([index]))[0]
        return ModelConfig.from_vector(row, **self._settings)

    def __iter__(self) -> Iterator[ModelConfig]:
        for i in range(self._size):
            yield self[i]


def build_grid(spec: GridSpec, max_settings: Optional[int] = None) -> ParameterGrid:
    """The full Cartesian product described by spec.

    Raises:
        GridTooLarge: the grid is above the size cap and spec.allow_large is off.
    """
    cap = GRID_MAX_SETTINGS if max_settings is None else max_settings
    grid = ParameterGrid(spec)
    if len(grid) > cap and not spec.allow_large:
        raise GridTooLarge(
            f"grid has {len(grid)} settings, above the cap of {cap}; set allow_large to run it"
        )
    logger.info("grid_built", settings=len(grid), outcome_kind=spec.outcome_kind.value)
    return grid


class GridResults(Sequence):
    """Index-ordered grid results backed by a DataFrame with RESULT_COLUMNS."""

    def __init__(self, frame: pd.DataFrame):
        missing = [c for c in RESULT_COLUMNS if c not in frame.columns]
        if missing:
            raise InvalidInput(f"grid results are missing columns: {missing}")
        self.frame = frame.loc[:, list(RESULT_COLUMNS)].sort_values("index").reset_index(drop=True)

    def __len__(self) -> int:
        return len(self.frame)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        record = self.frame.iloc[i].to_dict()
        for key in ("bounds_lower", "bounds_upper"):
            if pd.isna(record[key]):
                record[key] = None
        record["index"] = int(record["index"])
        return GridResultRow.model_validate(record)

    def __iter__(self) -> Iterator[GridResultRow]:
        for i in range(len(self)):
            yield self[i]

    @classmethod
    def from_rows(cls, rows: Sequence[GridResultRow]) -> "GridResults":
        records = [row.model_dump(mode="json") for row in rows]
        return cls(pd.DataFrame.from_records(records, columns=list(RESULT_COLUMNS)))


def _frame(
    indices: np.ndarray,
    params: np.ndarray,
    true_nde: np.ndarray,
    true_nie: np.ndarray,
    est_nde: np.ndarray,
    est_nie: np.ndarray,
    lower: Optional[np.ndarray],
    upper: Optional[np.ndarray],
    method: GridMethod,
) -> pd.DataFrame:
    columns: dict[str, object] = {"index": indices.astype(np.int64)}
    columns.update({name: params[:, j] for j, name in enumerate(PARAMETER_NAMES)})
    nan = np.full(indices.shape, np.nan)
    columns.update(
        true_nde=true_nde,
        true_nie=true_nie,
        est_nde=est_nde,
        est_nie=est_nie,
        bias_nde=true_nde - est_nde,
        bias_nie=true_nie - est_nie,
        bounds_lower=nan if lower is None else lower,
        bounds_upper=nan if upper is None else upper,
        method=method.value,
    )
    return pd.DataFrame(columns)


def _quadrature_chunk(
    grid: ParameterGrid, indices: np.ndarray, nodes: int, chunk: int
) -> pd.DataFrame:
    spec = grid.spec
    params = grid.parameters_at(indices)
    try:
        arrays = evaluate_parameters(params, spec.outcome_kind, spec.u_mean, spec.u_sd, nodes)
    except MediationError as e:
        # Locate the first failing setting so the error names it.
        for i, row in zip(indices, params):
            try:
                evaluate_parameters(row, spec.outcome_kind, spec.u_mean, spec.u_sd, nodes)
            except MediationError as inner:
                raise SettingFailed(int(i), inner) from inner
        raise SettingFailed(int(indices[0]), e) from e
    lower = upper = None
    if spec.outcome_kind == OutcomeKind.BINARY:
        lower, upper = bound_arrays(
            1.0 - arrays.gamma, arrays.gamma, arrays.eh0, arrays.eh1, arrays.ey_control
        )
    logger.info("grid_chunk_done", chunk=chunk, rows=len(indices))
    return _frame(
        indices,
        params,
        arrays.true_nde,
        arrays.true_nie,
        arrays.est_nde,
        arrays.est_nie,
        lower,
        upper,
        GridMethod.QUADRATURE,
    )


def _monte_carlo_setting(grid: ParameterGrid, index: int) -> pd.DataFrame:
    spec = grid.spec
    config = grid[index]
    try:
        study = mc_gformula_study(config, spec.mc_n, mix_seed(spec.base_seed, index), jobs=1)
    except MediationError as e:
        raise SettingFailed(index, e) from e
    lower = upper = None
    if config.is_binary:
        cells = study.cells
        lo, up = bound_arrays(
            cells.p_m_given_a(0, 0),
            cells.p_m_given_a(1, 0),
            cells.mean_y[1][0],
            cells.mean_y[1][1],
            cells.mean_y_given_a[0],
        )
        lower, upper = np.atleast_1d(lo), np.atleast_1d(up)
    logger.debug("grid_setting_done", index=index, bias_nde=study.bias_nde)
    return _frame(
        np.array([index]),
        config.parameter_vector()[None, :],
        np.array([study.truth.nde]),
        np.array([study.truth.nie]),
        np.array([study.estimate.nde]),
        np.array([study.estimate.nie]),
        lower,
        upper,
        GridMethod.MONTE_CARLO,
    )


def _run(tasks, jobs: int) -> list[pd.DataFrame]:
    if jobs == 1:
        return [fn(*args) for fn, args in tasks]
    return Parallel(n_jobs=jobs, prefer="threads")(delayed(fn)(*args) for fn, args in tasks)


def run_grid(
    spec: GridSpec,
    jobs: Optional[int] = None,
    max_settings: Optional[int] = None,
) -> GridResults:
    """Truth, estimand, bias and (binary Y) bounds for every setting.

    Quadrature evaluates chunks of settings as arrays. Monte Carlo runs
    mc_gformula_study per setting with seed mix_seed(base_seed, index).
    Rows come back ordered by index whatever the number of workers.

    Raises:
        GridTooLarge: the grid exceeds its cap, or a monte_carlo grid exceeds
            the MC gate without allow_full_mc.
        SettingFailed: a setting's evaluation failed; carries its index.
    """
    grid = build_grid(spec, max_settings)
    jobs = jobs or spec.parallelism
    if spec.method == GridMethod.QUADRATURE:
        nodes = spec.nodes or get_quadrature_nodes()
        chunk_size = get_grid_chunk_size()
        starts = range(0, len(grid), chunk_size)
        tasks = [
            (_quadrature_chunk, (grid, np.arange(s, min(s + chunk_size, len(grid))), nodes, c))
            for c, s in enumerate(starts)
        ]
    else:
        if len(grid) > MC_GRID_GATE and not spec.allow_full_mc:
            raise GridTooLarge(
                f"monte_carlo over {len(grid)} settings exceeds the gate of {MC_GRID_GATE}; "
                "set allow_full_mc or screen with quadrature and use confirm_extremes"
            )
        tasks = [(_monte_carlo_setting, (grid, i)) for i in range(len(grid))]
    frames = _run(tasks, jobs)
    results = GridResults(pd.concat(frames, ignore_index=True))
    logger.info("grid_done", settings=len(results), method=spec.method.value, jobs=jobs)
    return results


def confirm_extremes(
    results: GridResults, spec: GridSpec, k: int = 5, jobs: Optional[int] = None
) -> GridResults:
    """Re-evaluate the k settings with the largest |bias_nde| by Monte Carlo.

    Seeds follow mix_seed(base_seed, index), so a confirmed row equals the
    row a full monte_carlo grid would produce for that setting.
    """
    if k < 1:
        raise InvalidInput("k must be at least 1")
    grid = ParameterGrid(spec)
    order = results.frame["bias_nde"].abs().sort_values(ascending=False, kind="stable")
    chosen = results.frame.loc[order.index[:k], "index"].astype(int).tolist()
    tasks = [(_monte_carlo_setting, (grid, i)) for i in chosen]
    frames = _run(tasks, jobs or spec.parallelism)
    logger.info("extremes_confirmed", k=len(chosen), indices=chosen)
    return GridResults(pd.concat(frames, ignore_index=True))

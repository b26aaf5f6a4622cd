"""CSV datasets: factual (A, M, Y) rows, LSEM (A, L, M, Y) rows and grid results.

Simulation output may carry extra cf_ columns with the unit's counterfactuals;
readers ignore them.
"""

from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
import pandas as pd

from ..estimation.lsem import LsemDataset
from ..grid.engine import GridResults
from ..models.counterfactuals import CounterfactualBatch, ObservedDataset
from ..models.errors import EmptyFile, FormatError, IoError
from ..models.grid import RESULT_COLUMNS
from ..utils.logging_config import get_logger

logger = get_logger(__name__)

PathLike = Union[str, Path]

OBSERVED_HEADER = ("A", "M", "Y")
LSEM_HEADER = ("A", "L", "M", "Y")

# Header line is line 1, so data row i sits on line i + 2.
_FIRST_DATA_LINE = 2


def _read_raw(path: PathLike) -> pd.DataFrame:
    path = Path(path)
    if not path.is_file():
        raise IoError(f"dataset not found: {path}")
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, skip_blank_lines=False)
    except pd.errors.EmptyDataError as e:
        raise EmptyFile(f"{path} is empty") from e
    except pd.errors.ParserError as e:
        raise FormatError(f"{path} is not valid CSV: {e}") from e
    except OSError as e:
        raise IoError(f"cannot read {path}: {e}") from e
    frame.columns = [str(c).strip() for c in frame.columns]
    # Trailing blank lines are not rows.
    blank = frame.fillna("").apply(lambda col: col.str.strip() == "").all(axis=1).to_numpy()
    keep = len(frame)
    while keep > 0 and blank[keep - 1]:
        keep -= 1
    return frame.iloc[:keep]


def _check_header(frame: pd.DataFrame, expected: Sequence[str]) -> None:
    core = [c for c in frame.columns if not c.startswith("cf_")]
    if core != list(expected):
        raise FormatError(f"header must be {','.join(expected)}, got {','.join(frame.columns)}", 1)


def _numeric(frame: pd.DataFrame, column: str, binary: bool = False) -> np.ndarray:
    raw = frame[column].str.strip()
    values = pd.to_numeric(raw, errors="coerce").to_numpy(dtype=float)
    bad = ~np.isfinite(values)
    if binary:
        bad |= ~np.isin(values, (0.0, 1.0))
    if bad.any():
        row = int(np.flatnonzero(bad)[0])
        expected = "0 or 1" if binary else "a finite number"
        raise FormatError(
            f"column {column} must be {expected}, got {raw.iloc[row]!r}", row + _FIRST_DATA_LINE
        )
    return values


def read_dataset(path: PathLike) -> ObservedDataset:
    """Read a factual dataset with header A,M,Y.

    The outcome kind is inferred: binary iff every Y is 0 or 1.

    Raises:
        FormatError: bad header or value; the message names the line.
        EmptyFile: no data rows.
        IoError: the file cannot be read.
    """
    frame = _read_raw(path)
    _check_header(frame, OBSERVED_HEADER)
    if frame.empty:
        raise EmptyFile(f"{path} has no data rows")
    data = ObservedDataset(
        _numeric(frame, "A", binary=True),
        _numeric(frame, "M", binary=True),
        _numeric(frame, "Y"),
    )
    logger.info("dataset_read", path=str(path), rows=len(data), outcome_kind=data.outcome_kind.value)
    return data


def read_lsem_dataset(path: PathLike) -> LsemDataset:
    """Read an LSEM dataset with header A,L,M,Y."""
    frame = _read_raw(path)
    _check_header(frame, LSEM_HEADER)
    if frame.empty:
        raise EmptyFile(f"{path} has no data rows")
    data = LsemDataset(
        _numeric(frame, "A", binary=True),
        _numeric(frame, "L"),
        _numeric(frame, "M"),
        _numeric(frame, "Y"),
    )
    logger.info("lsem_dataset_read", path=str(path), rows=len(data))
    return data


def dataset_frame(
    data: ObservedDataset, counterfactuals: Optional[CounterfactualBatch] = None
) -> pd.DataFrame:
    """Factual columns, followed by cf_ columns when counterfactuals are given."""
    frame = data.to_frame()
    if counterfactuals is not None:
        frame = pd.concat([frame, counterfactuals.counterfactual_frame()], axis=1)
    return frame


def write_frame(frame: pd.DataFrame, path: Optional[PathLike] = None) -> Optional[str]:
    """Write a frame as CSV; floats use the shortest round-trip representation.

    Returns:
        The CSV text when path is None, otherwise None.

    Raises:
        IoError: the file cannot be written.
    """
    if path is None:
        return frame.to_csv(index=False, lineterminator="\n")
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, lineterminator="\n")
    except OSError as e:
        raise IoError(f"cannot write {path}: {e}") from e
    logger.info("frame_written", path=str(path), rows=len(frame))
    return None


def write_dataset(
    data: ObservedDataset,
    path: Optional[PathLike] = None,
    counterfactuals: Optional[CounterfactualBatch] = None,
) -> Optional[str]:
    return write_frame(dataset_frame(data, counterfactuals), path)


def write_lsem_dataset(data: LsemDataset, path: Optional[PathLike] = None) -> Optional[str]:
    return write_frame(data.to_frame(), path)


def read_grid_results(path: PathLike) -> GridResults:
    """Read grid rows written by the grid subcommand.

    Raises:
        FormatError: the header differs from the result columns.
        EmptyFile: no rows.
    """
    path = Path(path)
    if not path.is_file():
        raise IoError(f"grid results not found: {path}")
    try:
        frame = pd.read_csv(path)
    except pd.errors.EmptyDataError as e:
        raise EmptyFile(f"{path} is empty") from e
    except (pd.errors.ParserError, OSError) as e:
        raise IoError(f"cannot read {path}: {e}") from e
    if tuple(frame.columns) != RESULT_COLUMNS:
        raise FormatError(f"header must be {','.join(RESULT_COLUMNS)}", 1)
    if frame.empty:
        raise EmptyFile(f"{path} has no data rows")
    logger.info("grid_results_read", path=str(path), rows=len(frame))
    return GridResults(frame)

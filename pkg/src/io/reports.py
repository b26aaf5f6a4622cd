"""Serialize results: key=value text, JSON lines, CSV tables and the bias summary block.

Reals are written as the shortest decimal that round-trips (Python repr), so
repeated runs produce byte-identical output.
"""

import json
import math
import sys
from collections.abc import Mapping, Sequence
from enum import Enum
from pathlib import Path
from typing import Any, Optional, TextIO, Union

import pandas as pd
from pydantic import BaseModel

from ..grid.engine import GridResults
from ..grid.summary import sweep_frame
from ..models.counterfactuals import ObservedDataset
from ..models.errors import IoError
from ..models.grid import BiasSummary, GridResultRow, SweepRow
from ..models.run import OutputFormat
from ..utils.logging_config import get_logger

logger = get_logger(__name__)

PathLike = Union[str, Path]


def format_value(value: Any) -> str:
    """Text form of a scalar for key=value lines."""
    if value is None:
        return "NA"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, float):
        if math.isnan(value):
            return "NA"
        return repr(value)
    return str(value)


def flatten(value: Any, prefix: str = "") -> list[tuple[str, Any]]:
    """Nested mappings and sequences as dotted key/value pairs."""
    if isinstance(value, BaseModel):
        value = value.model_dump()
    if isinstance(value, Mapping):
        pairs: list[tuple[str, Any]] = []
        for key, item in value.items():
            pairs.extend(flatten(item, f"{prefix}.{key}" if prefix else str(key)))
        return pairs
    if isinstance(value, (list, tuple)):
        pairs = []
        for i, item in enumerate(value):
            pairs.extend(flatten(item, f"{prefix}.{i}" if prefix else str(i)))
        return pairs
    return [(prefix, value)]


def key_value_lines(obj: BaseModel) -> str:
    pairs = obj.as_lines() if hasattr(obj, "as_lines") else flatten(obj)
    return "".join(f"{key}={format_value(value)}\n" for key, value in pairs)


def _json_default(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _json_line(record: Any) -> str:
    if isinstance(record, BaseModel):
        record = record.model_dump(mode="json")
    return json.dumps(record, default=_json_default, allow_nan=False) + "\n"


def _frame_jsonl(frame: pd.DataFrame) -> str:
    lines = []
    for record in frame.to_dict(orient="records"):
        clean = {k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in record.items()}
        lines.append(json.dumps(clean, default=_json_default))
    return "".join(line + "\n" for line in lines)


def summary_block(summary: BiasSummary) -> str:
    """Worst-case table followed by bias ranges and the (beta4, beta5) cross-tab."""
    out = ["# worst cases", "label,index,true_nde,est_nde,bias_nde,bounds_lower,bounds_upper"]
    for row in summary.worst_cases:
        out.append(
            ",".join(
                [row.label, str(row.index)]
                + [format_value(v) for v in (row.true_nde, row.est_nde, row.bias_nde, row.bounds_lower, row.bounds_upper)]
            )
        )
    out.append("# ranges")
    out.append(f"rows={summary.n_rows}")
    for name in ("bias_nde_min", "bias_nde_max", "bias_nie_min", "bias_nie_max"):
        out.append(f"{name}={format_value(getattr(summary, name))}")
    out.append(f"argmin_index={summary.argmin.index}")
    out.append(f"argmax_index={summary.argmax.index}")
    for stratum in summary.strata:
        out.append(
            f"{stratum.label}: count={stratum.count} "
            f"bias_nde_min={format_value(stratum.bias_nde_min)} "
            f"bias_nde_max={format_value(stratum.bias_nde_max)} "
            f"max_abs_bias_nde={format_value(stratum.max_abs_bias_nde)}"
        )
    for row in summary.worst_cases:
        params = " ".join(f"{k}={format_value(v)}" for k, v in row.parameters.items())
        out.append(f"{row.label}_parameters: {params}")
    out.append("# interaction")
    out.append("beta4,beta5,max_abs_bias_nde,count")
    for cell in summary.interaction:
        out.append(
            f"{format_value(cell.beta4)},{format_value(cell.beta5)},"
            f"{format_value(cell.max_abs_bias_nde)},{cell.count}"
        )
    return "\n".join(out) + "\n"


def render(obj: Any, fmt: OutputFormat = OutputFormat.CSV) -> str:
    """Text for a result object.

    Tables (grid rows, sweep rows, datasets, frames) become CSV or JSON lines.
    BiasSummary becomes the summary block, or one JSON object for jsonl.
    Other models become key=value lines, or one JSON object for jsonl.
    """
    fmt = OutputFormat(fmt)
    frame: Optional[pd.DataFrame] = None
    if isinstance(obj, GridResults):
        frame = obj.frame
    elif isinstance(obj, ObservedDataset):
        frame = obj.to_frame()
    elif isinstance(obj, pd.DataFrame):
        frame = obj
    elif isinstance(obj, Sequence) and obj and all(isinstance(r, SweepRow) for r in obj):
        frame = sweep_frame(obj)
    elif isinstance(obj, Sequence) and obj and all(isinstance(r, GridResultRow) for r in obj):
        frame = GridResults.from_rows(obj).frame

    if frame is not None:
        if fmt == OutputFormat.JSONL:
            return _frame_jsonl(frame)
        return frame.to_csv(index=False, lineterminator="\n")
    if fmt == OutputFormat.JSONL:
        return _json_line(obj)
    if isinstance(obj, BiasSummary):
        return summary_block(obj)
    if isinstance(obj, BaseModel):
        return key_value_lines(obj)
    if isinstance(obj, Mapping):
        return "".join(f"{k}={format_value(v)}\n" for k, v in flatten(obj))
    raise TypeError(f"cannot render {type(obj).__name__}")


def emit_report(
    obj: Any,
    fmt: OutputFormat = OutputFormat.CSV,
    path: Optional[PathLike] = None,
    stream: Optional[TextIO] = None,
) -> None:
    """Write a result to path, or to stream (stdout by default).

    Raises:
        IoError: the path cannot be written.
    """
    write_text(render(obj, fmt), path, stream)


def write_text(text: str, path: Optional[PathLike] = None, stream: Optional[TextIO] = None) -> None:
    """Write rendered output to path, or to stream (stdout by default)."""
    if path is None:
        (stream or sys.stdout).write(text)
        return
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise IoError(f"cannot write {path}: {e}") from e
    logger.info("report_written", path=str(path), bytes=len(text))

"""Run configuration read from YAML/JSON config files."""

from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from .config import ModelConfig
from .estimates import BoundsInput
from .grid import GridSpec


class OutputFormat(str, Enum):
    CSV = "csv"
    JSONL = "jsonl"


class IoPaths(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    data: Optional[Path] = Field(None, description="Input dataset (CSV with header A,M,Y)")
    out: Optional[Path] = Field(None, description="Output file; stdout when absent")


class RunConfig(BaseModel):
    """Subcommand payloads plus the shared run options.

    CLI flags override the values read here.
    """

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        json_schema_extra={
            "example": {
                "model": {"outcome_kind": "binary", "alpha0": -0.85, "alpha2": -1.2},
                "io": {"out": "results/truth.txt"},
                "output_format": "csv",
                "n": 1000000,
                "seed": 2470,
            }
        },
    )

    model: Optional[ModelConfig] = None
    grid: Optional[GridSpec] = None
    bounds: Optional[BoundsInput] = Field(None, description="Inputs for the bounds subcommand")
    io: IoPaths = Field(default_factory=IoPaths)
    output_format: OutputFormat = OutputFormat.CSV
    n: Optional[int] = Field(None, ge=1)
    seed: Optional[int] = Field(None, ge=0, lt=2**64)
    method: Optional[str] = None
    jobs: Optional[int] = Field(None, ge=1)

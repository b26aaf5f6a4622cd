"""Configuration loading, dataset CSV I/O and report emission."""

from .config_loader import ConfigLoader, parse_config
from .datasets import (
    LSEM_HEADER,
    OBSERVED_HEADER,
    dataset_frame,
    read_dataset,
    read_grid_results,
    read_lsem_dataset,
    write_dataset,
    write_frame,
    write_lsem_dataset,
)
from .reports import emit_report, format_value, render, summary_block, write_text

__all__ = [
    "ConfigLoader",
    "LSEM_HEADER",
    "OBSERVED_HEADER",
    "dataset_frame",
    "emit_report",
    "format_value",
    "parse_config",
    "read_dataset",
    "read_grid_results",
    "read_lsem_dataset",
    "render",
    "summary_block",
    "write_dataset",
    "write_frame",
    "write_lsem_dataset",
    "write_text",
]

"""Logging helpers."""

from .logging_config import bind_run_context, configure_from_env, get_logger, setup_logging

__all__ = [
    "bind_run_context",
    "get_logger",
    "setup_logging",
    "configure_from_env",
]

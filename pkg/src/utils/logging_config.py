"""Structured logging for crossworld runs.

Events are built by structlog and handed to the standard logging handlers,
so the console (always stderr) and LOG_FILE see the same records. Stdout is
left to results.
"""

import logging
import os
import sys
from pathlib import Path
from typing import Any, Optional

import structlog
from pythonjsonlogger import jsonlogger

# LogRecord attributes that are not event fields
_RECORD_FIELDS = frozenset(vars(logging.LogRecord("", 0, "", 0, "", (), None))) | {"message", "asctime"}


class KeyValueFormatter(logging.Formatter):
    """Plain text line followed by the event's fields as key=value pairs."""

    def format(self, record: logging.LogRecord) -> str:
        line = super().format(record)
        fields = {k: v for k, v in vars(record).items() if k not in _RECORD_FIELDS}
        if not fields:
            return line
        return line + " " + " ".join(f"{k}={v}" for k, v in sorted(fields.items()))


def _json_formatter(fmt: str) -> logging.Formatter:
    return jsonlogger.JsonFormatter(fmt, rename_fields={"levelname": "level", "asctime": "timestamp"})


def setup_logging(
    log_level: str = "INFO",
    log_format: str = "text",
    log_file: Optional[str] = None,
    enable_console: bool = True,
) -> None:
    """
    Setup structlog on top of standard logging.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_format: Console format, 'json' or 'text'
        log_file: Optional path to a JSON-lines log file
        enable_console: Whether to log to stderr
    """
    level = getattr(logging, log_level.upper(), logging.INFO)

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.StackInfoRenderer(),
            structlog.dev.set_exc_info,
            structlog.stdlib.render_to_log_kwargs,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=False,
    )

    handlers: list[logging.Handler] = []

    if enable_console:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(level)
        if log_format == "json":
            console_handler.setFormatter(_json_formatter("%(asctime)s %(levelname)s %(name)s %(message)s"))
        else:
            console_handler.setFormatter(
                KeyValueFormatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
            )
        handlers.append(console_handler)

    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(level)
        file_handler.setFormatter(
            _json_formatter("%(asctime)s %(levelname)s %(name)s %(message)s %(pathname)s %(lineno)d")
        )
        handlers.append(file_handler)

    root_logger = logging.getLogger()
    for handler in root_logger.handlers:
        handler.close()
    root_logger.handlers = handlers
    root_logger.setLevel(level)


def get_logger(name: str) -> structlog.BoundLogger:
    """Logger for a module; pass __name__."""
    return structlog.get_logger(name)


def bind_run_context(**values: Any) -> None:
    """Attach fields such as the subcommand and seed to every later event."""
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(**values)


def configure_from_env() -> None:
    """Configure logging from LOG_LEVEL, LOG_FORMAT and LOG_FILE."""
    setup_logging(
        log_level=os.getenv("LOG_LEVEL", "INFO"),
        log_format=os.getenv("LOG_FORMAT", "text"),
        log_file=os.getenv("LOG_FILE") or None,
        enable_console=True,
    )


# Initialize logging on import
configure_from_env()

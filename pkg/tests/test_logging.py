"""Tests for log routing: stderr console, JSON log file and run context."""

import json
import logging

import pytest
import structlog

from src.cli import main
from src.utils.logging_config import (
    KeyValueFormatter,
    bind_run_context,
    configure_from_env,
    get_logger,
    setup_logging,
)


@pytest.fixture
def log_file(tmp_path):
    path = tmp_path / "logs" / "run.jsonl"
    setup_logging(log_level="DEBUG", log_file=str(path), enable_console=False)
    yield path
    structlog.contextvars.clear_contextvars()
    configure_from_env()


def _records(path) -> list[dict]:
    for handler in logging.getLogger().handlers:
        handler.flush()
    return [json.loads(line) for line in path.read_text().splitlines()]


class TestLogFile:
    def test_structlog_events_reach_the_file(self, log_file):
        get_logger("crossworld.test").info("grid_done", settings=32, method="quadrature")
        (record,) = _records(log_file)
        assert record["message"] == "grid_done"
        assert record["settings"] == 32
        assert record["level"] == "INFO"
        assert record["name"] == "crossworld.test"

    def test_level_filter(self, tmp_path):
        path = tmp_path / "warn.jsonl"
        setup_logging(log_level="WARNING", log_file=str(path), enable_console=False)
        try:
            logger = get_logger("crossworld.test")
            logger.info("hidden")
            logger.warning("shown")
            assert [r["message"] for r in _records(path)] == ["shown"]
        finally:
            configure_from_env()

    def test_run_context_is_attached(self, log_file):
        bind_run_context(command="truth", seed=7)
        get_logger("crossworld.test").info("block_done", n=10)
        bind_run_context(command="grid")
        get_logger("crossworld.test").info("grid_done")
        first, second = _records(log_file)
        assert (first["command"], first["seed"], first["n"]) == ("truth", 7, 10)
        assert second["command"] == "grid"
        assert "seed" not in second

    def test_cli_run_is_logged_with_its_command(self, log_file, eight_rows_csv, capsys):
        assert main(["estimate", "--data", str(eight_rows_csv)]) == 0
        events = {r["message"]: r for r in _records(log_file)}
        assert events["command_started"]["command"] == "estimate"
        assert "command_done" in events
        assert "command_started" not in capsys.readouterr().out


class TestKeyValueFormatter:
    def test_event_fields_follow_the_message(self):
        record = logging.LogRecord("crossworld", logging.INFO, __file__, 1, "grid_done", (), None)
        record.settings = 32
        record.jobs = 4
        text = KeyValueFormatter("%(levelname)s %(message)s").format(record)
        assert text == "INFO grid_done jobs=4 settings=32"

    def test_plain_record(self):
        record = logging.LogRecord("crossworld", logging.INFO, __file__, 1, "done", (), None)
        assert KeyValueFormatter("%(message)s").format(record) == "done"

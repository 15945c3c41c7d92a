import re
from datetime import date

import pytest
from loguru import logger

from app.core.config import settings
from app.core.logging import PrologLogger, log_file_name
from app.core.settings.logger import LoggerSettings
from app.core.utils.logs import Profiler
from app.domain.schemas.types import LogLevel


@pytest.fixture
def records():
    """Capture the records emitted while the test runs."""
    captured: list[dict] = []
    handler = logger.add(lambda message: captured.append(message.record), level="TRACE", format="{message}")
    yield captured
    logger.remove(handler)


@pytest.mark.core
def test_log_file_name():
    """Test the daily log file name."""
    name = log_file_name("prologue", date(2024, 3, 7))
    assert name == "prologue-2024.03.07", "The name should be <app>-YYYY.MM.DD"
    assert re.fullmatch(r"\w+-\d{4}\.\d{2}\.\d{2}", log_file_name("app", date.today())), "Zero padded date"


@pytest.mark.core
@pytest.mark.parametrize(
    "method, level",
    [
        ("trace", "TRACE"),
        ("debug", "DEBUG"),
        ("info", "INFO"),
        ("warn", "WARNING"),
        ("error", "ERROR"),
    ],
)
def test_prolog_logger_levels(records, method, level):
    """Test that every logger method emits at its level with the origin bound."""
    prolog_logger = PrologLogger()
    getattr(prolog_logger, method)(PrologLogger, "message")
    assert records, "A record should be emitted"
    assert records[-1]["level"].name == level, f"{method} should log at {level}"
    assert records[-1]["extra"]["origin"] == "PrologLogger", "The class name is the origin"
    assert records[-1]["message"] == "message", "The message should be kept"


@pytest.mark.core
def test_prolog_logger_origin_and_cause(records):
    """Test the default origin and the cause attached to the record."""
    prolog_logger = PrologLogger("engine")
    cause = ValueError("boom")
    prolog_logger.error(None, "failed", cause)
    assert records[-1]["extra"]["origin"] == "engine", "The bound origin should be the default"
    assert records[-1]["exception"] is not None, "The cause should be attached"
    assert records[-1]["exception"].value is cause, "The attached exception should be the cause"

    prolog_logger.info(object(), 42)
    assert records[-1]["extra"]["origin"] == "object", "An instance origin is named after its class"
    assert records[-1]["message"] == "42", "Non text messages are rendered with str"


@pytest.mark.core
def test_setup_logger_degrades_to_stderr(tmp_path):
    """Test that an unwritable log folder leaves the stderr sink only."""
    blocker = tmp_path / "file"
    blocker.write_text("not a folder")
    config = LoggerSettings(LOG_FOLDER=str(blocker / "logs"))
    try:
        assert config.setup_logger("debug") is False, "The file sink can not be created under a file"
    finally:
        settings.LOGGER.setup_logger()


@pytest.mark.core
def test_setup_logger_file_sink(tmp_path):
    """Test that the file sink writes the records of the configured level."""
    config = LoggerSettings(LOG_FOLDER=str(tmp_path))
    try:
        assert config.setup_logger("info") is True, "The file sink should be active"
        logger.info("hello file")
        logger.debug("hidden")
        files = list(tmp_path.iterdir())
        assert len(files) == 1, "One daily file"
        assert files[0].name == log_file_name("prologue", date.today()), "Daily file name"
        content = files[0].read_text(encoding="utf8")
        assert "hello file" in content, "The info record should be written"
        assert "hidden" not in content, "Debug records are below the level"
    finally:
        settings.LOGGER.setup_logger()


@pytest.mark.core
def test_profiler(records):
    """Test the elapsed time stamped by the profiler."""
    profiler = Profiler("bench")
    seconds, message = profiler.stamp("step")
    assert seconds >= 0, "Elapsed time can not be negative"
    assert message.startswith("step @"), "The message should carry the elapsed time"
    profiler.log(LogLevel.INFO, "done")
    record = records[-1]
    assert record["extra"]["origin"] == "bench", "The origin should be bound"
    assert record["extra"]["time_delta"] >= 0, "The delta should be bound"
    assert record["level"].name == "INFO", "The level should be kept"

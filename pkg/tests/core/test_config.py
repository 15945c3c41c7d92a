import pytest
from loguru import logger

from app.core.config import settings
from app.domain.schemas.types import LogLevel, ReportFormat


@pytest.mark.core
def test_settings():
    """Test the settings module."""
    # Check if settings object is not None
    assert settings is not None, "Settings object should be visible and not None"

    assert hasattr(settings, "APP_NAME"), "APP_NAME should exist in settings"

    assert settings.APP_NAME == "prologue", "APP_NAME should be 'prologue'"
    logger.info(f"APP_NAME: {settings.APP_NAME}, LOG_VERBOSITY: {settings.LOGGER.LOG_VERBOSITY}")
    logger.debug(f"APP_NAME: {settings.APP_NAME}, LOG_VERBOSITY: {settings.LOGGER.LOG_VERBOSITY}")


@pytest.mark.core
def test_engine_and_bench_settings():
    """Test the ENGINE and BENCH settings."""
    assert hasattr(settings, "ENGINE"), "ENGINE should exist in settings"
    assert settings.ENGINE.ENGINE_NAME, "The engine should have a name"
    assert settings.ENGINE.ENGINE_VERSION, "The engine should have a version"
    assert settings.ENGINE.ENGINE_ISO_COMPLIANT is False, "Only a subset of ISO is implemented"
    assert isinstance(settings.ENGINE.ENGINE_INDEXING, bool), "Indexing should be a flag"

    assert hasattr(settings, "BENCH"), "BENCH should exist in settings"
    assert settings.BENCH.BENCH_ITERATIONS >= 1, "At least one measured iteration"
    assert settings.BENCH.BENCH_WARMUP >= 0, "Warmup can not be negative"
    assert settings.BENCH.BENCH_FORMAT in ReportFormat.set_options(), "The report format should be a ReportFormat"

    logger.info(f"ENGINE: {settings.ENGINE}")
    logger.info(f"BENCH: {settings.BENCH}")


@pytest.mark.core
def test_logger_settings_level():
    """Test the level resolution of the LOGGER settings."""
    assert settings.LOGGER.level("warn") is LogLevel.WARN, "The short name should resolve"
    assert settings.LOGGER.level("WARNING") is LogLevel.WARN, "The loguru name should resolve"
    assert settings.LOGGER.level("debug") is LogLevel.DEBUG, "An explicit level wins"
    with pytest.raises(ValueError):
        settings.LOGGER.level("verbose")

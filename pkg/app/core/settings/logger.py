import os
import sys
import tempfile

from loguru import logger
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.domain.schemas.types import LogLevel


class LoggerSettings(BaseSettings):
    """Logger configuration settings.

    Records go to a daily file ``<APP_NAME>-YYYY.MM.DD`` inside ``LOG_FOLDER`` (the OS temporary directory by
    default) and are mirrored to standard error from the warning level upwards.
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    APP_NAME: str = "prologue"
    LOG_VERBOSITY: str = "INFO"
    LOG_RETENTION: str = "30 days"
    LOG_ROTATION: str = "00:00"
    LOG_FORMAT: str = "{time:YYYY-MM-DDTHH:mm:ss.SSSZZ} {level} {extra[origin]} {message}"
    LOG_FOLDER: str = tempfile.gettempdir()

    @property
    def log_file_path(self) -> str:
        """Path template of the daily log file, the date is filled in by loguru."""
        return os.path.join(self.LOG_FOLDER, self.APP_NAME + "-{time:YYYY.MM.DD}")

    def level(self, level: str | None = None) -> LogLevel:
        """Resolve the configured verbosity, an explicit level wins over the environment."""
        return LogLevel.parse(level or self.LOG_VERBOSITY)

    def setup_logger(self, level: str | None = None) -> bool:
        """Configure the logger.

        Args:
            level (str, optional): overrides ``LOG_VERBOSITY``, e.g. from the command line. Defaults to None.

        Returns:
            bool: True if the file sink is active, False when only standard error is left
        """
        verbosity = self.level(level)
        stderr_level = max(logger.level(verbosity.value).no, logger.level(LogLevel.WARN.value).no)

        logger.remove()  # Remove previous handlers
        logger.configure(extra={"origin": self.APP_NAME})
        logger.add(
            sink=sys.stderr,
            colorize=True,
            format=self.LOG_FORMAT,
            level=stderr_level,
            serialize=False,
            catch=True,
            backtrace=False,
            diagnose=False,
        )
        try:
            logger.add(
                sink=self.log_file_path,
                rotation=self.LOG_ROTATION,
                retention=self.LOG_RETENTION,
                colorize=False,
                format=self.LOG_FORMAT,
                level=verbosity.value,
                serialize=False,
                catch=True,
                backtrace=False,
                diagnose=False,
                encoding="utf8",
            )
        except OSError as message:
            logger.warning(f"Log folder {self.LOG_FOLDER} is not writable, logging to stderr only: {message}")
            return False
        return True

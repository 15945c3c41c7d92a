from datetime import date

from loguru import logger

from app.domain.schemas.types import LogLevel


def log_file_name(app_name: str, day: date) -> str:
    """Name of the daily log file, ``<app>-YYYY.MM.DD``.

    Args:
        app_name (str): application prefix
        day (date): the day the file collects

    Returns:
        str: the file name without folder
    """
    return f"{app_name}-{day:%Y.%m.%d}"


class PrologLogger:
    """Leveled logger bound to an origin.

    Every method takes the origin (the object or class emitting the record), the message and an optional cause.
    The cause exception is attached to the record so the sinks render its traceback after the message line.
    """

    def __init__(self, origin: object | None = None):
        self.origin = origin

    @staticmethod
    def _origin_name(origin: object | None) -> str:
        if origin is None:
            return "-"
        if isinstance(origin, str):
            return origin
        if isinstance(origin, type):
            return origin.__name__
        return type(origin).__name__

    def log(self, level: LogLevel, origin: object | None, message: object, cause: BaseException | None = None):
        """Emit one record at the given level."""
        bound = logger.bind(origin=self._origin_name(origin if origin is not None else self.origin))
        bound.opt(exception=cause, depth=2).log(level.value, str(message))

    def trace(self, origin: object | None, message: object, cause: BaseException | None = None):
        """Finest level record."""
        self.log(LogLevel.TRACE, origin, message, cause)

    def debug(self, origin: object | None, message: object, cause: BaseException | None = None):
        """Fine level record."""
        self.log(LogLevel.DEBUG, origin, message, cause)

    def info(self, origin: object | None, message: object, cause: BaseException | None = None):
        """Info level record."""
        self.log(LogLevel.INFO, origin, message, cause)

    def warn(self, origin: object | None, message: object, cause: BaseException | None = None):
        """Warning level record."""
        self.log(LogLevel.WARN, origin, message, cause)

    def error(self, origin: object | None, message: object, cause: BaseException | None = None):
        """Severe level record."""
        self.log(LogLevel.ERROR, origin, message, cause)

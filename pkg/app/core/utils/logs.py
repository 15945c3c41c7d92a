import time

from loguru import logger

from app.domain.schemas.types import LogLevel


class Profiler:
    """Logging proxy that stamps messages with the time elapsed since its creation.

    Args:
        origin (str): name bound to the records, e.g. the benchmark being run
    """

    def __init__(self, origin: str):
        self.origin = origin
        self.start = time.perf_counter()
        self.last = 0.0

    def stamp(self, message: str) -> tuple[float, str]:
        """Stamp message with elapsed time."""
        seconds = time.perf_counter() - self.start
        return seconds, f"{message} @{seconds:.3f}s"

    def log(self, level: LogLevel, message: str):
        """Generic log call, adds elapsed time to message and extra."""
        duration, message = self.stamp(message)
        time_delta = duration - self.last
        self.last = duration
        logger.bind(origin=self.origin, duration=duration, time_delta=time_delta).log(level.value, message)

    def debug(self, message: str):
        """Debug log with elapsed time in message and extra."""
        self.log(LogLevel.DEBUG, message)

    def info(self, message: str):
        """Info log with elapsed time in message and extra."""
        self.log(LogLevel.INFO, message)

from app.core.logging.logger import PrologLogger, log_file_name

__all__ = ["PrologLogger", "log_file_name"]

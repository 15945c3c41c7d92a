import os
from pathlib import Path
from typing import TextIO

from loguru import logger

from app.core.errors import PrologError
from app.domain.schemas.types import PathType


def check_if_file_exists(file: PathType) -> bool:
    """Check if a file exist in a specific path.

    Args:
        file (PathType): the file path or name

    Returns:
        (bool): True if the file exist, False otherwise
    """
    if os.path.exists(file) and os.path.isfile(file):
        return True

    return False


def read_source(source: PathType | TextIO) -> str:
    """Read a program source from a path or an open reader.

    Args:
        source (PathType | TextIO): file path or text reader

    Raises:
        PrologError: when the file does not exist or can not be read

    Returns:
        str: the source text
    """
    if hasattr(source, "read"):
        try:
            return source.read()  # type: ignore[union-attr]
        except OSError as message:
            logger.error(f"Impossible to read the source reader: {message}")
            raise PrologError(f"Impossible to read the source: {message}") from message

    if not check_if_file_exists(source):  # type: ignore[arg-type]
        raise PrologError(f"Source file not found: {source}")
    try:
        text = Path(source).read_text(encoding="utf-8")  # type: ignore[arg-type]
        logger.debug(f"Source file: {source} loaded")
        return text
    except (OSError, UnicodeDecodeError) as message:
        logger.error(f"Impossible to load the file: {source}")
        raise PrologError(f"Impossible to read the file {source}: {message}") from message


def write_source(sink: PathType | TextIO, text: str) -> None:
    """Write a program text to a path or an open writer.

    Args:
        sink (PathType | TextIO): file path or text writer
        text (str): the program text

    Raises:
        PrologError: when the file can not be written
    """
    try:
        if hasattr(sink, "write"):
            sink.write(text)  # type: ignore[union-attr]
        else:
            Path(sink).write_text(text, encoding="utf-8")  # type: ignore[arg-type]
            logger.debug(f"File successfully written to: {sink}")
    except OSError as message:
        logger.error(f"Impossible to write the file: {message}")
        raise PrologError(f"Impossible to write the program: {message}") from message

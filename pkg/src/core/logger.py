#!/usr/bin/env python3
"""
Engine Logging - loguru sinks shared by the command line and the library

Library modules import `logger` from loguru directly; this module only decides
where records go. Nothing here writes to stdout, which carries the report.
"""

import sys
from datetime import datetime
from pathlib import Path
from typing import Mapping, Optional

from loguru import logger


CONSOLE_FORMAT = "[{level}] [{name}] {message}\n"
FILE_FORMAT = "[{time:YYYY-MM-DD HH:mm:ss}] [{level: <8}] [{name}:{line}] {message}\n"


def _stderr_sink(message) -> None:
    # sys.stderr is looked up per record so CliRunner's captured stream is used
    sys.stderr.write(str(message))


def setup_logger(log_level: str = "INFO", log_to_file: bool = False, log_dir: str = "logs"):
    """
    Replace every loguru sink with a stderr sink and an optional file sink

    Args:
        log_level: Minimum level of the stderr sink
        log_to_file: Also write DEBUG records to logs/hlcsa_engine_<timestamp>.log
        log_dir: Directory of the file sink

    Returns:
        The loguru logger

    Example:
        >>> setup_logger("DEBUG")
        >>> logger.debug("hom-jacobi (L, L, E): residual 0")
    """
    logger.remove()
    logger.add(_stderr_sink, level=log_level.upper(), format=CONSOLE_FORMAT, colorize=False)

    if log_to_file:
        try:
            directory = Path(log_dir)
            directory.mkdir(exist_ok=True)
            stamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            logger.add(directory / f"hlcsa_engine_{stamp}.log", level="DEBUG", format=FILE_FORMAT,
                       rotation="10 MB", encoding="utf-8")
        except OSError as e:
            logger.warning(f"File logging disabled: {e}")

    return logger


def log_error_with_context(message: str, error: Exception, context: Optional[Mapping[str, object]] = None) -> None:
    """
    Log an exception with its traceback and key=value context

    Example:
        >>> log_error_with_context("Precondition failure", NotRegularError("det = d"), {"command": "extend"})
    """
    text = f"{message}: {error}"
    if context:
        text += " | " + ", ".join(f"{key}={value}" for key, value in context.items())
    logger.opt(exception=error).error(text)


__all__ = [
    'setup_logger',
    'log_error_with_context',
]

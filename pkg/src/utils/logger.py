"""
Logging for the solver and the benchmark harness.

Everything logs below the ``rdweno`` logger. The CLI installs a rich console
handler and a rotating process log on it; each benchmark run additionally
copies its records into ``run.log`` next to its result files.
"""

import logging
from contextlib import contextmanager
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Iterator, Optional, Union

from rich.console import Console
from rich.logging import RichHandler

from .config import get_config

ROOT = "rdweno"
FILE_FORMAT = logging.Formatter(
    fmt="%(asctime)s | %(levelname)-8s | %(name)s:%(funcName)s:%(lineno)d | %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S",
)
RUN_FORMAT = logging.Formatter(fmt="%(asctime)s | %(levelname)-8s | %(message)s", datefmt="%H:%M:%S")

# Progress lines go to stderr so stdout keeps the rich tables only.
console = Console(stderr=True)


def _level(name: str) -> int:
    return getattr(logging, name.upper())


def setup_logger(
    name: str = ROOT,
    log_file: Optional[str] = None,
    log_level: Optional[str] = None,
) -> logging.Logger:
    """
    Install the console handler and the rotating process log.

    Args:
        name: Logger name
        log_file: Process log path; None takes ``RDWENO_LOG_FILE``, "" disables it
        log_level: Console level; None takes ``RDWENO_LOG_LEVEL``

    Returns:
        Configured logger instance
    """
    config = get_config()
    log_file = config.log_file if log_file is None else log_file
    level = _level(log_level or config.log_level)

    logger = logging.getLogger(name)
    logger.handlers.clear()
    # The file handlers record DEBUG progress even when the console is quieter.
    logger.setLevel(logging.DEBUG if log_file else level)

    console_handler = RichHandler(console=console, show_time=True, show_path=False, rich_tracebacks=True)
    console_handler.setLevel(level)
    console_handler.setFormatter(logging.Formatter("%(message)s", datefmt="[%X]"))
    logger.addHandler(console_handler)

    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            log_file,
            maxBytes=config.log_max_size_mb * 1024 * 1024,
            backupCount=config.log_backup_count,
            encoding="utf-8",
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(FILE_FORMAT)
        logger.addHandler(file_handler)

    return logger


@contextmanager
def run_log(path: Union[str, Path], name: str = ROOT) -> Iterator[Path]:
    """Copy the records emitted inside the block to ``path`` (overwritten)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    handler = logging.FileHandler(path, mode="w", encoding="utf-8")
    handler.setLevel(logging.DEBUG)
    handler.setFormatter(RUN_FORMAT)

    logger = logging.getLogger(name)
    previous = logger.level
    logger.setLevel(logging.DEBUG)
    logger.addHandler(handler)
    try:
        yield path
    finally:
        logger.removeHandler(handler)
        logger.setLevel(previous)
        handler.close()


def get_logger(name: str = ROOT) -> logging.Logger:
    """Logger below ``rdweno``; handlers live on the root only."""
    if name != ROOT and not name.startswith(f"{ROOT}."):
        name = f"{ROOT}.{name.rsplit('.', 1)[-1]}"
    return logging.getLogger(name)


class LoggerMixin:
    """Gives a class a ``self.logger`` named ``rdweno.<ClassName>``."""

    @property
    def logger(self) -> logging.Logger:
        return get_logger(f"{ROOT}.{self.__class__.__name__}")

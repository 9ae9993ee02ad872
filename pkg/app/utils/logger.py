"""
Logging Configuration
One `app` logger carries the handlers; module loggers are its children.
Console records go to stderr so results printed on stdout stay parseable.
"""

import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from typing import Optional

from app.config import Config

APP_LOGGER = 'app'
LOG_FILE = 'kronhad.log'

CONSOLE_FORMAT = '%(levelname)s - %(name)s - %(message)s'
FILE_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


def _level(name: str) -> Optional[int]:
    name = str(name).upper()
    return getattr(logging, name) if name in LEVELS else None


def _file_handler(log_dir: str) -> Optional[logging.Handler]:
    try:
        os.makedirs(log_dir, exist_ok=True)
        handler = RotatingFileHandler(
            os.path.join(log_dir, LOG_FILE),
            maxBytes=10485760,  # 10MB
            backupCount=10
        )
    except OSError:
        return None
    handler.setFormatter(logging.Formatter(FILE_FORMAT, datefmt='%Y-%m-%d %H:%M:%S'))
    return handler


def _app_logger() -> logging.Logger:
    """Configure the `app` logger once from Config."""
    root = logging.getLogger(APP_LOGGER)
    if root.handlers:
        return root

    root.setLevel(_level(Config.LOG_LEVEL) or logging.INFO)
    root.propagate = False

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))
    root.addHandler(console_handler)

    if Config.LOG_DIR:
        file_handler = _file_handler(Config.LOG_DIR)
        if file_handler is not None:
            root.addHandler(file_handler)

    return root


def get_logger(name: str) -> logging.Logger:
    """
    Get a configured logger instance

    Args:
        name: Logger name (typically __name__); names outside the app package are nested under it

    Returns:
        Logger sharing the app handlers
    """
    _app_logger()
    if name != APP_LOGGER and not name.startswith(APP_LOGGER + '.'):
        name = f'{APP_LOGGER}.{name}'
    return logging.getLogger(name)


def set_level(name: str) -> int:
    """
    Change the level of every app logger

    Raises:
        ConfigError: unknown level name
    """
    from app.errors import ConfigError

    level = _level(name)
    if level is None:
        raise ConfigError(f'Unknown log level {name!r}; expected one of {", ".join(LEVELS)}')
    _app_logger().setLevel(level)
    return level

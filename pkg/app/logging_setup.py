import logging
import os
import sys
from typing import Optional, TextIO

LOG_FORMAT = "[%(asctime)s] [%(levelname)s] [%(name)s] %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# Loggers of libraries we drive that are too chatty below WARNING
QUIET_LOGGERS = ("werkzeug",)


def resolve_level(level_name: Optional[str] = None) -> int:
    name = (level_name or os.getenv("LOG_LEVEL", "INFO")).upper()
    level = getattr(logging, name, None)
    return level if isinstance(level, int) else logging.INFO


def configure_global_logging(level_name: Optional[str] = None, stream: Optional[TextIO] = None) -> int:
    """Route all log output to one handler.

    Reports go to stdout, so logs default to stderr. An explicit level_name wins over LOG_LEVEL.
    """
    log_level = resolve_level(level_name)

    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
    root_logger.addHandler(handler)

    logger = logging.getLogger("schur_synth")
    logger.setLevel(log_level)

    for name in QUIET_LOGGERS:
        logging.getLogger(name).setLevel(max(log_level, logging.WARNING))

    logger.debug(f"Logging initialized (level: {logging.getLevelName(log_level)})")
    return log_level

"""Logging configuration"""

import logging
import sys
from typing import Optional, TextIO
from app.config import settings


def setup_logging(level: Optional[str] = None, stream: Optional[TextIO] = None):
    """
    Setup application logging

    Args:
        level: Log level name (default: settings.LOG_LEVEL)
        stream: Destination stream (default: stderr, so CLI stdout stays clean)
    """
    level_name = (level or settings.LOG_LEVEL).upper()
    log_level = getattr(logging, level_name, logging.INFO)

    # Configure root logger
    logging.basicConfig(
        level=log_level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(stream or sys.stderr)
        ],
        force=True
    )

    # Set specific log levels for libraries
    logging.getLogger("uvicorn").setLevel(logging.INFO)
    logging.getLogger("httpx").setLevel(logging.WARNING)

    logger = logging.getLogger(__name__)
    logger.debug(f"Logging configured at {level_name} level")

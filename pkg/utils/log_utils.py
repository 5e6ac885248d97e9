# utils/log_utils.py

from __future__ import annotations

import logging
import sys
from typing import Optional

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

_handler: Optional[logging.Handler] = None


def configure_logging(verbosity: int = 0) -> None:
    """
    Install the stderr handler on the root logger, replacing the one a
    previous call installed.

    :param verbosity: 0 for WARNING, 1 for INFO, 2 or more for DEBUG
    :type verbosity: int
    """
    global _handler
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    root = logging.getLogger()
    if _handler is not None:
        root.removeHandler(_handler)
    _handler = logging.StreamHandler(sys.stderr)
    _handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(_handler)
    root.setLevel(level)

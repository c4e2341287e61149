# Copyright (C) 2025 tifs-toolkit contributors

# This file is part of tifs-toolkit.

# tifs-toolkit is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public License
# as published by the Free Software Foundation; either version 3
# of the License, or (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU General Public License for more details.

# You should have received a copy of the GNU General Public License
# along with this program; if not, see <https://www.gnu.org/licenses>.


import logging
import sys
import time
from contextlib import contextmanager

from .constants import LOG_FORMAT, LOGGER_NAME


def get_logger(name: str | None = None) -> logging.Logger:
    if not name:
        return logging.getLogger(LOGGER_NAME)
    return logging.getLogger(f"{LOGGER_NAME}.{name}")


def configure_logging(verbosity: int = 0) -> logging.Logger:
    """Install the single stderr handler used by the command line.

    verbosity < 0 keeps warnings only, 0 is INFO, > 0 is DEBUG.
    Calling it twice replaces the handler instead of stacking another one.
    """
    logger = get_logger()
    for handler in list(logger.handlers):
        if getattr(handler, "_tifs_handler", False):
            logger.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._tifs_handler = True
    logger.addHandler(handler)

    if verbosity < 0:
        logger.setLevel(logging.WARNING)
    elif verbosity == 0:
        logger.setLevel(logging.INFO)
    else:
        logger.setLevel(logging.DEBUG)
    logger.propagate = False
    return logger


@contextmanager
def timed(logger: logging.Logger, label: str, level: int = logging.INFO):
    start_time = time.perf_counter()
    try:
        yield
    finally:
        elapsed = time.perf_counter() - start_time
        logger.log(level, f"{label} completed in {elapsed * 1000:.2f}ms")

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


PRE = "TIFS"
LOGGER_NAME = "tifs"
LOG_FORMAT = "[" + PRE + "] %(message)s"

#Results
FINISHED = "FINISHED"
FAILED = "FAILED"
USAGE = "USAGE"

EXIT_CODES = {
    FINISHED: 0,
    FAILED: 1,
    USAGE: 2,
}

#Reports
INFO = "INFO"
WARNING = "WARNING"
ERROR = "ERROR"

#Formats
GRAPH6 = "graph6"
DOT = "dot"
JSON = "json"
GRAPH6_HEADER = b">>graph6<<"
EMIT_FORMATS = (GRAPH6, DOT, JSON)

#Limits
MAX_VERTICES = 64
MAX_ENUMERATION_VERTICES = 16
DEFAULT_SHARD_DEPTH = 6

#Numerics
DEFAULT_TOLERANCE = 1e-12
DEFAULT_EPSILON = 0.1
DEFAULT_RAY_TOLERANCE = 1e-9
NONEDGE_MARGIN = 0.05
CROSS_PRODUCT_FLOOR = 1e-9
FAITHFUL_FLOOR = 1e-6
CONFIRM_RESTARTS = 30
CONFIRM_RESIDUAL = 1e-6

#Environment
ENV_PURE_PYTHON = "TIFS_PURE_PYTHON"
ENV_RUN_SLOW = "TIFS_RUN_SLOW"

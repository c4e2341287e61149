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


import sys
import time

from ..classes import RunConfig
from ..constants import ERROR, FAILED, FINISHED, INFO, USAGE, WARNING
from ..errors import TifsError
from ..graphcore import ExclusivityGraph, parse
from ..logs import get_logger

logger = get_logger("operators")

_LEVELS = {INFO: logger.info, WARNING: logger.warning, ERROR: logger.error}


class Operator:
    """One command of the command line.

    ``execute`` appends machine output to ``self.output``; diagnostics go
    through ``report``. Toolkit errors become the FAILED status.
    """

    idname = ""
    label = ""
    description = ""

    def __init__(self):
        self.output: list[str] = []

    @classmethod
    def add_arguments(cls, parser) -> None:
        """Command-specific flags; shared flags are added by the command line."""

    @classmethod
    def poll(cls, config: RunConfig) -> bool:
        return True

    def poll_message(self, config: RunConfig) -> str:
        return f"{self.idname}: missing arguments"

    def report(self, levels: set[str], message: str) -> None:
        for level in levels:
            _LEVELS[level](message)

    def write(self, text: str | bytes) -> None:
        if isinstance(text, bytes):
            text = text.decode()
        self.output.append(text if text.endswith("\n") else text + "\n")

    def read_input(self, config: RunConfig, index: int = 0) -> str:
        if index < len(config.inputs) and config.inputs[index] != "-":
            with open(config.inputs[index]) as handle:
                return handle.read()
        if index > 0 and index >= len(config.inputs):
            raise TifsError(f"{self.idname} needs input {index + 1}")
        return sys.stdin.read()

    def read_graphs(self, config: RunConfig, index: int = 0) -> list[ExclusivityGraph]:
        lines = [line.strip() for line in self.read_input(config, index).splitlines()]
        return [parse(line) for line in lines if line]

    def execute(self, config: RunConfig) -> str:
        raise NotImplementedError

    def run(self, config: RunConfig) -> str:
        if not self.poll(config):
            self.report({ERROR}, self.poll_message(config))
            return USAGE
        start_total = time.perf_counter()
        try:
            status = self.execute(config)
        except (TifsError, OSError) as e:
            self.report({ERROR}, f"{self.label} failed: {e}")
            status = FAILED
        end_total = time.perf_counter()
        logger.debug(f"{self.label} completed in {(end_total - start_total) * 1000:.2f}ms")
        return status if status in (FINISHED, FAILED, USAGE) else FAILED

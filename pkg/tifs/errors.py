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


"""Exception types raised by the toolkit.

Operators translate any ``TifsError`` into the FAILED status; everything
else is a bug and propagates.
"""


class TifsError(Exception):
    """Base class for all toolkit errors."""


class PreconditionError(TifsError, ValueError):
    """An operation was called outside its documented domain."""


class GraphFormatError(TifsError, ValueError):
    """Malformed graph6 / JSON input."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at byte {position})")
        self.position = position


class ConstructionError(TifsError):
    """A construction was refused or did not verify."""


class DegenerateInputError(TifsError, ValueError):
    """A cross product vanished while completing a realization."""

    def __init__(self, product: str, norm: float):
        super().__init__(f"degenerate input: {product} has norm {norm:.3e}")
        self.product = product
        self.norm = norm


class DuplicateRayError(TifsError, ValueError):
    def __init__(self, first: int, second: int):
        super().__init__(f"rays {first} and {second} are parallel")
        self.pair = (first, second)


class VerificationError(TifsError):
    """A realization or certificate failed its re-check."""

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


__version__ = "1.0.0"

try:
    from . import assignment_kernel
except ImportError as e:
    # tifs.nclogic falls back to its pure Python search
    import warnings
    warnings.warn(f"Failed to load compiled tifs_native modules: {e}")


__all__ = [
    "assignment_kernel",
]

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


import os

import pytest

from tifs.constants import ENV_RUN_SLOW


def pytest_collection_modifyitems(config, items):
    if os.environ.get(ENV_RUN_SLOW):
        return
    skip = pytest.mark.skip(reason=f"set {ENV_RUN_SLOW}=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)

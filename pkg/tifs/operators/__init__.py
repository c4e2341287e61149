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


from .base import Operator
from .classification import Tifs_OT_Classify, Tifs_OT_Reduce
from .construction import Tifs_OT_Construct, Tifs_OT_Export
from .enumeration import Tifs_OT_Count, Tifs_OT_Enumerate, Tifs_OT_Search
from .realization import (
    Tifs_OT_Angle,
    Tifs_OT_Rays_To_Graph,
    Tifs_OT_Realize_Search,
    Tifs_OT_Verify_Realization,
)

classesToRegister = (
    Tifs_OT_Enumerate,
    Tifs_OT_Search,
    Tifs_OT_Classify,
    Tifs_OT_Construct,
    Tifs_OT_Reduce,
    Tifs_OT_Count,
    Tifs_OT_Verify_Realization,
    Tifs_OT_Realize_Search,
    Tifs_OT_Angle,
    Tifs_OT_Rays_To_Graph,
    Tifs_OT_Export,
)


def find_operator(idname: str) -> type[Operator]:
    for cls in classesToRegister:
        if cls.idname == idname:
            return cls
    raise KeyError(idname)

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


from ..certificates import designated_certificate, dumps, realization_document
from ..classes import RunConfig
from ..constants import DOT, FINISHED, GRAPH6, INFO, JSON
from ..construct import CliqueVertexState, DesignatedGraph, minimal_tifs, parse_states, tits_from_tifs
from ..graphcore import serialize
from ..realize import Realization, build_minimal_tifs_realization, build_minimal_tits_realization, format_rays
from .base import Operator

TARGETS = ("tifs", "tits")


def designated_from_config(config: RunConfig) -> DesignatedGraph:
    states = parse_states(config.states)
    if config.target == "tits":
        if not config.states:
            states = (CliqueVertexState.ADJ_BOTH,) * (config.d - 3)
        return tits_from_tifs(minimal_tifs(config.d, states))
    return minimal_tifs(config.d, states, strict=not config.allow_excluded)


def realization_from_config(config: RunConfig) -> Realization:
    if config.target == "tits":
        return build_minimal_tits_realization(config.d)
    return build_minimal_tifs_realization(config.d, parse_states(config.states), config.epsilon)


def add_construction_arguments(parser) -> None:
    parser.add_argument("--states", help=RunConfig.describe("states"))
    parser.add_argument("--epsilon", type=float, help=RunConfig.describe("epsilon"))
    parser.add_argument("--allow-excluded", action="store_true", help=RunConfig.describe("allow_excluded"))


class Tifs_OT_Construct(Operator):
    idname = "construct"
    label = "Construct Minimal Set"
    description = "Build the minimal TIFS of --d and --states, or the TITS built on it"

    @classmethod
    def add_arguments(cls, parser) -> None:
        parser.add_argument("target", choices=TARGETS, help=RunConfig.describe("target"))
        add_construction_arguments(parser)

    def execute(self, config: RunConfig) -> str:
        member = designated_from_config(config)
        if config.emit == JSON:
            self.write(dumps(designated_certificate(member)))
        else:
            self.write(serialize(member.graph, config.emit, config.d))
        self.report({INFO}, f"{member.kind} with {member.graph.n} vertices, states {member.state_string or '-'}")
        return FINISHED


class Tifs_OT_Export(Operator):
    idname = "export"
    label = "Export Realization"
    description = (
        "Write a construction with its vectors: rays as text (graph6), an orthogonality "
        "diagram (dot) or a certificate with its realization (json)"
    )

    @classmethod
    def add_arguments(cls, parser) -> None:
        parser.add_argument("target", nargs="?", choices=TARGETS, default="tifs", help=RunConfig.describe("target"))
        add_construction_arguments(parser)

    def execute(self, config: RunConfig) -> str:
        member = designated_from_config(config)
        if config.emit == DOT:
            self.write(serialize(member.graph, DOT, config.d))
            return FINISHED
        r = realization_from_config(config)
        if config.emit == GRAPH6:
            self.write(format_rays(r.vectors))
        else:
            self.write(dumps({"certificate": designated_certificate(member), "realization": realization_document(r)}))
        return FINISHED

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


from ..certificates import dumps, load_realization, realization_document, verification_document
from ..classes import RunConfig
from ..constants import DEFAULT_RAY_TOLERANCE, FAILED, FINISHED, INFO, WARNING
from ..construct import VERTEX_A, VERTEX_B
from ..graphcore import serialize
from ..realize import (
    angle_between,
    count_bug_copies,
    graph_from_rays,
    min_angle_search,
    numeric_realization_search,
    parse_rays,
    verify,
)
from .base import Operator
from .construction import TARGETS, designated_from_config, realization_from_config, add_construction_arguments


class Tifs_OT_Verify_Realization(Operator):
    idname = "verify-realization"
    label = "Verify Realization"
    description = (
        "Check a realization JSON against a graph6 graph, or check the closed-form "
        "realization of the construction selected by --d/--states"
    )

    @classmethod
    def add_arguments(cls, parser) -> None:
        parser.add_argument("inputs", nargs="*", default=[], help="REALIZATION.json GRAPH.g6")
        parser.add_argument("--target", choices=TARGETS, help=RunConfig.describe("target"))
        add_construction_arguments(parser)

    def execute(self, config: RunConfig) -> str:
        if config.inputs:
            r = load_realization(self.read_input(config, 0))
            g = self.read_graphs(config, 1)[0]
        else:
            r = realization_from_config(config)
            g = designated_from_config(config).graph
            self.report({INFO}, f"Angle between A and B: {angle_between(r, VERTEX_A, VERTEX_B):.12f} rad")

        report = verify(r, g, config.tolerance)
        self.write(dumps(verification_document(report)))
        if not report.passed:
            self.report({WARNING}, f"{len(report.failures())} pairs violate the orthogonality pattern")
            return FAILED
        return FINISHED


class Tifs_OT_Realize_Search(Operator):
    idname = "realize-search"
    label = "Search Realization"
    description = "Look for unit vectors in R^d realizing the input graph by projected gradient descent"

    @classmethod
    def add_arguments(cls, parser) -> None:
        parser.add_argument("inputs", nargs="*", default=[], help=RunConfig.describe("inputs"))
        parser.add_argument("--restarts", type=int, help=RunConfig.describe("restarts"))
        parser.add_argument("--iterations", type=int, help=RunConfig.describe("iterations"))

    def execute(self, config: RunConfig) -> str:
        g = self.read_graphs(config)[0]
        kwargs = {"iterations": config.iterations} if config.iterations else {}
        result = numeric_realization_search(
            g, config.d, restarts=config.restarts, seed=config.seed, workers=config.workers, **kwargs
        )
        doc = {
            "residual": result.residual,
            "restart": result.restart,
            "converged": result.converged,
            "realization": realization_document(result.realization),
        }
        self.write(dumps(doc))
        self.report({INFO}, f"Best residual {result.residual:.3e} from restart {result.restart}")
        return FINISHED


class Tifs_OT_Angle(Operator):
    idname = "angle"
    label = "Minimum Angle"
    description = "Search the smallest angle between A and B over realizations of the bug in R^3"

    @classmethod
    def add_arguments(cls, parser) -> None:
        parser.add_argument("--trials", type=int, help=RunConfig.describe("trials"))
        parser.add_argument("--iterations", type=int, help=RunConfig.describe("iterations"))

    def execute(self, config: RunConfig) -> str:
        kwargs = {"iterations": config.iterations} if config.iterations is not None else {}
        result = min_angle_search(config.trials, seed=config.seed, workers=config.workers, **kwargs)
        doc = {
            "angle": result.angle,
            "overlap": result.overlap,
            "trial": result.trial,
            "realization": realization_document(result.realization),
        }
        self.write(dumps(doc))
        self.report({INFO}, f"Smallest angle {result.angle:.6f} rad found by trial {result.trial}")
        return FINISHED


class Tifs_OT_Rays_To_Graph(Operator):
    idname = "rays-to-graph"
    label = "Rays to Graph"
    description = "Build the orthogonality graph of a ray list (one vector per line)"

    @classmethod
    def add_arguments(cls, parser) -> None:
        parser.add_argument("inputs", nargs="*", default=[], help=RunConfig.describe("inputs"))
        parser.add_argument("--count-bugs", action="store_true", help=RunConfig.describe("count_bugs"))

    def execute(self, config: RunConfig) -> str:
        rays = parse_rays(self.read_input(config))
        tolerance = config.tolerance if config.tolerance is not None else DEFAULT_RAY_TOLERANCE
        g = graph_from_rays(rays, tolerance)
        if config.count_bugs:
            copies = count_bug_copies(rays, tolerance)
            self.write(dumps({"graph": serialize(g).decode(), "bug_copies": copies}))
            self.report({INFO}, f"{len(rays)} rays contain {copies} copies of the bug")
        else:
            self.write(serialize(g, config.emit))
        return FINISHED

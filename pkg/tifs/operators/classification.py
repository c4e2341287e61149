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


from pathlib import Path

from ..certificates import certificate, designated_certificate, dumps, load_certificate, revalidate
from ..classes import RunConfig, parse_claim
from ..constants import ERROR, FAILED, FINISHED, INFO
from ..construct import DesignatedGraph, tifs_from_tits
from ..errors import PreconditionError
from ..nclogic import Kind, classify_all_pairs, classify_pair
from .base import Operator


class Tifs_OT_Classify(Operator):
    idname = "classify"
    label = "Classify Pairs"
    description = "List the TIFS, TITS and true-iff-true pairs of each input graph, or check one claimed verdict"

    @classmethod
    def add_arguments(cls, parser) -> None:
        parser.add_argument("inputs", nargs="*", default=[], help=RunConfig.describe("inputs"))
        parser.add_argument("--claim", help=RunConfig.describe("claim"))
        parser.add_argument("--certificate", help=RunConfig.describe("certificate"))
        parser.add_argument("--vacuous", action="store_true", help=RunConfig.describe("vacuous"))

    def execute(self, config: RunConfig) -> str:
        if config.certificate:
            g, claimed = load_certificate(Path(config.certificate))
            fresh = revalidate(g, claimed)
            self.write(dumps(certificate(g, fresh)))
            self.report({INFO}, f"Certificate holds: {claimed.kind} ({claimed.a}, {claimed.b_or_c})")
            return FINISHED

        graphs = self.read_graphs(config)
        if config.claim:
            kind, a, b = parse_claim(config.claim)
            status = FINISHED
            for g in graphs:
                c = classify_pair(g, config.d, kind, a, b)
                self.write(dumps(certificate(g, c), compact=True))
                if c.kind != kind:
                    self.report({ERROR}, f"({a}, {b}) is not a {kind} pair in dimension {config.d}")
                    status = FAILED
            return status

        total = 0
        for g in graphs:
            for c in classify_all_pairs(g, config.d, config.vacuous):
                self.write(dumps(certificate(g, c), compact=True))
                total += 1
        self.report({INFO}, f"{total} verdicts over {len(graphs)} graphs")
        return FINISHED


class Tifs_OT_Reduce(Operator):
    idname = "reduce"
    label = "Reduce TITS"
    description = "Recover the TIFSs contained in a TITS by removing C and the neighbours it shares only with A"

    @classmethod
    def add_arguments(cls, parser) -> None:
        parser.add_argument("inputs", nargs="*", default=[], help=RunConfig.describe("inputs"))
        parser.add_argument("--claim", help="TITS:a,c designating the TITS pair of the input graph")
        parser.add_argument("--certificate", help=RunConfig.describe("certificate"))

    @classmethod
    def poll(cls, config: RunConfig) -> bool:
        return bool(config.certificate or config.claim)

    def poll_message(self, config: RunConfig) -> str:
        return "reduce needs --certificate or --claim TITS:a,c"

    def execute(self, config: RunConfig) -> str:
        if config.certificate:
            g, c = load_certificate(Path(config.certificate))
            kind, a, target, d = c.kind, c.a, c.b_or_c, c.d
        else:
            kind, a, target = parse_claim(config.claim)
            g = self.read_graphs(config)[0]
            d = config.d
        if kind != Kind.TITS:
            raise PreconditionError(f"reduce expects a TITS, got {kind}")

        results = tifs_from_tits(DesignatedGraph(g, a, target, Kind.TITS, d))
        for member in results:
            self.write(dumps(designated_certificate(member), compact=True))
        self.report({INFO}, f"{len(results)} TIFS on {results[0].graph.n} vertices")
        return FINISHED

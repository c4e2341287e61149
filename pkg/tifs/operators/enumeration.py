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


from ..certificates import dumps, search_report
from ..classes import RunConfig, parse_shard
from ..constants import FINISHED, INFO, JSON, WARNING
from ..construct import count_constructible_tits, count_minimal_tifs
from ..enumgen import SearchSpec, generate, run_generation, search_minimal_tifs
from ..graphcore import canonical_form, serialize
from .base import Operator


class Tifs_OT_Enumerate(Operator):
    idname = "enumerate"
    label = "Enumerate Graphs"
    description = "Emit one graph per isomorphism class on --n vertices passing the dimension filters of --d"

    @classmethod
    def add_arguments(cls, parser) -> None:
        parser.add_argument("--n", type=int, help=RunConfig.describe("n"))
        parser.add_argument("--shard", type=parse_shard, help=RunConfig.describe("shard"))
        parser.add_argument("--shards", type=int, help=RunConfig.describe("shards"))
        parser.add_argument("--unfiltered", action="store_true", help=RunConfig.describe("unfiltered"))

    @classmethod
    def poll(cls, config: RunConfig) -> bool:
        return config.n is not None

    def poll_message(self, config: RunConfig) -> str:
        return "enumerate needs --n"

    def execute(self, config: RunConfig) -> str:
        if config.unfiltered:
            spec = SearchSpec.unfiltered(config.n, shard=config.shard)
            d = None
        else:
            spec = SearchSpec.for_dimension(config.n, config.d, shard=config.shard)
            d = config.d

        if config.shard == (0, 1) and (config.workers > 1 or config.shards):
            shards = config.shards or 4 * config.workers
            graphs = run_generation(spec, config.workers, shards, config.progress)
        else:
            graphs = generate(spec)

        count = 0
        for g in graphs:
            self.write(serialize(g, config.emit, d))
            count += 1
        self.report({INFO}, f"Emitted {count} graphs on {config.n} vertices")
        return FINISHED


class Tifs_OT_Search(Operator):
    idname = "search"
    label = "Search Minimal TIFS"
    description = "Find the smallest vertex count carrying a TIFS in dimension --d and certify every TIFS there"

    @classmethod
    def add_arguments(cls, parser) -> None:
        parser.add_argument("--n-max", type=int, help=RunConfig.describe("n_max"))
        parser.add_argument("--shards", type=int, help=RunConfig.describe("shards"))
        parser.add_argument("--checkpoint", help=RunConfig.describe("checkpoint"))
        parser.add_argument("--budget", type=float, help=RunConfig.describe("budget"))

    def execute(self, config: RunConfig) -> str:
        n_max = config.n_max or config.d + 5
        report = search_minimal_tifs(
            config.d,
            n_max,
            workers=config.workers,
            shards=config.shards,
            checkpoint=config.checkpoint,
            budget=config.budget,
            progress=config.progress,
        )
        if config.emit == JSON:
            self.write(dumps(search_report(report)))
        else:
            written = set()
            for cert in report.tifs_found:
                form = canonical_form(cert.graph).bytes
                if form not in written:
                    written.add(form)
                    self.write(serialize(cert.graph, config.emit, config.d))

        if report.first_hit is None:
            self.report({INFO}, f"No TIFS in d={config.d} up to n={n_max}")
        else:
            self.report(
                {INFO},
                f"First TIFS in d={config.d} at n={report.first_hit}: "
                f"{len(report.tifs_found)} certificates on {report.graphs_with_tifs} graphs",
            )
        if report.unconfirmed:
            self.report({WARNING}, f"{len(report.unconfirmed)} TIFS candidates could not be realized numerically and were not counted")
        if not report.complete:
            self.report({WARNING}, "Search stopped at its budget; the result is partial")
        return FINISHED


class Tifs_OT_Count(Operator):
    idname = "count"
    label = "Count Minimal Families"
    description = "Print the number of minimal TIFSs and of constructible minimal TITSs in dimension --d"

    def execute(self, config: RunConfig) -> str:
        doc = {
            "d": config.d,
            "minimal_tifs": count_minimal_tifs(config.d),
            "constructible_tits": count_constructible_tits(config.d),
        }
        self.write(dumps(doc))
        return FINISHED

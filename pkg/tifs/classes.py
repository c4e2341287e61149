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


"""Run configuration shared by every command."""

import tomllib
from dataclasses import dataclass, field, fields
from pathlib import Path

from .constants import DEFAULT_EPSILON, EMIT_FORMATS, GRAPH6
from .errors import PreconditionError
from .nclogic import Kind


def _option(default, description: str, **kwargs):
    if isinstance(default, list):
        return field(default_factory=list, metadata={"description": description}, **kwargs)
    return field(default=default, metadata={"description": description}, **kwargs)


@dataclass
class RunConfig:
    command: str = _option("", "Command to run")
    target: str = _option("tifs", "Family for construct / export / verify-realization: tifs or tits")
    inputs: list[str] = _option([], "Input files; '-' or none reads standard input")
    n: int | None = _option(None, "Vertex count for enumerate")
    n_max: int | None = _option(None, "Largest vertex count tried by search (default d+5)")
    d: int = _option(3, "Dimension")
    epsilon: float = _option(DEFAULT_EPSILON, "Perturbation of the designated vectors")
    tolerance: float | None = _option(None, "Orthogonality tolerance (command-specific default)")
    states: str = _option("", "Clique vertex states, e.g. A,B,BOTH")
    allow_excluded: bool = _option(False, "Build state multisets excluded from the minimal family")
    shard: tuple[int, int] = _option((0, 1), "Shard i/k of the generation tree")
    shards: int | None = _option(None, "Number of shards spread over the workers")
    seed: int = _option(0, "Master seed of randomized searches")
    workers: int = _option(1, "Worker processes")
    out: str | None = _option(None, "Output file (default standard output)")
    emit: str = _option(GRAPH6, "Graph output format: graph6, dot or json")
    trials: int = _option(200, "Trials of the angle search")
    iterations: int | None = _option(None, "Descent iterations per trial or restart")
    restarts: int = _option(20, "Restarts of the realization search")
    budget: float | None = _option(None, "Wall-clock budget of search in seconds")
    checkpoint: str | None = _option(None, "Checkpoint file of search")
    claim: str | None = _option(None, "Claimed verdict KIND:a,b to check")
    certificate: str | None = _option(None, "Certificate file to re-validate")
    vacuous: bool = _option(False, "Also list pairs whose verdict only holds vacuously")
    unfiltered: bool = _option(False, "Enumerate every graph, ignoring the dimension filters")
    count_bugs: bool = _option(False, "Count bug subgraphs among the rays")
    progress: bool = _option(False, "Show progress bars on standard error")
    verbosity: int = _option(0, "-1 quiet, 0 normal, 1 debug")

    def __post_init__(self):
        if isinstance(self.shard, str):
            self.shard = parse_shard(self.shard)
        else:
            self.shard = tuple(self.shard)
        if self.emit not in EMIT_FORMATS:
            raise PreconditionError(f"unknown output format {self.emit!r}")
        if self.workers < 1:
            raise PreconditionError("workers must be positive")

    @classmethod
    def field_names(cls) -> set[str]:
        return {f.name for f in fields(cls)}

    @classmethod
    def describe(cls, name: str) -> str:
        return next(f.metadata["description"] for f in fields(cls) if f.name == name)

    @classmethod
    def from_sources(cls, flags: dict, config_path: str | None = None) -> "RunConfig":
        """Field defaults, then the TOML file, then explicit flags."""
        values = load_config_file(config_path) if config_path else {}
        values.update(flags)
        return cls(**values)


def load_config_file(path: str | Path) -> dict:
    try:
        with open(path, "rb") as handle:
            values = tomllib.load(handle)
    except FileNotFoundError:
        raise PreconditionError(f"configuration file {path} does not exist") from None
    except tomllib.TOMLDecodeError as exc:
        raise PreconditionError(f"configuration file {path}: {exc}") from exc
    unknown = set(values) - RunConfig.field_names()
    if unknown:
        raise PreconditionError(f"unknown configuration keys: {', '.join(sorted(unknown))}")
    return values


def parse_shard(text: str) -> tuple[int, int]:
    try:
        index, count = (int(x) for x in text.split("/"))
    except ValueError:
        raise PreconditionError(f"shard must look like i/k, got {text!r}") from None
    if count < 1 or not 0 <= index < count:
        raise PreconditionError(f"invalid shard {text}")
    return index, count


def parse_claim(text: str) -> tuple[Kind, int, int]:
    """``KIND:a,b`` such as ``TIFS:0,7``."""
    try:
        kind, pair = text.split(":")
        a, b = (int(x) for x in pair.split(","))
        return Kind(kind.strip().upper()), a, b
    except ValueError:
        raise PreconditionError(f"claim must look like KIND:a,b, got {text!r}") from None

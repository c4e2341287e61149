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


"""Closed-form minimal TIFS and TITS families.

Every minimal TIFS in dimension d is the bug with d-3 extra vertices that
extend both of its triangles to complete contexts. The extra vertices form
a clique, see all six triangle vertices, and are exclusive with A, with B
or with both; the multiset of those states identifies the member.

Vertex layout: 0 = A, 1..6 = v1..v6, 7 = B, then the clique vertices and,
for a TITS, the auxiliary vertex followed by C.
"""

from dataclasses import dataclass
from enum import StrEnum
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Iterable

from .errors import ConstructionError, PreconditionError
from .graphcore import ExclusivityGraph, cliques_of_size, iter_bits, mask_of
from .logs import get_logger
from .nclogic import Kind, designated_key, is_tifs, is_tits

logger = get_logger("construct")

VERTEX_A = 0
VERTEX_B = 7
BUG_EDGES = (
    (0, 1), (0, 2),
    (1, 3), (1, 5), (3, 5),
    (2, 4), (2, 6), (4, 6),
    (3, 4),
    (5, 7), (6, 7),
)
BUG_LABELS = ("A", "v1", "v2", "v3", "v4", "v5", "v6", "B")


class CliqueVertexState(StrEnum):
    ADJ_A = "A"
    ADJ_B = "B"
    ADJ_BOTH = "BOTH"

    @classmethod
    def parse(cls, text: str) -> "CliqueVertexState":
        key = text.strip().upper().removeprefix("ADJ_")
        try:
            return cls(key)
        except ValueError:
            raise PreconditionError(f"unknown clique vertex state {text!r}; use A, B or BOTH") from None


STATE_ORDER = (CliqueVertexState.ADJ_A, CliqueVertexState.ADJ_B, CliqueVertexState.ADJ_BOTH)


def parse_states(text: str) -> tuple[CliqueVertexState, ...]:
    return sort_states(CliqueVertexState.parse(part) for part in text.split(",") if part.strip())


def sort_states(states: Iterable[CliqueVertexState | str]) -> tuple[CliqueVertexState, ...]:
    parsed = [s if isinstance(s, CliqueVertexState) else CliqueVertexState.parse(s) for s in states]
    return tuple(sorted(parsed, key=STATE_ORDER.index))


def is_excluded(d: int, states: tuple[CliqueVertexState, ...]) -> bool:
    """Multisets left out of the minimal family for d >= 5."""
    if d < 5:
        return False
    return all(s == CliqueVertexState.ADJ_A for s in states) or all(s == CliqueVertexState.ADJ_B for s in states)


def check_states(d: int, states: Iterable[CliqueVertexState | str], strict: bool = True) -> tuple[CliqueVertexState, ...]:
    if d < 3:
        raise PreconditionError(f"dimension must be at least 3, got {d}")
    states = sort_states(states)
    if len(states) != d - 3:
        raise PreconditionError(f"dimension {d} needs {d - 3} clique vertex states, got {len(states)}")
    if strict and is_excluded(d, states):
        raise ConstructionError(
            f"states {','.join(states)} are excluded for d={d}: when every added clique vertex "
            "is adjacent only to A or only to B, the other designated vertex touches none of "
            "the vertices shared by the two complete contexts"
        )
    return states


@dataclass(frozen=True)
class DesignatedGraph:
    graph: ExclusivityGraph
    a: int
    b_or_c: int
    kind: Kind
    d: int
    states: tuple[CliqueVertexState, ...] = ()

    @cached_property
    def key(self) -> bytes:
        return designated_key(self.graph, self.a, self.b_or_c)

    @property
    def state_string(self) -> str:
        return ",".join(self.states)


def bug() -> DesignatedGraph:
    graph = ExclusivityGraph.from_edges(8, BUG_EDGES, BUG_LABELS)
    return DesignatedGraph(graph, VERTEX_A, VERTEX_B, Kind.TIFS, 3)


def minimal_tifs(d: int, states: Iterable[CliqueVertexState | str] = (), strict: bool = True) -> DesignatedGraph:
    states = check_states(d, states, strict)
    n = d + 5
    edges = list(BUG_EDGES)
    labels = list(BUG_LABELS)
    clique = range(8, n)
    for w, state in zip(clique, states):
        labels.append(f"v{w - 1}")
        edges.extend((w, v) for v in range(1, 7))
        edges.extend((w, u) for u in clique if u < w)
        if state in (CliqueVertexState.ADJ_A, CliqueVertexState.ADJ_BOTH):
            edges.append((w, VERTEX_A))
        if state in (CliqueVertexState.ADJ_B, CliqueVertexState.ADJ_BOTH):
            edges.append((w, VERTEX_B))

    graph = ExclusivityGraph.from_edges(n, edges, labels)
    if not is_tifs(graph, d, VERTEX_A, VERTEX_B):
        raise ConstructionError(f"construction for d={d}, states {','.join(states)} is not a TIFS")
    return DesignatedGraph(graph, VERTEX_A, VERTEX_B, Kind.TIFS, d, states)


def count_minimal_tifs(d: int) -> int:
    if d < 3:
        raise PreconditionError(f"dimension must be at least 3, got {d}")
    multisets = (d - 1) * (d - 2) // 2
    return multisets - 2 if d >= 5 else multisets


def enumerate_minimal_tifs(d: int) -> list[DesignatedGraph]:
    """One member per admissible state multiset, checked pairwise nonisomorphic."""
    if d < 3:
        raise PreconditionError(f"dimension must be at least 3, got {d}")
    family = []
    keys = set()
    for states in combinations_with_replacement(STATE_ORDER, d - 3):
        if is_excluded(d, states):
            continue
        member = minimal_tifs(d, states)
        if member.key in keys:
            raise ConstructionError(f"states {member.state_string} duplicate an earlier member")
        keys.add(member.key)
        family.append(member)
    expected = count_minimal_tifs(d)
    if len(family) != expected:
        raise ConstructionError(f"built {len(family)} minimal TIFSs for d={d}, expected {expected}")
    logger.debug(f"d={d}: {len(family)} minimal TIFSs")
    return family


def _shared_core(g: ExclusivityGraph, d: int) -> int:
    complete = cliques_of_size(g, d)
    if len(complete) != 2:
        raise PreconditionError(f"expected exactly two complete contexts, found {len(complete)}")
    return mask_of(complete[0]) & mask_of(complete[1])


def tits_from_tifs(t: DesignatedGraph) -> DesignatedGraph:
    """Add an auxiliary vertex and the target C so that A true forces C true.

    The clique vertices, the auxiliary vertex, B and C form a new complete
    context whose only candidate left when A is true is C.
    """
    if t.kind != Kind.TIFS:
        raise PreconditionError(f"expected a TIFS, got {t.kind}")
    g, d, a, b = t.graph, t.d, t.a, t.b_or_c
    core = _shared_core(g, d)
    if core & ~g.rows[a] or core & ~g.rows[b]:
        raise PreconditionError(
            "every clique vertex shared by the two complete contexts must be exclusive with "
            "both designated vertices (state BOTH)"
        )
    aux = g.n
    target = g.n + 1
    g = g.add_vertex(core | (1 << a) | (1 << b), label=f"v{d + 4}")
    g = g.add_vertex(core | (1 << b) | (1 << aux), label="C")
    if not is_tits(g, d, a, target):
        raise ConstructionError(f"TITS scheme for d={d} does not verify")
    if len(cliques_of_size(g, d)) != 3:
        raise ConstructionError(f"TITS scheme for d={d} does not have three complete contexts")
    return DesignatedGraph(g, a, target, Kind.TITS, d, t.states)


def tifs_from_tits(t: DesignatedGraph) -> list[DesignatedGraph]:
    """Strip C and the common neighbours of A and C that only serve C.

    A common neighbour is kept when it belongs to some complete context not
    containing C. Every neighbour of C that is not exclusive with A is then
    tried as the false vertex.
    """
    if t.kind != Kind.TITS:
        raise PreconditionError(f"expected a TITS, got {t.kind}")
    g, d, a, c = t.graph, t.d, t.a, t.b_or_c
    if g.has_edge(a, c):
        raise PreconditionError("A and C are exclusive")

    elsewhere = 0
    for clique in cliques_of_size(g, d):
        if c not in clique:
            elsewhere |= mask_of(clique)
    removed = (g.rows[a] & g.rows[c] & ~elsewhere) | (1 << c)
    keep = [v for v in range(g.n) if not removed >> v & 1]
    position = {v: i for i, v in enumerate(keep)}
    reduced = g.induced(keep)

    results = []
    for b in iter_bits(g.rows[c] & ~g.rows[a] & ~removed):
        if b != a and is_tifs(reduced, d, position[a], position[b]):
            results.append(DesignatedGraph(reduced, position[a], position[b], Kind.TIFS, d, t.states))
    if not results:
        raise ConstructionError("no neighbour of C verifies as the false vertex; the TITS is not critical")
    return results


def _tits_sources(d: int) -> list[tuple[CliqueVertexState, ...]]:
    if d < 3:
        raise PreconditionError(f"dimension must be at least 3, got {d}")
    return [
        states
        for states in combinations_with_replacement(STATE_ORDER, d - 3)
        if not is_excluded(d, states) and all(s == CliqueVertexState.ADJ_BOTH for s in states)
    ]


def enumerate_minimal_tits(d: int) -> list[DesignatedGraph]:
    """TITSs obtained from the minimal TIFS family by the two-vertex scheme."""
    return [tits_from_tifs(minimal_tifs(d, states)) for states in _tits_sources(d)]


def count_constructible_tits(d: int) -> int:
    return len(_tits_sources(d))

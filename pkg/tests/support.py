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


"""Oracles shared by the test modules: networkx conversions and brute force."""

from itertools import combinations
from pathlib import Path

import networkx as nx

from tifs.graphcore import ExclusivityGraph

DATA = Path(__file__).parent / "data"


def to_networkx(g: ExclusivityGraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return G


def from_networkx(G: nx.Graph) -> ExclusivityGraph:
    index = {v: i for i, v in enumerate(G.nodes)}
    return ExclusivityGraph.from_edges(len(index), [(index[u], index[v]) for u, v in G.edges])


def atlas(min_n: int, max_n: int) -> list[ExclusivityGraph]:
    return [from_networkx(G) for G in nx.graph_atlas_g() if min_n <= G.number_of_nodes() <= max_n]


def brute_force_assignments(g: ExclusivityGraph, d: int, fixed: dict[int, bool] | None = None) -> list[int]:
    """True-masks of every valid assignment, by trying all 2^n of them."""
    G = to_networkx(g)
    cliques = [set(c) for c in nx.enumerate_all_cliques(G) if len(c) == d]
    fixed = fixed or {}
    valid = []
    for mask in range(1 << g.n):
        true = {v for v in range(g.n) if mask >> v & 1}
        if any((v in true) != value for v, value in fixed.items()):
            continue
        if any(G.has_edge(u, v) for u, v in combinations(sorted(true), 2)):
            continue
        if all(len(c & true) == 1 for c in cliques):
            valid.append(mask)
    return valid


def brute_force_tifs(g: ExclusivityGraph, d: int, a: int, b: int) -> bool:
    if not brute_force_assignments(g, d, {a: True}):
        return False
    return not brute_force_assignments(g, d, {a: True, b: True})


def read_data(name: str) -> str:
    return (DATA / name).read_text()


def brute_force_verdicts(g: ExclusivityGraph, d: int) -> dict[tuple[int, int], tuple[bool, bool, bool]]:
    """(TIFS, TITS, true-iff-true) for every ordered non-adjacent pair, from all valid assignments."""
    masks = brute_force_assignments(g, d)
    verdicts = {}
    for a in range(g.n):
        for b in range(g.n):
            if a == b or g.has_edge(a, b):
                continue
            with_a = [m for m in masks if m >> a & 1]
            tifs = bool(with_a) and not any(m >> b & 1 for m in with_a)
            tits = bool(with_a) and all(m >> b & 1 for m in with_a)
            together = all((m >> a & 1) == (m >> b & 1) for m in masks)
            iff = together and bool(with_a) and len(with_a) < len(masks)
            verdicts[(a, b)] = (tifs, tits, iff)
    return verdicts

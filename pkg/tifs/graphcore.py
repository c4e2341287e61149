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


"""Exclusivity graphs on at most 64 vertices.

Every graph is stored as a tuple of adjacency bit rows: bit ``j`` of
``rows[i]`` is set iff vertices ``i`` and ``j`` are exclusive (adjacent).
Rows are plain Python ints, so set operations on neighbourhoods are single
integer operations and the same masks can be handed to the compiled kernel.

Canonical labelling uses colour refinement followed by an
individualization-refinement search. Automorphisms discovered during the
search prune sibling subtrees and give the group order as the product of
first-path orbit sizes.
"""

import json
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .constants import DOT, GRAPH6, GRAPH6_HEADER, JSON, MAX_VERTICES
from .errors import GraphFormatError, PreconditionError


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True, slots=True)
class ExclusivityGraph:
    n: int
    rows: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise PreconditionError(f"graphs are limited to {MAX_VERTICES} vertices, got {self.n}")
        if len(self.rows) != self.n:
            raise PreconditionError(f"expected {self.n} rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row < 0 or row & ~full:
                raise PreconditionError(f"row {v} references a vertex outside 0..{self.n - 1}")
            if row >> v & 1:
                raise PreconditionError(f"vertex {v} has a self-loop")
            for u in iter_bits(row):
                if not self.rows[u] >> v & 1:
                    raise PreconditionError(f"edge {v}-{u} is not symmetric")
        if self.labels is not None and len(self.labels) != self.n:
            raise PreconditionError("labels must name every vertex")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None):
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise PreconditionError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge {u}-{v} is out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), tuple(labels) if labels is not None else None)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1))]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def relabel(self, perm: Sequence[int]) -> "ExclusivityGraph":
        """Return the graph in which old vertex ``v`` becomes ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise PreconditionError("relabel expects a permutation of 0..n-1")
        rows = [0] * self.n
        for v, row in enumerate(self.rows):
            rows[perm[v]] = mask_of(perm[u] for u in iter_bits(row))
        labels = None
        if self.labels is not None:
            moved = [""] * self.n
            for v, name in enumerate(self.labels):
                moved[perm[v]] = name
            labels = tuple(moved)
        return ExclusivityGraph(self.n, tuple(rows), labels)

    def add_vertex(self, neighbours: int, label: str | None = None) -> "ExclusivityGraph":
        v = self.n
        rows = [row | ((neighbours >> u & 1) << v) for u, row in enumerate(self.rows)]
        rows.append(neighbours)
        labels = None
        if self.labels is not None:
            labels = self.labels + (label if label is not None else str(v),)
        return ExclusivityGraph(self.n + 1, tuple(rows), labels)

    def induced(self, vertices: Sequence[int]) -> "ExclusivityGraph":
        """Induced subgraph; vertex ``vertices[i]`` becomes ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        keep = mask_of(vertices)
        rows = tuple(mask_of(index[u] for u in iter_bits(self.rows[v] & keep)) for v in vertices)
        labels = tuple(self.labels[v] for v in vertices) if self.labels is not None else None
        return ExclusivityGraph(len(vertices), rows, labels)

    def with_labels(self, labels: Sequence[str] | None) -> "ExclusivityGraph":
        return ExclusivityGraph(self.n, self.rows, tuple(labels) if labels is not None else None)


@dataclass(frozen=True, slots=True)
class CanonicalForm:
    bytes: bytes
    # labeling[v] is the canonical position of input vertex v
    labeling: tuple[int, ...]
    automorphism_count: int
    # smallest vertex of each vertex's automorphism orbit
    orbits: tuple[int, ...]


def _refine(rows: Sequence[int], cells: list[list[int]], splitters: Iterable[int]) -> list[list[int]]:
    queue = deque(splitters)
    while queue:
        splitter = queue.popleft()
        refined = []
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            buckets: dict[int, list[int]] = {}
            for v in cell:
                buckets.setdefault((rows[v] & splitter).bit_count(), []).append(v)
            if len(buckets) == 1:
                refined.append(cell)
                continue
            for key in sorted(buckets):
                fragment = buckets[key]
                refined.append(fragment)
                queue.append(mask_of(fragment))
        cells = refined
    return cells


class _CanonicalSearch:
    def __init__(self, rows: Sequence[int], n: int):
        self.rows = rows
        self.n = n
        self.first_path: list[int] = []
        self.first_order: list[int] | None = None
        self.first_cert: tuple[int, ...] | None = None
        self.best_order: list[int] | None = None
        self.best_cert: tuple[int, ...] | None = None
        self.generators: list[tuple[int, ...]] = []
        self._seen_generators: set[tuple[int, ...]] = set()
        self.group_order = 1

    def run(self, cells: list[list[int]]) -> None:
        cells = _refine(self.rows, cells, [mask_of(cell) for cell in cells])
        self._visit(cells, [], True)

    def _visit(self, cells: list[list[int]], prefix: list[int], on_first_path: bool) -> int | None:
        depth = len(prefix)
        index = next((i for i, cell in enumerate(cells) if len(cell) > 1), None)
        if index is None:
            return self._leaf([cell[0] for cell in cells], prefix)

        target = cells[index]
        candidates = sorted(target)
        explored: list[int] = []
        for w in candidates:
            if explored and self._shares_orbit(w, explored, prefix):
                continue
            explored.append(w)
            child = cells[:index] + [[w], [u for u in target if u != w]] + cells[index + 1:]
            child = _refine(self.rows, child, [1 << w])
            jump = self._visit(child, prefix + [w], on_first_path and w == candidates[0])
            if jump is not None and jump < depth:
                return jump

        if on_first_path:
            roots = self._orbit_roots(prefix)
            first = roots[candidates[0]]
            self.group_order *= sum(1 for v in candidates if roots[v] == first)
        return None

    def _leaf(self, order: list[int], prefix: list[int]) -> int | None:
        position = [0] * self.n
        for p, v in enumerate(order):
            position[v] = p
        cert = tuple(mask_of(position[u] for u in iter_bits(self.rows[v])) for v in order)

        if self.first_cert is None:
            self.first_cert = self.best_cert = cert
            self.first_order = self.best_order = order
            self.first_path = list(prefix)
            return None

        if cert == self.first_cert:
            self._add_generator(self.first_order, order)
            common = 0
            while common < len(prefix) and prefix[common] == self.first_path[common]:
                common += 1
            return common

        if cert == self.best_cert:
            self._add_generator(self.best_order, order)
        elif cert > self.best_cert:
            self.best_cert = cert
            self.best_order = order
        return None

    def _add_generator(self, source: list[int], target: list[int]) -> None:
        gamma = [0] * self.n
        for p, v in enumerate(source):
            gamma[v] = target[p]
        key = tuple(gamma)
        if key in self._seen_generators or all(v == gamma[v] for v in range(self.n)):
            return
        self._seen_generators.add(key)
        self.generators.append(key)

    def _orbit_roots(self, fixed: Sequence[int]) -> list[int]:
        parent = list(range(self.n))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for gamma in self.generators:
            if any(gamma[v] != v for v in fixed):
                continue
            for v in range(self.n):
                a, b = find(v), find(gamma[v])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return [find(v) for v in range(self.n)]

    def _shares_orbit(self, w: int, explored: list[int], prefix: list[int]) -> bool:
        if not self.generators:
            return False
        roots = self._orbit_roots(prefix)
        return any(roots[w] == roots[u] for u in explored)


def canonical_form(g: ExclusivityGraph, colors: Sequence[int] | None = None) -> CanonicalForm:
    """Canonical byte string, labelling, automorphism count and orbits.

    With ``colors`` only colour-preserving isomorphisms are considered and
    the colour of every canonical position is appended to the bytes.
    """
    n = g.n
    if colors is not None:
        if len(colors) != n:
            raise PreconditionError("one colour per vertex is required")
        cells = [[v for v in range(n) if colors[v] == key] for key in sorted(set(colors))]
    else:
        cells = [list(range(n))] if n else []

    search = _CanonicalSearch(g.rows, n)
    search.run(cells)

    order = search.best_order
    labeling = [0] * n
    for p, v in enumerate(order):
        labeling[v] = p
    data = _encode_graph6(n, search.best_cert)
    if colors is not None:
        data += b"|" + b",".join(str(colors[v]).encode() for v in order)
    return CanonicalForm(
        bytes=data,
        labeling=tuple(labeling),
        automorphism_count=search.group_order,
        orbits=tuple(search._orbit_roots(())),
    )


def are_isomorphic(g: ExclusivityGraph, h: ExclusivityGraph) -> bool:
    if g.n != h.n or g.edge_count != h.edge_count:
        return False
    return canonical_form(g).bytes == canonical_form(h).bytes


def _connected(rows: Sequence[int], alive: int) -> bool:
    if not alive:
        return True
    seen = frontier = alive & -alive
    while frontier:
        reached = 0
        for v in iter_bits(frontier):
            reached |= rows[v]
        frontier = reached & alive & ~seen
        seen |= frontier
    return seen == alive


def is_biconnected(g: ExclusivityGraph) -> bool:
    """Connected and still connected after deleting any single vertex.

    K1 and K2 count as biconnected; the empty graph does not.
    """
    if g.n == 0:
        return False
    if g.n == 1:
        return True
    if g.n == 2:
        return g.has_edge(0, 1)
    full = g.full_mask
    if not _connected(g.rows, full):
        return False
    return all(_connected(g.rows, full & ~(1 << v)) for v in range(g.n))


def min_degree(g: ExclusivityGraph) -> int:
    if g.n == 0:
        return 0
    return min(row.bit_count() for row in g.rows)


def _cliques_within(rows: Sequence[int], candidates: int, k: int, first_only: bool = False) -> list[tuple[int, ...]]:
    found: list[tuple[int, ...]] = []

    def extend(clique: list[int], cand: int) -> bool:
        if len(clique) == k:
            found.append(tuple(clique))
            return first_only
        if cand.bit_count() < k - len(clique):
            return False
        for v in iter_bits(cand):
            later = cand & rows[v] & ~((1 << (v + 1)) - 1)
            if extend(clique + [v], later):
                return True
        return False

    extend([], candidates)
    return found


def has_clique(rows: Sequence[int], candidates: int, k: int) -> bool:
    """True if the vertices in ``candidates`` contain a k-clique."""
    if k <= 0:
        return True
    return bool(_cliques_within(rows, candidates, k, first_only=True))


def cliques_of_size(g: ExclusivityGraph, k: int) -> list[tuple[int, ...]]:
    """All k-cliques as increasing vertex tuples, in lexicographic order."""
    if k < 1:
        raise PreconditionError(f"clique size must be positive, got {k}")
    return _cliques_within(g.rows, g.full_mask, k)


def maximal_cliques(g: ExclusivityGraph) -> list[tuple[int, ...]]:
    """Bron-Kerbosch with pivoting; isolated vertices are 1-cliques."""
    rows = g.rows
    found: list[tuple[int, ...]] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            found.append(tuple(iter_bits(r)))
            return
        pivot = max(iter_bits(p | x), key=lambda u: (rows[u] & p).bit_count())
        for v in iter_bits(p & ~rows[pivot]):
            expand(r | (1 << v), p & rows[v], x & rows[v])
            p &= ~(1 << v)
            x |= 1 << v

    if g.n:
        expand(0, g.full_mask, 0)
    return sorted(found)


def contexts(g: ExclusivityGraph, d: int | None = None) -> list[tuple[int, ...]]:
    """Maximal cliques with at least two vertices; with ``d``, only those of size d."""
    cliques = [c for c in maximal_cliques(g) if len(c) >= 2]
    if d is not None:
        cliques = [c for c in cliques if len(c) == d]
    return cliques


class _EmbeddingSearch:
    """Injective edge-preserving maps pattern -> host (not necessarily induced)."""

    def __init__(self, host: ExclusivityGraph, pattern: ExclusivityGraph):
        self.host = host
        self.pattern = pattern
        self.host_degree = [row.bit_count() for row in host.rows]

    def _order_from(self, root: int) -> list[int]:
        rows = self.pattern.rows
        order = [root]
        placed = 1 << root
        while len(order) < self.pattern.n:
            remaining = [u for u in range(self.pattern.n) if not placed >> u & 1]
            nxt = max(remaining, key=lambda u: ((rows[u] & placed).bit_count(), rows[u].bit_count(), -u))
            order.append(nxt)
            placed |= 1 << nxt
        return order

    def count(self, limit: int = 0, root: int | None = None, root_image: int | None = None) -> int:
        pattern = self.pattern
        host = self.host
        if pattern.n > host.n:
            return 0
        if pattern.n == 0:
            return 1
        if root is None:
            root = max(range(pattern.n), key=lambda u: (pattern.degree(u), -u))
        order = self._order_from(root)
        position = {u: i for i, u in enumerate(order)}
        earlier = [[position[w] for w in iter_bits(pattern.rows[u]) if position[w] < i] for i, u in enumerate(order)]
        need = [pattern.degree(u) for u in order]
        capable = {}
        for k in set(need):
            capable[k] = mask_of(v for v in range(host.n) if self.host_degree[v] >= k)
        image = [0] * pattern.n
        total = 0

        def assign(i: int, used: int) -> bool:
            nonlocal total
            if i == pattern.n:
                total += 1
                return bool(limit) and total >= limit
            if i == 0 and root_image is not None:
                cand = (1 << root_image) & capable[need[0]]
            else:
                cand = host.full_mask & ~used & capable[need[i]]
            for j in earlier[i]:
                cand &= host.rows[image[j]]
            for v in iter_bits(cand):
                image[i] = v
                if assign(i + 1, used | (1 << v)):
                    return True
            return False

        assign(0, 0)
        return total


@lru_cache(maxsize=256)
def _orbit_representatives(pattern: ExclusivityGraph) -> tuple[int, ...]:
    return tuple(sorted(set(canonical_form(pattern).orbits)))


def contains_subgraph(g: ExclusivityGraph, pattern: ExclusivityGraph, anchor: int | None = None) -> bool:
    """True if ``pattern`` embeds in ``g`` (not necessarily induced).

    With ``anchor``, only embeddings whose image contains that vertex count.
    """
    search = _EmbeddingSearch(g, pattern)
    if anchor is None:
        return search.count(limit=1) > 0
    for u in _orbit_representatives(pattern):
        if search.count(limit=1, root=u, root_image=anchor):
            return True
    return False


def count_subgraph_embeddings(g: ExclusivityGraph, pattern: ExclusivityGraph) -> int:
    """Number of distinct subgraph copies of ``pattern`` in ``g``.

    Injective edge-preserving maps are counted and divided by the number of
    automorphisms of the pattern.
    """
    if pattern.n > g.n:
        return 0
    maps = _EmbeddingSearch(g, pattern).count()
    return maps // canonical_form(pattern).automorphism_count


def delete_vertex(g: ExclusivityGraph, v: int) -> ExclusivityGraph:
    if not 0 <= v < g.n:
        raise PreconditionError(f"vertex {v} is not in a graph on {g.n} vertices")
    return g.induced([u for u in range(g.n) if u != v])


def _encode_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])


def _encode_graph6(n: int, rows: Sequence[int]) -> bytes:
    out = bytearray(_encode_size(n))
    value = 0
    width = 0
    for j in range(1, n):
        for i in range(j):
            value = value << 1 | (rows[i] >> j & 1)
            width += 1
            if width == 6:
                out.append(value + 63)
                value = width = 0
    if width:
        out.append((value << (6 - width)) + 63)
    return bytes(out)


def _decode_graph6(data: bytes) -> ExclusivityGraph:
    offset = 0
    if data.startswith(GRAPH6_HEADER):
        offset = len(GRAPH6_HEADER)
    body = data[offset:].rstrip(b"\r\n")
    if not body:
        raise GraphFormatError("empty graph6 string", offset)
    for i, byte in enumerate(body):
        if not 63 <= byte <= 126:
            raise GraphFormatError(f"byte {byte!r} is outside the graph6 alphabet", offset + i)

    if body[0] == 126:
        if len(body) >= 2 and body[1] == 126:
            raise GraphFormatError(f"graphs are limited to {MAX_VERTICES} vertices", offset + 1)
        if len(body) < 4:
            raise GraphFormatError("truncated vertex count", offset + len(body))
        n = (body[1] - 63) << 12 | (body[2] - 63) << 6 | (body[3] - 63)
        start = 4
    else:
        n = body[0] - 63
        start = 1
    if n > MAX_VERTICES:
        raise GraphFormatError(f"graphs are limited to {MAX_VERTICES} vertices, got {n}", offset)

    needed = (n * (n - 1) // 2 + 5) // 6
    payload = body[start:]
    if len(payload) < needed:
        raise GraphFormatError(f"expected {needed} adjacency bytes, got {len(payload)}", offset + len(body))
    if len(payload) > needed:
        raise GraphFormatError("trailing bytes after adjacency data", offset + start + needed)

    rows = [0] * n
    bit = 0
    for j in range(1, n):
        for i in range(j):
            chunk = payload[bit // 6] - 63
            if chunk >> (5 - bit % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            bit += 1
    return ExclusivityGraph(n, tuple(rows))


def _render_dot(g: ExclusivityGraph, d: int | None) -> str:
    # Each highlighted context is drawn as one bold path through its
    # vertices; edges inside it are not drawn separately.
    highlighted = greechie_lines(g, d) if d is not None else [c for c in contexts(g) if len(c) >= 3]
    palette = ("red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "teal", "gold")
    covered = set()
    lines = ["graph G {", "  node [shape=circle];"]
    for v in range(g.n):
        lines.append(f'  {v} [label="{g.label(v)}"];')
    for i, context in enumerate(highlighted):
        color = palette[i % len(palette)]
        lines.append(f"  // context {i}: {' '.join(g.label(v) for v in context)}")
        path = " -- ".join(str(v) for v in context)
        lines.append(f'  {path} [color="{color}", penwidth=2.5];')
        covered.update((u, v) for u in context for v in context if u < v)
    for u, v in g.edges():
        if (u, v) not in covered:
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def serialize(g: ExclusivityGraph, fmt: str = GRAPH6, d: int | None = None) -> bytes:
    if fmt == GRAPH6:
        return _encode_graph6(g.n, g.rows)
    if fmt == DOT:
        return _render_dot(g, d).encode()
    if fmt == JSON:
        doc = {"n": g.n, "edges": [list(e) for e in g.edges()], "labels": list(g.labels or ())}
        return json.dumps(doc).encode()
    raise PreconditionError(f"unknown graph format {fmt!r}")


def parse(data: bytes | str, fmt: str = GRAPH6) -> ExclusivityGraph:
    if isinstance(data, str):
        data = data.encode()
    if fmt == GRAPH6:
        return _decode_graph6(data.strip(b" \t"))
    if fmt == JSON:
        try:
            doc = json.loads(data)
            labels = doc.get("labels") or None
            return ExclusivityGraph.from_edges(int(doc["n"]), [tuple(e) for e in doc["edges"]], labels)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc.msg}", exc.pos) from exc
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(f"invalid graph document: {exc}", 0) from exc
    if fmt == DOT:
        raise GraphFormatError("dot output cannot be parsed back", 0)
    raise PreconditionError(f"unknown graph format {fmt!r}")


def greechie_lines(g: ExclusivityGraph, d: int) -> list[tuple[int, ...]]:
    """Contexts as drawn in an orthogonality diagram.

    The d-cliques come first. Every vertex outside all of them that touches
    the core shared by every d-clique gets one line through itself and
    those core neighbours. Each edge still not drawn is a line of its own.
    """
    complete = cliques_of_size(g, d) if d >= 1 else []
    lines: list[tuple[int, ...]] = list(complete)
    core = g.full_mask if complete else 0
    inside = 0
    covered: set[tuple[int, int]] = set()
    for clique in complete:
        core &= mask_of(clique)
        inside |= mask_of(clique)
        covered.update((u, v) for u in clique for v in clique if u < v)

    for x in range(g.n):
        if inside >> x & 1:
            continue
        touching = g.rows[x] & core
        if touching:
            line = tuple(sorted([x, *iter_bits(touching)]))
            lines.append(line)
            covered.update((u, v) for u in line for v in line if u < v)

    lines.extend(edge for edge in g.edges() if edge not in covered)
    return lines

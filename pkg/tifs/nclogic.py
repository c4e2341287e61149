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


"""Noncontextual assignments and TIFS / TITS / true-iff-true classification.

A valid assignment makes no two exclusive propositions true (edges) and
exactly one proposition of every complete context true (d-cliques). The
search propagates both rules to a fixed point and branches on the lowest
undetermined vertex, true branch first; the compiled kernel runs the same
search on 64-bit masks when it is installed.
"""

import os
from dataclasses import dataclass
from enum import StrEnum
from functools import lru_cache
from typing import Mapping

from .constants import ENV_PURE_PYTHON
from .errors import PreconditionError
from .graphcore import (
    ExclusivityGraph,
    canonical_form,
    cliques_of_size,
    contains_subgraph,
    is_biconnected,
    iter_bits,
    mask_of,
    min_degree,
    delete_vertex,
)
from .logs import get_logger

try:
    from tifs_native import assignment_kernel as _native_kernel
except ImportError:
    _native_kernel = None

logger = get_logger("nclogic")

# largest count the compiled kernel reports exactly
NATIVE_COUNT_CAP = (1 << 64) - 1


class Kind(StrEnum):
    TIFS = "TIFS"
    TITS = "TITS"
    TRUE_IFF_TRUE = "TRUE_IFF_TRUE"
    NONE = "NONE"


@dataclass(frozen=True, slots=True)
class Assignment:
    values: tuple[bool, ...]

    @classmethod
    def from_mask(cls, n: int, true_mask: int) -> "Assignment":
        return cls(tuple(bool(true_mask >> v & 1) for v in range(n)))

    @property
    def true_mask(self) -> int:
        return mask_of(v for v, value in enumerate(self.values) if value)

    def true_vertices(self) -> list[int]:
        return [v for v, value in enumerate(self.values) if value]

    def is_valid(self, g: ExclusivityGraph, d: int) -> bool:
        t = self.true_mask
        if any(g.rows[v] & t for v in iter_bits(t)):
            return False
        return all((mask_of(c) & t).bit_count() == 1 for c in cliques_of_size(g, d))


@dataclass(frozen=True, slots=True)
class Classification:
    kind: Kind
    a: int
    b_or_c: int
    witness_sat: Assignment | None
    refuted_by_exhaustion: bool
    # the plain joint-unsatisfiability test, before requiring that A can be true
    raw_step2_verdict: bool
    d: int = 3


@dataclass(frozen=True, slots=True)
class ForbiddenFamily:
    d: int
    patterns: tuple[ExclusivityGraph, ...]


def using_native_kernel() -> bool:
    return _native_kernel is not None and not os.environ.get(ENV_PURE_PYTHON)


@lru_cache(maxsize=1024)
def _problem(g: ExclusivityGraph, d: int) -> tuple[int, ...]:
    return tuple(mask_of(c) for c in cliques_of_size(g, d))


def _propagate(rows, cliques, t: int, f: int) -> tuple[int, int] | None:
    changed = True
    while changed:
        changed = False
        forced = 0
        for v in iter_bits(t):
            forced |= rows[v]
        if forced & t:
            return None
        f |= forced
        for clique in cliques:
            if clique & t:
                continue
            open_ = clique & ~f
            if not open_:
                return None
            if not open_ & (open_ - 1):
                t |= open_
                changed = True
    return t, f


def _python_solve(rows, cliques, n: int, true_mask: int, false_mask: int, limit: int) -> tuple[int, int | None]:
    full = (1 << n) - 1
    witness = None

    def search(t: int, f: int, budget: int) -> int:
        nonlocal witness
        state = _propagate(rows, cliques, t, f)
        if state is None:
            return 0
        t, f = state
        rest = full & ~(t | f)
        if not rest:
            if witness is None:
                witness = t
            return 1
        bit = rest & -rest
        total = search(t | bit, f, budget)
        if budget and total >= budget:
            return total
        return total + search(t, f | bit, budget - total if budget else 0)

    return search(true_mask, false_mask, limit), witness


def _masks(g: ExclusivityGraph, fixed: Mapping[int, bool] | None) -> tuple[int, int]:
    true_mask = false_mask = 0
    for v, value in (fixed or {}).items():
        if not 0 <= v < g.n:
            raise PreconditionError(f"fixed vertex {v} is not in a graph on {g.n} vertices")
        if value:
            true_mask |= 1 << v
        else:
            false_mask |= 1 << v
    for v in iter_bits(true_mask):
        clash = g.rows[v] & true_mask
        if clash:
            u = clash.bit_length() - 1
            raise PreconditionError(f"fixed assignment makes exclusive vertices {v} and {u} both true")
    return true_mask, false_mask


def _solve(g: ExclusivityGraph, d: int, fixed: Mapping[int, bool] | None, limit: int) -> tuple[int, int | None]:
    if d < 3:
        raise PreconditionError(f"dimension must be at least 3, got {d}")
    true_mask, false_mask = _masks(g, fixed)
    cliques = _problem(g, d)
    if using_native_kernel():
        count, witness = _native_kernel.solve(list(g.rows), list(cliques), g.n, true_mask, false_mask, limit)
        if count < NATIVE_COUNT_CAP:
            return count, witness
        logger.debug(f"Compiled count saturated on n={g.n}; recounting in Python")
    return _python_solve(g.rows, cliques, g.n, true_mask, false_mask, limit)


def find_assignment(g: ExclusivityGraph, d: int, fixed: Mapping[int, bool] | None = None) -> Assignment | None:
    count, witness = _solve(g, d, fixed, 1)
    if not count:
        return None
    return Assignment.from_mask(g.n, witness)


def count_assignments(g: ExclusivityGraph, d: int, fixed: Mapping[int, bool] | None = None, limit: int = 0) -> int:
    """Number of valid assignments extending ``fixed``; ``limit`` > 0 stops early."""
    return _solve(g, d, fixed, limit)[0]


def _satisfiable(g, d, fixed) -> bool:
    return _solve(g, d, fixed, 1)[0] > 0


def _check_pair(g: ExclusivityGraph, a: int, b: int) -> None:
    for v in (a, b):
        if not 0 <= v < g.n:
            raise PreconditionError(f"vertex {v} is not in a graph on {g.n} vertices")
    if a == b:
        raise PreconditionError("the designated vertices must be distinct")
    if g.has_edge(a, b):
        raise PreconditionError(f"vertices {a} and {b} are exclusive; the question is trivial")


def is_tifs(g: ExclusivityGraph, d: int, a: int, b: int) -> bool:
    _check_pair(g, a, b)
    if _satisfiable(g, d, {a: True, b: True}):
        return False
    return _satisfiable(g, d, {a: True})


def is_tits(g: ExclusivityGraph, d: int, a: int, c: int) -> bool:
    _check_pair(g, a, c)
    if _satisfiable(g, d, {a: True, c: False}):
        return False
    return _satisfiable(g, d, {a: True})


def is_true_iff_true(g: ExclusivityGraph, d: int, a: int, c: int) -> bool:
    _check_pair(g, a, c)
    if _satisfiable(g, d, {a: True, c: False}) or _satisfiable(g, d, {a: False, c: True}):
        return False
    return _satisfiable(g, d, {a: True, c: True}) and _satisfiable(g, d, {a: False, c: False})


def classify_all_pairs(g: ExclusivityGraph, d: int, include_vacuous: bool = False) -> list[Classification]:
    """Every verdict that holds, ordered by (a, b) and then by kind.

    Ordered pairs are tested for TIFS and TITS, unordered pairs (a < b) for
    true-iff-true. With ``include_vacuous`` pairs whose joint
    unsatisfiability only holds because ``a`` can never be true are listed
    with kind NONE.
    """
    results = []
    witnesses = {a: find_assignment(g, d, {a: True}) for a in range(g.n)}
    for a in range(g.n):
        witness = witnesses[a]
        for b in range(g.n):
            if b == a or g.has_edge(a, b):
                continue
            if witness is None:
                if include_vacuous:
                    results.append(Classification(Kind.NONE, a, b, None, True, True, d))
                continue
            if not _satisfiable(g, d, {a: True, b: True}):
                results.append(Classification(Kind.TIFS, a, b, witness, True, True, d))
            elif not _satisfiable(g, d, {a: True, b: False}):
                results.append(Classification(Kind.TITS, a, b, witness, True, True, d))
            if a < b and is_true_iff_true(g, d, a, b):
                both = find_assignment(g, d, {a: True, b: True})
                results.append(Classification(Kind.TRUE_IFF_TRUE, a, b, both, True, True, d))
    return results


def classify_pair(g: ExclusivityGraph, d: int, kind: Kind, a: int, b: int) -> Classification:
    """Re-derive a single verdict, as used when re-validating a certificate."""
    _check_pair(g, a, b)
    witness = find_assignment(g, d, {a: True})
    if kind == Kind.TIFS:
        raw = not _satisfiable(g, d, {a: True, b: True})
        holds = raw and witness is not None
    elif kind == Kind.TITS:
        raw = not _satisfiable(g, d, {a: True, b: False})
        holds = raw and witness is not None
    elif kind == Kind.TRUE_IFF_TRUE:
        holds = raw = is_true_iff_true(g, d, a, b)
        witness = find_assignment(g, d, {a: True, b: True}) if holds else witness
    else:
        raise PreconditionError(f"cannot classify a pair as {kind}")
    return Classification(kind if holds else Kind.NONE, a, b, witness, True, raw, d)


def designated_key(g: ExclusivityGraph, a: int, b: int) -> bytes:
    """Canonical bytes of ``g`` up to isomorphisms fixing the ordered pair (a, b)."""
    colors = [0] * g.n
    colors[a] = 1
    colors[b] = 2
    return canonical_form(g, colors).bytes


def is_critical_tifs(g: ExclusivityGraph, d: int, a: int, b: int) -> bool:
    if not is_tifs(g, d, a, b):
        raise PreconditionError(f"({a}, {b}) is not a TIFS pair in dimension {d}")
    for w in range(g.n):
        if w in (a, b):
            continue
        smaller = delete_vertex(g, w)
        if is_tifs(smaller, d, a - (a > w), b - (b > w)):
            logger.debug(f"vertex {w} can be removed without losing the TIFS")
            return False
    return True


def _complete(n: int) -> ExclusivityGraph:
    return ExclusivityGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def _join_pair(pattern: ExclusivityGraph, adjacent: bool) -> ExclusivityGraph:
    g = pattern.add_vertex(pattern.full_mask)
    return g.add_vertex(pattern.full_mask | ((1 << pattern.n) if adjacent else 0))


@lru_cache(maxsize=None)
def _recursion_seeds(d: int) -> tuple[ExclusivityGraph, ...]:
    # Two distinct rays cannot share a line, orthogonal or not, so both
    # two-vertex graphs seed the odd dimensions.
    if d == 1:
        return (_complete(2), ExclusivityGraph(2, (0, 0)))
    if d == 2:
        return (ExclusivityGraph.from_edges(3, [(0, 1), (0, 2)]),)
    return forbidden_family(d).patterns


@lru_cache(maxsize=None)
def forbidden_family(d: int) -> ForbiddenFamily:
    """Graphs on d+1 vertices with no faithful orthogonal representation in R^d.

    Both adjacency variants of the joined pair are kept, so the family can
    hold patterns that contain one another: for d=3 it is the three 4-vertex
    graphs with 4, 5 and 6 edges, of which C4 is a subgraph of the other two.
    Filtering uses ``minimal_forbidden_patterns``, which drops the
    redundant ones.
    """
    if d < 1:
        raise PreconditionError(f"dimension must be at least 1, got {d}")
    if d == 1:
        return ForbiddenFamily(1, (_complete(2),))
    if d == 2:
        return ForbiddenFamily(2, _recursion_seeds(2))

    by_key = {}
    for pattern in _recursion_seeds(d - 2):
        for adjacent in (False, True):
            extended = _join_pair(pattern, adjacent)
            by_key.setdefault(canonical_form(extended).bytes, extended)
    return ForbiddenFamily(d, tuple(by_key[key] for key in sorted(by_key)))


@lru_cache(maxsize=None)
def minimal_forbidden_patterns(d: int) -> tuple[ExclusivityGraph, ...]:
    """Patterns of the family that contain no other pattern of the family.

    Containment is not induced, so a graph avoids the whole family iff it
    avoids these.
    """
    patterns = forbidden_family(d).patterns
    keep = []
    for i, p in enumerate(patterns):
        if not any(j != i and q.edge_count < p.edge_count and contains_subgraph(p, q) for j, q in enumerate(patterns)):
            keep.append(p)
    return tuple(keep)


def passes_dimension_filters(g: ExclusivityGraph, d: int) -> bool:
    if d < 3:
        raise PreconditionError(f"dimension must be at least 3, got {d}")
    if min_degree(g) < 2 or not is_biconnected(g):
        return False
    if len(cliques_of_size(g, d)) < 2:
        return False
    if g.n > d and cliques_of_size(g, d + 1):
        return False
    return not any(contains_subgraph(g, p) for p in minimal_forbidden_patterns(d))

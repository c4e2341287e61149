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


"""Orthogonal realizations: unit vectors whose orthogonality pattern is a graph.

A realization of an exclusivity graph is faithful when adjacent vertices
get orthogonal vectors and non-adjacent vertices get non-orthogonal ones.
Closed-form builders cover the minimal TIFS and TITS families; the
numeric searches look for realizations of arbitrary graphs and for the
smallest angle the bug allows between its designated rays.
"""

import time
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Iterable, Sequence

import numpy as np

from .constants import (
    CROSS_PRODUCT_FLOOR,
    DEFAULT_EPSILON,
    DEFAULT_RAY_TOLERANCE,
    DEFAULT_TOLERANCE,
    FAITHFUL_FLOOR,
    NONEDGE_MARGIN,
)
from .construct import VERTEX_A, VERTEX_B, CliqueVertexState, bug, check_states
from .errors import DegenerateInputError, DuplicateRayError, PreconditionError, VerificationError
from .graphcore import ExclusivityGraph, cliques_of_size, count_subgraph_embeddings, mask_of
from .logs import get_logger

logger = get_logger("realize")

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)

# A, v1..v6, B of the bug in R^3
BUG_BASE = np.array(
    [
        [0.0, -1.0, SQRT2],
        [1.0, SQRT2, 1.0],
        [1.0, 0.0, 0.0],
        [1.0, 0.0, -1.0],
        [0.0, 1.0, 0.0],
        [-1.0, SQRT2, -1.0],
        [0.0, 0.0, 1.0],
        [SQRT2, 1.0, 0.0],
    ]
) / np.array([[SQRT3], [2.0], [1.0], [SQRT2], [1.0], [2.0], [1.0], [SQRT3]])


@dataclass(frozen=True, eq=False)
class Realization:
    d: int
    vectors: np.ndarray
    epsilon: float = 0.0
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        vectors = np.array(self.vectors, dtype=float)
        if vectors.ndim != 2 or vectors.shape[1] != self.d:
            raise PreconditionError(f"expected an (n, {self.d}) array of vectors, got shape {vectors.shape}")
        drift = np.abs(np.linalg.norm(vectors, axis=1) - 1.0)
        bound = max(self.tolerance, DEFAULT_TOLERANCE)
        if drift.size and drift.max() > bound:
            worst = int(np.argmax(drift))
            raise VerificationError(f"vector {worst} is not a unit vector (norm off by {drift[worst]:.3e})")
        vectors.setflags(write=False)
        object.__setattr__(self, "vectors", vectors)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]


@dataclass(frozen=True, slots=True)
class PairCheck:
    u: int
    v: int
    adjacent: bool
    overlap: float
    ok: bool


@dataclass(frozen=True, slots=True)
class VerificationReport:
    max_edge_overlap: float
    min_nonedge_overlap: float
    passed: bool
    pairs: tuple[PairCheck, ...]

    def failures(self) -> list[PairCheck]:
        return [p for p in self.pairs if not p.ok]


def verify(r: Realization, g: ExclusivityGraph, tolerance: float | None = None) -> VerificationReport:
    if r.n != g.n:
        raise PreconditionError(f"realization has {r.n} vectors, graph has {g.n} vertices")
    tol = r.tolerance if tolerance is None else tolerance
    overlaps = np.abs(r.vectors @ r.vectors.T)
    pairs = []
    max_edge = 0.0
    min_nonedge = np.inf
    for u in range(g.n):
        for v in range(u + 1, g.n):
            overlap = float(overlaps[u, v])
            adjacent = g.has_edge(u, v)
            if adjacent:
                max_edge = max(max_edge, overlap)
                ok = overlap <= tol
            else:
                min_nonedge = min(min_nonedge, overlap)
                ok = overlap > tol
            pairs.append(PairCheck(u, v, adjacent, overlap, ok))
    passed = max_edge <= tol and min_nonedge > tol
    return VerificationReport(max_edge, float(min_nonedge), passed, tuple(pairs))


def angle_between(r: Realization, a: int, b: int) -> float:
    overlap = abs(float(r.vectors[a] @ r.vectors[b]))
    return float(np.arccos(min(1.0, overlap)))


def expected_ab_overlap(states: Iterable[CliqueVertexState | str], epsilon: float) -> float:
    """|<A,B>| of the closed-form realization: each perturbed endpoint scales it by sqrt(1-eps^2)."""
    states = [CliqueVertexState.parse(s) if isinstance(s, str) else s for s in states]
    perturbed = any(s == CliqueVertexState.ADJ_A for s in states) + any(s == CliqueVertexState.ADJ_B for s in states)
    return (1.0 - epsilon**2) ** (perturbed / 2) / 3.0


def _perturb(base: np.ndarray, axes: list[int], epsilon: float) -> np.ndarray:
    vector = base.copy()
    vector[:3] *= np.sqrt(1.0 - epsilon**2)
    vector[axes] = epsilon / np.sqrt(len(axes))
    return vector


def _tifs_vectors(d: int, states: tuple[CliqueVertexState, ...], epsilon: float) -> np.ndarray:
    if not 0.0 <= epsilon < 1.0:
        raise PreconditionError(f"epsilon must lie in [0, 1), got {epsilon}")
    vectors = np.zeros((d + 5, d))
    vectors[:8, :3] = BUG_BASE
    for k in range(d - 3):
        vectors[8 + k, 3 + k] = 1.0

    # A picks up the axes of clique vertices it must not be orthogonal to
    a_axes = [3 + k for k, s in enumerate(states) if s == CliqueVertexState.ADJ_B]
    b_axes = [3 + k for k, s in enumerate(states) if s == CliqueVertexState.ADJ_A]
    if (a_axes or b_axes) and epsilon == 0.0:
        raise PreconditionError("epsilon = 0 leaves a clique vertex orthogonal to a designated vertex it is not exclusive with")
    if a_axes:
        vectors[VERTEX_A] = _perturb(vectors[VERTEX_A], a_axes, epsilon)
    if b_axes:
        vectors[VERTEX_B] = _perturb(vectors[VERTEX_B], b_axes, epsilon)
    return vectors


def build_minimal_tifs_realization(
    d: int,
    states: Iterable[CliqueVertexState | str] = (),
    epsilon: float = DEFAULT_EPSILON,
    tolerance: float = DEFAULT_TOLERANCE,
) -> Realization:
    """Vectors for ``minimal_tifs(d, states)`` in the same vertex order."""
    states = check_states(d, states)
    effective = epsilon if any(s != CliqueVertexState.ADJ_BOTH for s in states) else 0.0
    return Realization(d, _tifs_vectors(d, states, effective), effective, tolerance)


def build_minimal_tits_realization(d: int, tolerance: float = DEFAULT_TOLERANCE) -> Realization:
    """Vectors for the TITS built on the all-BOTH minimal TIFS.

    The auxiliary vector is orthogonal to A and B inside the bug's space and
    C completes B and the auxiliary vector to a basis of it.
    """
    states = check_states(d, [CliqueVertexState.ADJ_BOTH] * (d - 3))
    base = _tifs_vectors(d, states, 0.0)
    aux = np.cross(BUG_BASE[VERTEX_A], BUG_BASE[VERTEX_B])
    aux /= np.linalg.norm(aux)
    target = np.cross(BUG_BASE[VERTEX_B], aux)
    target /= np.linalg.norm(target)
    extra = np.zeros((2, d))
    extra[0, :3] = aux
    extra[1, :3] = target
    return Realization(d, np.vstack([base, extra]), 0.0, tolerance)


def _unit(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (3,):
        raise PreconditionError(f"expected a vector in R^3, got shape {x.shape}")
    norm = np.linalg.norm(x)
    if norm == 0.0:
        raise PreconditionError("zero vector is not a ray")
    return x / norm


def _cross(x: np.ndarray, y: np.ndarray, product: str) -> np.ndarray:
    w = np.cross(x, y)
    norm = float(np.linalg.norm(w))
    if norm < CROSS_PRODUCT_FLOOR:
        raise DegenerateInputError(product, norm)
    return w / norm


def complete_from_pentagon(a, v1, v2, v3, v4, tolerance: float = DEFAULT_RAY_TOLERANCE) -> tuple[np.ndarray, ...]:
    """Complete the pentagon A-v1-v3-v4-v2-A in R^3 to the bug plus its TITS vertices.

    Returns (v5, v6, B, v7, C) with v5 = v1 x v3, v6 = v2 x v4, B = v5 x v6,
    v7 = A x B and C = B x v7, all normalized.
    """
    a, v1, v2, v3, v4 = (_unit(x) for x in (a, v1, v2, v3, v4))
    v5 = _cross(v1, v3, "v5 = v1 x v3")
    v6 = _cross(v2, v4, "v6 = v2 x v4")
    b = _cross(v5, v6, "B = v5 x v6")
    v7 = _cross(a, b, "v7 = A x B")
    c = _cross(b, v7, "C = B x v7")
    for name, x, y in (("A.v1", a, v1), ("A.v2", a, v2), ("v1.v3", v1, v3), ("v2.v4", v2, v4), ("v3.v4", v3, v4)):
        if abs(float(x @ y)) > tolerance:
            raise PreconditionError(f"pentagon edge {name} is not orthogonal ({float(x @ y):.3e})")
    return v5, v6, b, v7, c


def tits_realization_from_pentagon(a, v1, v2, v3, v4, tolerance: float = DEFAULT_RAY_TOLERANCE) -> Realization:
    """Ten vectors in the order A, v1..v6, B, v7, C."""
    v5, v6, b, v7, c = complete_from_pentagon(a, v1, v2, v3, v4, tolerance)
    head = [_unit(x) for x in (a, v1, v2, v3, v4)]
    return Realization(3, np.vstack([*head, v5, v6, b, v7, c]), 0.0, tolerance)


def reconstruct_from_apex_and_edge(a, v3, v4, tolerance: float = DEFAULT_RAY_TOLERANCE) -> Realization:
    """Rebuild the whole ten-ray TITS from A and the pentagon edge opposite to it."""
    a, v3, v4 = _unit(a), _unit(v3), _unit(v4)
    if abs(float(v3 @ v4)) > tolerance:
        raise PreconditionError("v3 and v4 must be orthogonal")
    v1 = _cross(a, v3, "v1 = A x v3")
    v2 = _cross(a, v4, "v2 = A x v4")
    return tits_realization_from_pentagon(a, v1, v2, v3, v4, tolerance)


def bug_tits_rays() -> Realization:
    """The ten rays of the three-dimensional TITS, order A, v1..v6, B, v7, C."""
    raw = [
        (1, 1, 1),
        (1, -1, 0),
        (1, 0, -1),
        (0, 0, 1),
        (0, 1, 0),
        (1, 1, 0),
        (1, 0, 1),
        (-1, 1, 1),
        (0, 1, -1),
        (2, 1, 1),
    ]
    return Realization(3, [_unit(x) for x in raw])


def graph_from_rays(vectors, tolerance: float = DEFAULT_RAY_TOLERANCE) -> ExclusivityGraph:
    """Orthogonality graph of a ray set; parallel rays are rejected."""
    if tolerance <= 0:
        raise PreconditionError("tolerance must be positive")
    vectors = np.asarray(vectors, dtype=float)
    if vectors.ndim != 2:
        raise PreconditionError(f"expected a 2-D array of rays, got shape {vectors.shape}")
    norms = np.linalg.norm(vectors, axis=1)
    if np.any(norms == 0.0):
        raise PreconditionError(f"ray {int(np.argmin(norms))} is the zero vector")
    units = vectors / norms[:, None]
    overlaps = np.abs(units @ units.T)
    n = len(units)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if overlaps[u, v] >= 1.0 - tolerance:
                raise DuplicateRayError(u, v)
            if overlaps[u, v] <= tolerance:
                edges.append((u, v))
    return ExclusivityGraph.from_edges(n, edges)


def forced_orthogonality_conflict(g: ExclusivityGraph, d: int) -> tuple[int, int] | None:
    """A non-adjacent pair that every realization of ``g`` in R^d makes orthogonal or parallel.

    The vectors of a d-clique C form an orthonormal basis, so a vertex w outside
    C lies in the span of Q, the members of C not adjacent to w. Any x adjacent
    to all of Q is then orthogonal to w, and a single-vertex Q makes w parallel
    to it. Returns None when no d-clique forces such a pair; a returned pair
    proves that ``g`` has no faithful realization in R^d.
    """
    for clique in cliques_of_size(g, d):
        members = mask_of(clique)
        for w in range(g.n):
            if members >> w & 1:
                continue
            span = members & ~g.rows[w]
            if span == 0:
                return w, w
            if span.bit_count() == 1:
                return w, span.bit_length() - 1
            for x in range(g.n):
                if x != w and not g.has_edge(w, x) and g.rows[x] & span == span:
                    return w, x
    return None


def count_bug_copies(rays, tolerance: float = DEFAULT_RAY_TOLERANCE) -> int:
    """Subgraphs of the rays' orthogonality graph isomorphic to the bug (not necessarily induced)."""
    return count_subgraph_embeddings(graph_from_rays(rays, tolerance), bug().graph)


def parse_rays(text: str) -> np.ndarray:
    """One ray per line, whitespace separated; blank lines and # comments are skipped."""
    rows = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([float(x) for x in line.split()])
        except ValueError as exc:
            raise PreconditionError(f"line {number}: {exc}") from exc
    if not rows:
        raise PreconditionError("no rays given")
    if len({len(row) for row in rows}) != 1:
        raise PreconditionError("rays must all have the same dimension")
    vectors = np.array(rows)
    norms = np.linalg.norm(vectors, axis=1)
    if np.any(norms == 0.0):
        raise PreconditionError(f"ray {int(np.argmin(norms))} is the zero vector")
    return vectors / norms[:, None]


def format_rays(vectors) -> str:
    return "".join(" ".join(f"{x:.17g}" for x in row) + "\n" for row in np.asarray(vectors, dtype=float))


# Minimum-angle search over bug realizations in R^3.
#
# A point is (a, v3, v4) as raw 3-vectors; a and v3 are normalized and v4 is
# projected onto the plane orthogonal to v3. The rest of the bug follows by
# cross products, so every point satisfies all orthogonality constraints.

BUG_NONEDGES = np.array(
    [[not (u == v or bug().graph.has_edge(u, v)) for v in range(8)] for u in range(8)]
)


@dataclass(frozen=True, eq=False)
class MinAngleResult:
    angle: float
    overlap: float
    realization: Realization
    trial: int


def _normalize_rows(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    norms = np.linalg.norm(x, axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        return x / norms[:, None], norms


def _bug_chain(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(m, 9) points to (m, 8, 3) bug vectors and the smallest normalizer per point."""
    a, na = _normalize_rows(points[:, 0:3])
    v3, n3 = _normalize_rows(points[:, 3:6])
    raw4 = points[:, 6:9]
    v4, n4 = _normalize_rows(raw4 - np.sum(raw4 * v3, axis=1, keepdims=True) * v3)
    norms = [na, n3, n4]

    def cross(x, y):
        w, norm = _normalize_rows(np.cross(x, y))
        norms.append(norm)
        return w

    v1 = cross(a, v3)
    v2 = cross(a, v4)
    v5 = cross(v1, v3)
    v6 = cross(v2, v4)
    b = cross(v5, v6)
    return np.stack([a, v1, v2, v3, v4, v5, v6, b], axis=1), np.min(np.stack(norms), axis=0)


def _angle_objective(points: np.ndarray) -> np.ndarray:
    """|<A,B>| per point, -inf where the bug is degenerate or not faithful."""
    vectors, smallest = _bug_chain(points)
    with np.errstate(invalid="ignore"):
        overlaps = np.abs(np.einsum("mik,mjk->mij", vectors, vectors))
        lowest = np.where(BUG_NONEDGES, overlaps, np.inf).min(axis=(1, 2))
        highest = np.where(BUG_NONEDGES, overlaps, -np.inf).max(axis=(1, 2))
        faithful = (lowest > FAITHFUL_FLOOR) & (highest < 1.0 - FAITHFUL_FLOOR)
    feasible = (smallest > CROSS_PRODUCT_FLOOR) & faithful
    value = overlaps[:, VERTEX_A, VERTEX_B]
    return np.where(feasible, value, -np.inf)


def _ascend(point: np.ndarray, iterations: int, step: float = 1e-6) -> tuple[float, np.ndarray]:
    value = float(_angle_objective(point[None])[0])
    if not np.isfinite(value):
        return value, point
    stencil = step * np.vstack([np.eye(9), -np.eye(9)])
    lr = 0.1
    for _ in range(iterations):
        around = _angle_objective(point + stencil)
        grad = (around[:9] - around[9:]) / (2 * step)
        grad[~np.isfinite(grad)] = 0.0
        size = np.linalg.norm(grad)
        if size < 1e-12:
            break
        candidate = point + lr * grad / size
        trial = float(_angle_objective(candidate[None])[0])
        if trial > value:
            point, value = candidate, trial
            lr *= 1.2
        else:
            lr *= 0.5
            if lr < 1e-12:
                break
        for block in (slice(0, 3), slice(3, 6), slice(6, 9)):
            point[block] /= np.linalg.norm(point[block])
    return value, point


def _angle_trial(task: tuple) -> tuple[int, float, np.ndarray]:
    index, seed_sequence, iterations, start = task
    if start is None:
        start = np.random.default_rng(seed_sequence).normal(size=9)
    value, point = _ascend(np.array(start, dtype=float), iterations)
    return index, value, point


def min_angle_search(
    trials: int = 200,
    iterations: int = 200,
    seed: int = 0,
    workers: int = 1,
    start: Sequence | None = None,
) -> MinAngleResult:
    """Smallest angle between A and B over faithful bug realizations in R^3.

    Each trial climbs |<A,B>| from its own seeded starting point; ``start``
    = (A, v3, v4) replaces the random start of trial 0. The best trial wins,
    ties going to the lowest index.
    """
    if trials < 1:
        raise PreconditionError("at least one trial is required")
    if workers < 1:
        raise PreconditionError("workers must be positive")
    first = None
    if start is not None:
        first = np.concatenate([np.asarray(x, dtype=float) for x in start])
        if first.shape != (9,):
            raise PreconditionError("start must be three vectors in R^3: A, v3, v4")
    children = np.random.SeedSequence(seed).spawn(trials)
    tasks = [(i, children[i], iterations, first if i == 0 else None) for i in range(trials)]

    start_time = time.perf_counter()
    if workers == 1:
        outcomes = list(map(_angle_trial, tasks))
    else:
        with Pool(processes=workers) as pool:
            outcomes = pool.map(_angle_trial, tasks)

    feasible = [o for o in outcomes if np.isfinite(o[1])]
    if not feasible:
        raise VerificationError("no trial reached a faithful realization of the bug")
    index, value, point = max(feasible, key=lambda o: (o[1], -o[0]))
    vectors = _bug_chain(point[None])[0][0]
    elapsed = time.perf_counter() - start_time
    logger.info(f"Angle search over {trials} trials ({len(feasible)} feasible) completed in {elapsed * 1000:.2f}ms")
    angle = float(np.arccos(min(1.0, value)))
    return MinAngleResult(angle, value, Realization(3, vectors, tolerance=DEFAULT_RAY_TOLERANCE), index)


@dataclass(frozen=True, eq=False)
class RealizationSearchResult:
    realization: Realization
    residual: float
    restart: int

    @property
    def converged(self) -> bool:
        return self.residual < 1e-10


def _penalty(x: np.ndarray, edges: np.ndarray, nonedges: np.ndarray, margin: float) -> tuple[float, np.ndarray]:
    gram = x @ x.T
    absolute = np.abs(gram)
    sign = np.sign(gram)
    short = np.maximum(0.0, margin - absolute) * nonedges
    parallel = np.maximum(0.0, absolute - (1.0 - margin)) * nonedges
    loss = 0.5 * np.sum(edges * gram**2) + 0.5 * np.sum(short**2 + parallel**2)
    weights = 2.0 * edges * gram + 2.0 * (parallel - short) * sign
    return float(loss), weights @ x


def _descend(task: tuple) -> tuple[int, float, np.ndarray]:
    index, seed_sequence, edges, nonedges, d, iterations, margin = task
    rng = np.random.default_rng(seed_sequence)
    x = rng.normal(size=(len(edges), d))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    loss, grad = _penalty(x, edges, nonedges, margin)
    lr = 0.1
    for _ in range(iterations):
        if loss < 1e-16:
            break
        tangent = grad - np.sum(grad * x, axis=1, keepdims=True) * x
        candidate = x - lr * tangent
        candidate /= np.linalg.norm(candidate, axis=1, keepdims=True)
        new_loss, new_grad = _penalty(candidate, edges, nonedges, margin)
        if new_loss < loss:
            x, loss, grad = candidate, new_loss, new_grad
            lr *= 1.1
        else:
            lr *= 0.5
            if lr < 1e-14:
                break
    return index, loss, x


def numeric_realization_search(
    g: ExclusivityGraph,
    d: int,
    restarts: int = 20,
    iterations: int = 3000,
    seed: int = 0,
    margin: float = NONEDGE_MARGIN,
    workers: int = 1,
) -> RealizationSearchResult:
    """Projected gradient descent on the product of unit spheres.

    The loss sums squared overlaps over edges plus hinge penalties for
    non-adjacent pairs closer than ``margin`` to orthogonal or to parallel.
    A residual near zero means a faithful realization was found; a large
    one is evidence, not proof, that none exists in R^d.
    """
    if d < 2 or restarts < 1:
        raise PreconditionError("numeric search needs d >= 2 and at least one restart")
    adjacency = np.array([[g.has_edge(u, v) for v in range(g.n)] for u in range(g.n)], dtype=float)
    nonedges = 1.0 - adjacency - np.eye(g.n)
    children = np.random.SeedSequence(seed).spawn(restarts)
    tasks = [(i, children[i], adjacency, nonedges, d, iterations, margin) for i in range(restarts)]

    start_time = time.perf_counter()
    if workers == 1:
        outcomes = list(map(_descend, tasks))
    else:
        with Pool(processes=workers) as pool:
            outcomes = pool.map(_descend, tasks)
    index, loss, x = min(outcomes, key=lambda o: (o[1], o[0]))
    elapsed = time.perf_counter() - start_time
    logger.info(f"Realization search for n={g.n}, d={d}: residual {loss:.3e}, completed in {elapsed * 1000:.2f}ms")
    return RealizationSearchResult(Realization(d, x, tolerance=1e-6), loss, index)

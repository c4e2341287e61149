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


"""Orderly generation of filtered exclusivity graphs and the minimal-TIFS search.

Graphs grow one vertex at a time (canonical augmentation). A child is kept
only when its new vertex lies in the automorphism orbit of the child's
canonical deletion vertex: the minimum-degree vertex with the highest
canonical position. Every isomorphism class is then reached from exactly
one parent; siblings that are isomorphic are merged by canonical bytes.

Work is split by numbering the nodes at a fixed depth of the augmentation
tree; shard ``i`` of ``k`` expands the nodes whose number is ``i`` mod ``k``.
"""

import itertools
import sys
import time
from dataclasses import dataclass, field, replace
from multiprocessing import Pool
from pathlib import Path
from typing import Iterator

from tqdm import tqdm

from .constants import CONFIRM_RESIDUAL, CONFIRM_RESTARTS, DEFAULT_SHARD_DEPTH, MAX_ENUMERATION_VERTICES
from .errors import PreconditionError
from .graphcore import (
    CanonicalForm,
    ExclusivityGraph,
    canonical_form,
    cliques_of_size,
    contains_subgraph,
    has_clique,
    is_biconnected,
    min_degree,
    parse,
    serialize,
)
from .logs import get_logger
from .nclogic import (
    Classification,
    Kind,
    designated_key,
    find_assignment,
    minimal_forbidden_patterns,
    count_assignments,
)
from .realize import Realization, forced_orthogonality_conflict, numeric_realization_search

logger = get_logger("enumgen")


@dataclass(frozen=True)
class SearchSpec:
    n: int
    # None disables every dimension-dependent filter
    d: int | None = None
    forbid_patterns: bool = True
    forbid_large_cliques: bool = True
    max_degree: int | None = None
    require_biconnected: bool = True
    min_degree: int = 2
    min_complete_contexts: int = 2
    shard: tuple[int, int] = (0, 1)
    shard_depth: int = DEFAULT_SHARD_DEPTH

    @classmethod
    def unfiltered(cls, n: int, **overrides) -> "SearchSpec":
        return cls(
            n=n,
            d=None,
            forbid_patterns=False,
            forbid_large_cliques=False,
            require_biconnected=False,
            min_degree=0,
            min_complete_contexts=0,
            **overrides,
        )

    @classmethod
    def for_dimension(cls, n: int, d: int, **overrides) -> "SearchSpec":
        return cls(n=n, d=d, **overrides)

    def validate(self) -> None:
        if not 1 <= self.n <= MAX_ENUMERATION_VERTICES:
            raise PreconditionError(f"n must be between 1 and {MAX_ENUMERATION_VERTICES}, got {self.n}")
        if self.d is not None and self.d < 3:
            raise PreconditionError(f"dimension must be at least 3, got {self.d}")
        index, count = self.shard
        if count < 1 or not 0 <= index < count:
            raise PreconditionError(f"invalid shard {index}/{count}")
        if self.shard_depth < 1:
            raise PreconditionError("shard depth must be positive")


class _Augmenter:
    def __init__(self, spec: SearchSpec):
        self.spec = spec
        dimensional = spec.d is not None
        self.patterns = minimal_forbidden_patterns(spec.d) if dimensional and spec.forbid_patterns else ()
        self.clique_limit = spec.d if dimensional and spec.forbid_large_cliques else None

    def children(self, g: ExclusivityGraph) -> Iterator[ExclusivityGraph]:
        spec = self.spec
        k = g.n
        remaining = spec.n - k - 1
        degrees = [row.bit_count() for row in g.rows]
        # vertices that must gain this neighbour to still reach the minimum degree
        needy = sum(1 << u for u in range(k) if degrees[u] + remaining < spec.min_degree)
        saturated = 0
        if spec.max_degree is not None:
            saturated = sum(1 << u for u in range(k) if degrees[u] >= spec.max_degree)

        seen = set()
        for s in range(1 << k):
            if needy & ~s or saturated & s:
                continue
            size = s.bit_count()
            if size + remaining < spec.min_degree:
                continue
            if spec.max_degree is not None and size > spec.max_degree:
                continue
            if self.clique_limit is not None and size >= self.clique_limit and has_clique(g.rows, s, self.clique_limit):
                continue
            child = g.add_vertex(s)
            if any(contains_subgraph(child, p, anchor=k) for p in self.patterns):
                continue
            form = self._canonical_extension(child)
            if form is None or form.bytes in seen:
                continue
            seen.add(form.bytes)
            yield child

    @staticmethod
    def _canonical_extension(child: ExclusivityGraph) -> CanonicalForm | None:
        new = child.n - 1
        degrees = [row.bit_count() for row in child.rows]
        lowest = min(degrees)
        if degrees[new] != lowest:
            return None
        form = canonical_form(child)
        deletion = max((v for v in range(child.n) if degrees[v] == lowest), key=lambda v: form.labeling[v])
        if form.orbits[new] != form.orbits[deletion]:
            return None
        return form

    def is_terminal(self, g: ExclusivityGraph) -> bool:
        spec = self.spec
        if min_degree(g) < spec.min_degree:
            return False
        if spec.require_biconnected and not is_biconnected(g):
            return False
        if spec.d is not None and spec.min_complete_contexts:
            if len(cliques_of_size(g, spec.d)) < spec.min_complete_contexts:
                return False
        return True


def generate(spec: SearchSpec) -> Iterator[ExclusivityGraph]:
    """One representative per isomorphism class passing every filter of ``spec``."""
    spec.validate()
    augmenter = _Augmenter(spec)
    shard_index, shard_count = spec.shard
    split_level = min(spec.n, spec.shard_depth)
    numbering = itertools.count()

    def walk(g: ExclusivityGraph) -> Iterator[ExclusivityGraph]:
        if g.n == split_level and next(numbering) % shard_count != shard_index:
            return
        if g.n == spec.n:
            if augmenter.is_terminal(g):
                yield g
            return
        for child in augmenter.children(g):
            yield from walk(child)

    yield from walk(ExclusivityGraph(1, (0,)))


def _generate_shard(task: tuple) -> tuple[int, list[str]]:
    spec = task[0]
    return spec.shard[0], [serialize(g).decode() for g in generate(spec)]


def run_generation(spec: SearchSpec, workers: int = 1, shards: int = 1, progress: bool = False) -> list[ExclusivityGraph]:
    """Run ``shards`` shards of ``spec`` over ``workers`` processes.

    Results are concatenated in shard order, so the output only depends on
    the shard count.
    """
    if shards < 1 or workers < 1:
        raise PreconditionError("workers and shards must be positive")
    tasks = [(replace(spec, shard=(i, shards)),) for i in range(shards)]
    start_time = time.perf_counter()
    if workers == 1:
        chunks = map(_generate_shard, tasks)
        collected = list(tqdm(chunks, total=shards, disable=not progress, file=sys.stderr, desc="shards"))
    else:
        with Pool(processes=workers) as pool:
            collected = list(tqdm(pool.imap(_generate_shard, tasks), total=shards, disable=not progress, file=sys.stderr, desc="shards"))
    graphs = [parse(g6) for _, chunk in sorted(collected) for g6 in chunk]
    elapsed = time.perf_counter() - start_time
    logger.info(f"Generation of n={spec.n} emitted {len(graphs)} graphs, completed in {elapsed * 1000:.2f}ms")
    return graphs


def tifs_pairs(g: ExclusivityGraph, d: int) -> list[tuple[int, int]]:
    """Ordered pairs (a, b) for which g is a TIFS."""
    pairs = []
    for a in range(g.n):
        if find_assignment(g, d, {a: True}) is None:
            continue
        for b in range(g.n):
            if b != a and not g.has_edge(a, b) and not count_assignments(g, d, {a: True, b: True}, limit=1):
                pairs.append((a, b))
    return pairs


@dataclass(frozen=True)
class TifsCertificate:
    graph: ExclusivityGraph
    classification: Classification
    key: bytes
    realization: Realization | None = None


@dataclass
class SearchReport:
    d: int
    n_max: int
    first_hit: int | None = None
    graphs_emitted: dict[int, int] = field(default_factory=dict)
    tifs_found: list[TifsCertificate] = field(default_factory=list)
    graphs_with_tifs: int = 0
    # TIFS candidates set aside by the realization check, as graph6
    unrealizable: list[str] = field(default_factory=list)
    unconfirmed: list[str] = field(default_factory=list)
    complete: bool = True
    elapsed_ms: float = 0.0


@dataclass
class _ShardOutcome:
    index: int
    emitted: int
    hits: list[str]
    complete: bool = True


def _search_shard(task: tuple) -> _ShardOutcome:
    spec, deadline = task
    emitted = 0
    hits = []
    for g in generate(spec):
        emitted += 1
        if tifs_pairs(g, spec.d):
            hits.append(serialize(g).decode())
        if deadline is not None and time.time() > deadline:
            return _ShardOutcome(spec.shard[0], emitted, hits, complete=False)
    return _ShardOutcome(spec.shard[0], emitted, hits)


def run_signature(d: int, shards: int) -> str:
    """Everything besides n that decides what a shard emits."""
    spec = SearchSpec.for_dimension(d + 1, d)
    return (
        f"d={d} shards={shards} depth={spec.shard_depth} patterns={spec.forbid_patterns} "
        f"cliques={spec.forbid_large_cliques} biconnected={spec.require_biconnected} "
        f"min_degree={spec.min_degree} contexts={spec.min_complete_contexts}"
    )


class Checkpoint:
    """Append-only record of finished shards.

    The first line is ``# <run signature>``; a file written by a run with a
    different dimension, shard count or filter set is refused. Each further
    line reads ``<n>:<shard_index> <completed_count> <graph6> ...`` listing
    the graphs of that shard that carry a TIFS.
    """

    def __init__(self, path: str | Path | None, signature: str):
        self.path = Path(path) if path else None
        self.signature = signature
        self.done: dict[tuple[int, int], _ShardOutcome] = {}
        if self.path is None:
            return
        if not self.path.exists() or not self.path.read_text().strip():
            self.path.write_text(f"# {signature}\n")
            return

        header, *lines = self.path.read_text().splitlines()
        if header != f"# {signature}":
            raise PreconditionError(
                f"checkpoint {self.path} belongs to another run ({header.lstrip('# ') or 'no header'}); "
                f"this run is {signature}"
            )
        for line in lines:
            fields = line.split()
            if len(fields) < 2:
                continue
            n, index = (int(x) for x in fields[0].split(":"))
            self.done[(n, index)] = _ShardOutcome(index, int(fields[1]), fields[2:])
        logger.info(f"Resuming with {len(self.done)} finished shards from {self.path}")

    def record(self, n: int, outcome: _ShardOutcome) -> None:
        self.done[(n, outcome.index)] = outcome
        if self.path is None:
            return
        with self.path.open("a") as handle:
            handle.write(" ".join([f"{n}:{outcome.index}", str(outcome.emitted), *outcome.hits]) + "\n")


def search_minimal_tifs(
    d: int,
    n_max: int,
    workers: int = 1,
    shards: int | None = None,
    checkpoint: str | Path | None = None,
    budget: float | None = None,
    progress: bool = False,
) -> SearchReport:
    """Smallest n in d+1..n_max with a realizable TIFS, and every TIFS found at that n.

    Candidates come from the filtered generator and the assignment solver;
    each one must then survive ``forced_orthogonality_conflict`` and be
    realized by ``numeric_realization_search`` before it counts. Certificates
    are deduplicated up to isomorphisms preserving the ordered pair (a true,
    b false) and sorted by that key.
    """
    if d < 3:
        raise PreconditionError(f"dimension must be at least 3, got {d}")
    if n_max > MAX_ENUMERATION_VERTICES:
        raise PreconditionError(f"n_max must not exceed {MAX_ENUMERATION_VERTICES}")
    shards = shards or (1 if workers == 1 else 4 * workers)
    report = SearchReport(d=d, n_max=n_max)
    ledger = Checkpoint(checkpoint, run_signature(d, shards))
    start_time = time.perf_counter()
    deadline = time.time() + budget if budget else None

    for n in range(d + 1, n_max + 1):
        pending = []
        outcomes = []
        for i in range(shards):
            if (n, i) in ledger.done:
                outcomes.append(ledger.done[(n, i)])
            else:
                pending.append((SearchSpec.for_dimension(n, d, shard=(i, shards)), deadline))

        for outcome in _run_shards(pending, workers, progress, f"n={n}"):
            outcomes.append(outcome)
            if outcome.complete:
                ledger.record(n, outcome)
            else:
                report.complete = False

        report.graphs_emitted[n] = sum(o.emitted for o in outcomes)
        candidates = _certify([g6 for o in outcomes for g6 in o.hits], d)
        certificates = _confirm(candidates, d, workers, report)
        logger.info(
            f"n={n}: {report.graphs_emitted[n]} graphs, {len(candidates)} TIFS candidates, "
            f"{len(certificates)} realized"
        )
        if not report.complete:
            logger.warning(f"Budget of {budget}s exhausted at n={n}; report is partial")
            report.tifs_found = certificates
            break
        if certificates:
            report.first_hit = n
            report.tifs_found = certificates
            report.graphs_with_tifs = len({canonical_form(c.graph).bytes for c in certificates})
            break

    report.elapsed_ms = (time.perf_counter() - start_time) * 1000
    logger.info(f"Minimal TIFS search for d={d} completed in {report.elapsed_ms:.2f}ms")
    return report


def _run_shards(tasks: list, workers: int, progress: bool, label: str) -> Iterator[_ShardOutcome]:
    if not tasks:
        return
    if workers == 1:
        yield from tqdm(map(_search_shard, tasks), total=len(tasks), disable=not progress, file=sys.stderr, desc=label)
        return
    with Pool(processes=workers) as pool:
        yield from tqdm(pool.imap(_search_shard, tasks), total=len(tasks), disable=not progress, file=sys.stderr, desc=label)


def _certify(graph6_strings: list[str], d: int) -> list[TifsCertificate]:
    by_key = {}
    for g6 in graph6_strings:
        g = parse(g6)
        for a, b in tifs_pairs(g, d):
            key = designated_key(g, a, b)
            if key in by_key:
                continue
            witness = find_assignment(g, d, {a: True})
            by_key[key] = TifsCertificate(g, Classification(Kind.TIFS, a, b, witness, True, True, d), key)
    return [by_key[key] for key in sorted(by_key)]


def _confirm(candidates: list[TifsCertificate], d: int, workers: int, report: SearchReport) -> list[TifsCertificate]:
    """Keep the candidates whose graph has a faithful realization in R^d.

    A forced orthogonality proves a graph unrealizable. A graph that survives
    it but where the numeric search finds nothing is only unconfirmed, and is
    listed as such.
    """
    realized: dict[bytes, Realization | None] = {}
    confirmed = []
    for cert in candidates:
        form = canonical_form(cert.graph).bytes
        if form not in realized:
            realized[form] = _realize(cert.graph, d, workers, report)
        if realized[form] is not None:
            confirmed.append(replace(cert, realization=realized[form]))
    return confirmed


def _realize(g: ExclusivityGraph, d: int, workers: int, report: SearchReport) -> Realization | None:
    g6 = serialize(g).decode()
    conflict = forced_orthogonality_conflict(g, d)
    if conflict is not None:
        logger.debug(f"{g6}: vertices {conflict[0]} and {conflict[1]} are forced together in R^{d}")
        report.unrealizable.append(g6)
        return None
    result = numeric_realization_search(g, d, restarts=CONFIRM_RESTARTS, workers=workers)
    if result.residual >= CONFIRM_RESIDUAL:
        logger.warning(f"{g6}: no realization in R^{d} found (residual {result.residual:.3e}); not counted")
        report.unconfirmed.append(g6)
        return None
    return result.realization

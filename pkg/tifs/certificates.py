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


"""JSON documents for certificates, search reports and realizations.

Certificates carry enough to be re-checked from scratch: the graph in
graph6, the dimension, the claimed kind and the designated pair. Keys are
sorted on output so identical runs give identical bytes.
"""

import json
import math
from pathlib import Path

from .errors import GraphFormatError, VerificationError
from .graphcore import ExclusivityGraph, parse, serialize
from .nclogic import Assignment, Classification, Kind, classify_pair
from .realize import Realization


def dumps(doc, compact: bool = False) -> str:
    if compact:
        return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def certificate(g: ExclusivityGraph, c: Classification, **extra) -> dict:
    doc = {
        "graph": serialize(g).decode(),
        "n": g.n,
        "d": c.d,
        "kind": str(c.kind),
        "a": c.a,
        "b_or_c": c.b_or_c,
        "witness": list(c.witness_sat.values) if c.witness_sat is not None else None,
        "raw_step2_verdict": c.raw_step2_verdict,
        "exhaustive": c.refuted_by_exhaustion,
    }
    if g.labels is not None:
        doc["labels"] = list(g.labels)
    doc.update(extra)
    return doc


def designated_certificate(dg) -> dict:
    """Certificate of a constructed DesignatedGraph, verdict re-derived by the solver."""
    c = classify_pair(dg.graph, dg.d, dg.kind, dg.a, dg.b_or_c)
    return certificate(dg.graph, c, states=[str(s) for s in dg.states])


def load_certificate(source: str | Path | dict) -> tuple[ExclusivityGraph, Classification]:
    if isinstance(source, dict):
        doc = source
    else:
        text = Path(source).read_text() if isinstance(source, Path) else source
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid certificate JSON: {exc.msg}", exc.pos) from exc
    try:
        g = parse(doc["graph"])
        if "labels" in doc:
            g = g.with_labels(doc["labels"])
        witness = Assignment(tuple(bool(x) for x in doc["witness"])) if doc.get("witness") is not None else None
        c = Classification(
            Kind(doc["kind"]),
            int(doc["a"]),
            int(doc["b_or_c"]),
            witness,
            bool(doc.get("exhaustive", True)),
            bool(doc.get("raw_step2_verdict", True)),
            int(doc["d"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GraphFormatError):
            raise
        raise GraphFormatError(f"invalid certificate: {exc}", 0) from exc
    return g, c


def revalidate(g: ExclusivityGraph, claimed: Classification) -> Classification:
    """Re-run the solver on a certificate; raises when the verdict does not hold."""
    fresh = classify_pair(g, claimed.d, claimed.kind, claimed.a, claimed.b_or_c)
    if fresh.kind != claimed.kind:
        raise VerificationError(f"({claimed.a}, {claimed.b_or_c}) is not a {claimed.kind} pair in dimension {claimed.d}")
    if claimed.witness_sat is not None and not claimed.witness_sat.is_valid(g, claimed.d):
        raise VerificationError("the witness assignment violates the graph's constraints")
    return fresh


def search_report(report) -> dict:
    return {
        "d": report.d,
        "n_max": report.n_max,
        "first_hit": report.first_hit,
        "complete": report.complete,
        "graphs_emitted": {str(n): count for n, count in sorted(report.graphs_emitted.items())},
        "graphs_with_tifs": report.graphs_with_tifs,
        "certificates": [_search_certificate(cert) for cert in report.tifs_found],
        "unrealizable": report.unrealizable,
        "unconfirmed": report.unconfirmed,
    }


def _search_certificate(cert) -> dict:
    if cert.realization is None:
        return certificate(cert.graph, cert.classification)
    return certificate(cert.graph, cert.classification, realization=realization_document(cert.realization))


def _finite(x: float) -> float | None:
    return x if math.isfinite(x) else None


def realization_document(r) -> dict:
    return {
        "d": r.d,
        "epsilon": r.epsilon,
        "tolerance": r.tolerance,
        "vectors": [[float(x) for x in row] for row in r.vectors],
    }


def load_realization(source: str | Path | dict):
    if isinstance(source, dict):
        doc = source
    else:
        text = Path(source).read_text() if isinstance(source, Path) else source
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid realization JSON: {exc.msg}", exc.pos) from exc
    try:
        return Realization(int(doc["d"]), doc["vectors"], float(doc.get("epsilon", 0.0)), float(doc["tolerance"]))
    except (KeyError, TypeError) as exc:
        raise GraphFormatError(f"invalid realization document: {exc}", 0) from exc


def verification_document(report) -> dict:
    return {
        "pass": report.passed,
        "max_edge_overlap": report.max_edge_overlap,
        "min_nonedge_overlap": _finite(report.min_nonedge_overlap),
        "failures": [[p.u, p.v, p.adjacent, p.overlap] for p in report.failures()],
    }

"""File formats: graph text files, assignment JSON, and result documents.

Rationals serialize as reduced "p/q" (or a bare integer string); edge sets as
sorted index arrays.  Given fixed inputs every document is byte-stable.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import ParseError
from .forcing import ForcingStats
from .fractional import FFResult, ForcingCertificate
from .graph import Graph
from .matchings import EdgeAssignment


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {s!r}: {exc}") from None


# -- graph text format: "n m" then one "u v" line per edge ------------------

def graph_to_text(g: Graph) -> str:
    lines = [f"{g.vertex_count} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty graph file")
    try:
        n, m = map(int, lines[0].split())
        pairs = [tuple(map(int, ln.split())) for ln in lines[1 : m + 1]]
    except ValueError as exc:
        raise ParseError(f"malformed graph file: {exc}") from None
    if len(pairs) != m:
        raise ParseError(f"expected {m} edge lines, found {len(pairs)}")
    return Graph(n, pairs)


# -- assignment JSON ---------------------------------------------------------

def graph_to_json_dict(g: Graph) -> dict[str, Any]:
    return {"n": g.vertex_count, "edges": [[u, v] for u, v in g.edges]}


def graph_from_json_dict(doc: dict[str, Any]) -> Graph:
    try:
        return Graph(doc["n"], [tuple(e) for e in doc["edges"]])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed graph document: {exc}") from None


def assignment_to_json_dict(w: EdgeAssignment) -> dict[str, Any]:
    return {
        "graph": graph_to_json_dict(w.graph),
        "values": [fraction_str(v) for v in w.values],
    }


def assignment_from_json_dict(doc: dict[str, Any]) -> EdgeAssignment:
    try:
        g = graph_from_json_dict(doc["graph"])
        values = [parse_fraction(v) for v in doc["values"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed assignment document: {exc}") from None
    return EdgeAssignment(g, tuple(values))


def assignment_to_json(w: EdgeAssignment) -> str:
    return json.dumps(assignment_to_json_dict(w), indent=2, sort_keys=True) + "\n"


def assignment_from_json(text: str) -> EdgeAssignment:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}") from None
    return assignment_from_json_dict(doc)


# -- result documents --------------------------------------------------------

def certificate_to_json_dict(cert: ForcingCertificate) -> dict[str, Any]:
    doc: dict[str, Any] = {"verdict": "unique" if cert.unique else "not-unique"}
    if cert.edge_maxima is not None:
        doc["edge_maxima"] = [fraction_str(v) for v in cert.edge_maxima]
    if cert.witness is not None:
        doc["witness"] = assignment_to_json_dict(cert.witness)
    return doc


def ff_result_to_json_dict(result: FFResult) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "value": fraction_str(result.value),
        "optimal_support": list(result.optimal_support),
        "optimal_alpha": assignment_to_json_dict(result.optimal_alpha),
    }
    if result.certificate is not None:
        doc["certificate"] = certificate_to_json_dict(result.certificate)
    return doc


def stats_to_json_dict(stats: ForcingStats) -> dict[str, Any]:
    return {
        "f": stats.f,
        "F": stats.F,
        "spectrum": list(stats.spectrum),
        "per_matching": [
            {"matching": list(m), "forcing_number": k} for m, k in stats.table
        ],
    }

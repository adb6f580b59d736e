"""Bundled reference instances and the values they must reproduce.

Each fixture builds its graph and distinguished assignments from scratch and
re-derives the recorded claims with the library's own machinery; `run_fixture`
reports computed values side by side with the expectations.  The
triangle-gadget graph behind "example18" is transcribed from a picture, so its
edge list is recorded here as data and guarded by the claims it must satisfy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .forcing import graph_forcing_stats, is_forcing_set
from .fractional import (
    decompose_forcing_function,
    fractional_forcing_number,
    graph_ff_min,
    is_minimal_forcing,
)
from .graph import Graph, cartesian_product, hypercube, make_graph, path_graph
from .hypercube_bounds import ff_upper_bound, forcing_upper_bound, verify_blue_set
from .matchings import (
    EdgeAssignment,
    VertexWeights,
    convex_combination,
    enumerate_perfect_matchings,
    support,
    total_weight,
)
from .serialize import fraction_str

F = Fraction


def two_triangles_bridge() -> Graph:
    """Two triangles whose apexes are joined by a bridge; unique perfect matching."""
    return make_graph(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)])


def two_triangles_half_point(g: Graph) -> EdgeAssignment:
    """Both triangles at 1/2, bridge at 0; a non-integral polytope vertex."""
    values = {e: F(1, 2) for e in range(g.edge_count)}
    values[g.index_of(2, 3)] = F(0)
    return EdgeAssignment(g, tuple(values[e] for e in range(g.edge_count)))


def triangle_square_triangle() -> Graph:
    """Figure-derived transcription: triangle, 2-edge path, square, triangles' apexes on the path and square."""
    return make_graph(
        10,
        [
            (0, 1), (0, 2), (1, 2),          # left triangle, apex 2
            (2, 3), (3, 4),                  # path to the square
            (4, 5), (4, 7), (5, 6), (6, 7),  # square
            (7, 8), (7, 9), (8, 9),          # right triangle, apex 7
        ],
    )


def grid_2x4() -> Graph:
    return cartesian_product(path_graph(2), path_graph(4))


@dataclass(frozen=True)
class GridDecomposition:
    """The 2x4 grid with a fractional perfect matching, its convex split into
    three matchings, and a minimal forcing function to decompose."""

    graph: Graph
    gamma: EdgeAssignment
    parts: tuple[tuple[EdgeAssignment, Fraction], ...]
    alpha: EdgeAssignment


def grid_2x4_decomposition() -> GridDecomposition:
    g = grid_2x4()
    rung = [g.index_of(c, 4 + c) for c in range(4)]
    top = [g.index_of(c, c + 1) for c in range(3)]
    bot = [g.index_of(4 + c, 5 + c) for c in range(3)]
    values = [F(0)] * g.edge_count
    for e, x in [
        (rung[0], F(1, 6)), (rung[1], F(1, 12)), (rung[2], F(1, 12)), (rung[3], F(1, 6)),
        (top[0], F(5, 6)), (top[1], F(1, 12)), (top[2], F(5, 6)),
        (bot[0], F(5, 6)), (bot[1], F(1, 12)), (bot[2], F(5, 6)),
    ]:
        values[e] = x
    gamma = EdgeAssignment(g, tuple(values))
    m1 = EdgeAssignment.from_edge_set(g, [rung[0], top[1], bot[1], rung[3]])
    m2 = EdgeAssignment.from_edge_set(g, [top[0], bot[0], top[2], bot[2]])
    m3 = EdgeAssignment.from_edge_set(g, rung)
    parts = ((m1, F(1, 12)), (m2, F(5, 6)), (m3, F(1, 12)))
    alpha = gamma.restrict([top[0], top[1], rung[1], rung[3], bot[2]])
    return GridDecomposition(g, gamma, parts, alpha)


# ---------------------------------------------------------------------------
# fixture runners
# ---------------------------------------------------------------------------

def _run_example14() -> dict[str, Any]:
    data = grid_2x4_decomposition()
    g = data.graph
    ones = VertexWeights.ones(g)
    combo = convex_combination(data.parts)
    decomposed = decompose_forcing_function(g, data.alpha, data.gamma, list(data.parts))
    alpha1 = decomposed[0].forcing
    m1 = tuple(sorted(support(data.parts[0][0])))
    return {
        "combination_matches": combo.values == data.gamma.values,
        "alpha_weight": fraction_str(total_weight(data.alpha)),
        "alpha_minimal": is_minimal_forcing(g, ones, data.alpha, data.gamma),
        "parts_force": all(p.certificate.unique for p in decomposed),
        "alpha1_forcing_set": is_forcing_set(g, m1, sorted(support(alpha1))).forcing,
        "alpha1_minimal": is_minimal_forcing(g, ones, alpha1, data.parts[0][0]),
    }


def _run_example18() -> dict[str, Any]:
    g = triangle_square_triangle()
    return {
        "f": graph_forcing_stats(g).f,
        "ff_min": fraction_str(graph_ff_min(g)),
    }


def _run_example19() -> dict[str, Any]:
    g = two_triangles_bridge()
    return {
        "f": graph_forcing_stats(g).f,
        "ff_min": fraction_str(graph_ff_min(g)),
    }


def _run_q3() -> dict[str, Any]:
    g = hypercube(3)
    stats = graph_forcing_stats(g)
    return {"f": stats.f, "matchings": len(enumerate_perfect_matchings(g))}


def _run_q4() -> dict[str, Any]:
    g = hypercube(4)
    stats = graph_forcing_stats(g)
    verification = verify_blue_set(4, "lp")
    return {
        "f": stats.f,
        "matchings": len(enumerate_perfect_matchings(g)),
        "blue_verified": verification.verified,
        "ff_upper": fraction_str(ff_upper_bound(4)),
        "forcing_upper": forcing_upper_bound(4),
    }


FIXTURES: dict[str, tuple[Callable[[], dict[str, Any]], dict[str, Any]]] = {
    "example14": (
        _run_example14,
        {
            "combination_matches": True,
            "alpha_weight": "2",
            "alpha_minimal": True,
            "parts_force": True,
            "alpha1_forcing_set": True,
            "alpha1_minimal": False,
        },
    ),
    "example18": (_run_example18, {"f": 1, "ff_min": "1/2"}),
    "example19": (_run_example19, {"f": 0, "ff_min": "1/2"}),
    "q3": (_run_q3, {"f": 2, "matchings": 9}),
    "q4": (
        _run_q4,
        {"f": 4, "matchings": 272, "blue_verified": True, "ff_upper": "11/2", "forcing_upper": 5},
    ),
}


def run_fixture(name: str) -> tuple[dict[str, Any], bool]:
    """Computed values plus whether they match the recorded expectations."""
    runner, expected = FIXTURES[name]
    got = runner()
    return got, got == expected


def run_all_fixtures() -> tuple[dict[str, dict[str, Any]], bool]:
    reports = {}
    ok = True
    for name in sorted(FIXTURES):
        got, match = run_fixture(name)
        reports[name] = {"values": got, "match": match}
        ok = ok and match
    return reports, ok

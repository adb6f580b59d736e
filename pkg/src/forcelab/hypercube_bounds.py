"""Blue-edge subsets of hypercubes and the bounds they certify.

The seed set lives on the 4-cube: all 8 edges flipping the leading
coordinate are blue, plus 14 edges inside the two 3-cube halves, leaving a
10-edge red complement (a 3-edge star plus a 2-edge path in each half; the
two vertices 0011 and 1000 touch only blue edges).  Higher dimensions pull
the set back through the fold homomorphism.  Restricting the uniform
assignment to the blue edges forces it, which yields an upper bound of
(n*2^(n-1) - 5*2^(n-3))/n on the maximum fractional forcing number, and its
floor bounds the maximum integral forcing number.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import CapExceeded, ForcelabError, PreconditionError
from .fractional import ForcingCertificate, extension_unique
from .graph import Graph, bits_vertex, enumerate_cycles, hypercube, vertex_bits
from .matchings import EdgeAssignment, VertexWeights

# Seed blue edges inside the two 3-cube halves of the 4-cube, as bit labels
# (leading coordinate most significant).  The 8 leading-coordinate flips are
# appended programmatically.
_SEED_HALF_EDGES = (
    ((0, 1, 0, 1), (0, 1, 0, 0)),
    ((0, 1, 0, 0), (0, 1, 1, 0)),
    ((0, 1, 1, 0), (0, 0, 1, 0)),
    ((0, 0, 1, 0), (0, 0, 1, 1)),
    ((0, 0, 1, 1), (0, 0, 0, 1)),
    ((0, 0, 0, 1), (0, 1, 0, 1)),
    ((0, 0, 1, 1), (0, 1, 1, 1)),
    ((1, 1, 0, 1), (1, 1, 1, 1)),
    ((1, 1, 1, 1), (1, 1, 1, 0)),
    ((1, 1, 1, 0), (1, 0, 1, 0)),
    ((1, 0, 1, 0), (1, 0, 0, 0)),
    ((1, 0, 0, 0), (1, 0, 0, 1)),
    ((1, 0, 0, 1), (1, 1, 0, 1)),
    ((1, 0, 0, 0), (1, 1, 0, 0)),
)


@dataclass(frozen=True)
class BlueSet:
    n: int
    graph: Graph
    blue_edges: frozenset[int]

    @property
    def red_edges(self) -> frozenset[int]:
        return frozenset(range(self.graph.edge_count)) - self.blue_edges


def base_blue_set() -> BlueSet:
    """The seed blue set on the 4-cube: 22 blue edges, 10 red."""
    g = hypercube(4)
    blue = set()
    for a, b in _SEED_HALF_EDGES:
        blue.add(g.index_of(bits_vertex(a), bits_vertex(b)))
    for tail in range(8):  # leading-coordinate flips
        blue.add(g.index_of(tail, tail | 8))
    return BlueSet(4, g, frozenset(blue))


def fold_map(n: int, bits: Sequence[int]) -> tuple[int, ...]:
    """Collapse the leading coordinate: (a1..an) -> (a2..an), with a2 flipped when a1 = 1."""
    if len(bits) != n:
        raise PreconditionError(f"expected a length-{n} bit vector, got {len(bits)}")
    if bits[0] == 0:
        return tuple(bits[1:])
    return (1 - bits[1],) + tuple(bits[2:])


def _fold_vertex(n: int, v: int) -> int:
    return bits_vertex(fold_map(n, vertex_bits(v, n)))


def build_blue_set(n: int, max_n: int = 12) -> BlueSet:
    """Blue edges of the n-cube: the seed set pulled back through the fold map.

    Build-time checks: the fold map sends every edge to an edge one level
    down, and every red edge lifts to exactly 2 red edges (red edges never
    flip the leading coordinate), keeping the red count at 5*2^(n-3).
    """
    if n < 4:
        raise PreconditionError("blue sets start at dimension 4")
    if n > max_n:
        raise CapExceeded(f"blue set construction capped at dimension {max_n}")
    current = base_blue_set()
    for k in range(5, n + 1):
        g = hypercube(k)
        prev = current
        blue = set()
        red_lifts = {e: 0 for e in prev.red_edges}
        for idx, (u, v) in enumerate(g.edges):
            fu, fv = _fold_vertex(k, u), _fold_vertex(k, v)
            if fu == fv or not prev.graph.has_edge(fu, fv):
                raise ForcelabError("internal error: fold map broke an edge")
            image = prev.graph.index_of(fu, fv)
            if image in prev.blue_edges:
                blue.add(idx)
            else:
                red_lifts[image] += 1
        if any(count != 2 for count in red_lifts.values()):
            raise ForcelabError("internal error: a red edge lifted to a count other than 2")
        current = BlueSet(k, g, frozenset(blue))
    return current


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlueVerification:
    n: int
    method: str
    verified: bool
    blue_size: int
    red_size: int
    cycles_checked: Optional[int] = None
    certificate: Optional[ForcingCertificate] = None
    failing_cycle: Optional[tuple[int, ...]] = None


def alternating_classes_hit(
    graph: Graph,
    edge_set: frozenset[int],
    max_edges: int = 64,
    max_cycles: int = 500_000,
) -> tuple[bool, Optional[tuple[int, ...]], int]:
    """Whether every alternating class of every cycle meets `edge_set`.

    Returns (ok, failing cycle vertices or None, cycles checked).
    """
    checked = 0
    for cyc in enumerate_cycles(graph, max_edges=max_edges, max_cycles=max_cycles):
        checked += 1
        for cls in (cyc.class_a, cyc.class_b):
            if cls is not None and not (cls & edge_set):
                return False, cyc.vertices, checked
    return True, None, checked


def _worker_edge_maxima(args):
    """Per-edge LP maxima for a chunk of edges; used by process pools."""
    n, blue, lo, hi = args
    from .lp import EqualityLP, incidence_rows

    g = hypercube(n)
    gamma = EdgeAssignment.uniform(g, Fraction(1, n))
    alpha = gamma.restrict(blue)
    lp = EqualityLP(incidence_rows(g), VertexWeights.ones(g).values, lower=alpha.values)
    out = []
    for e in range(lo, hi):
        res = lp.maximize_variable(e)
        out.append((e, res.value))
    return out


def worker_count() -> int:
    """Worker bound from FORCELAB_THREADS; 1 (sequential) by default."""
    raw = os.environ.get("FORCELAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def verify_blue_set(
    n: int,
    method: str = "lp",
    blue: Optional[BlueSet] = None,
    max_lp_n: int = 6,
    workers: Optional[int] = None,
) -> BlueVerification:
    """Certify that the blue set is a forcing support for the uniform assignment.

    "cycles" (dimension 4 only): every alternating class of every simple
    cycle meets the blue set, checked exhaustively.
    "lp": the uniform assignment restricted to the blue edges has a unique
    full extension, certified by per-edge maximization LPs.
    """
    if blue is None:
        blue = build_blue_set(n)
    g = blue.graph
    sizes = dict(blue_size=len(blue.blue_edges), red_size=len(blue.red_edges))
    if method == "cycles":
        if n != 4:
            raise PreconditionError("the cycles method is restricted to dimension 4")
        ok, failing, checked = alternating_classes_hit(g, blue.blue_edges)
        return BlueVerification(
            n, method, ok, cycles_checked=checked, failing_cycle=failing, **sizes
        )
    if method == "lp":
        if n > max_lp_n:
            raise CapExceeded(f"LP verification capped at dimension {max_lp_n}")
        gamma = EdgeAssignment.uniform(g, Fraction(1, n))
        alpha = gamma.restrict(blue.blue_edges)
        if workers is None:
            workers = worker_count()
        if workers > 1:
            cert = _parallel_certificate(n, blue, gamma, workers)
        else:
            cert = extension_unique(g, VertexWeights.ones(g), alpha, gamma)
        return BlueVerification(n, method, cert.unique, certificate=cert, **sizes)
    raise PreconditionError(f"unknown method: {method!r}")


def _parallel_certificate(
    n: int, blue: BlueSet, gamma: EdgeAssignment, workers: int
) -> ForcingCertificate:
    from concurrent.futures import ProcessPoolExecutor

    m = blue.graph.edge_count
    blue_sorted = tuple(sorted(blue.blue_edges))
    bounds = [(m * i) // workers for i in range(workers + 1)]
    chunks = [
        (n, blue_sorted, bounds[i], bounds[i + 1])
        for i in range(workers)
        if bounds[i] < bounds[i + 1]
    ]
    maxima: list[Optional[Fraction]] = [None] * m
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        for part in pool.map(_worker_edge_maxima, chunks):
            for e, val in part:
                maxima[e] = val
    for e in range(m):  # deterministic merge: first offending edge in index order
        if maxima[e] > gamma[e]:
            lp_cert = extension_unique(
                blue.graph,
                VertexWeights.ones(blue.graph),
                gamma.restrict(blue.blue_edges),
                gamma,
            )
            return lp_cert
        if maxima[e] < gamma[e]:
            raise ForcelabError("internal error: per-edge maximum below a feasible point")
    return ForcingCertificate(True, tuple(maxima), None)


# ---------------------------------------------------------------------------
# bound formulas
# ---------------------------------------------------------------------------

def ff_upper_bound(n: int) -> Fraction:
    """(n*2^(n-1) - 5*2^(n-3)) / n: the blue set's total uniform weight."""
    if n < 4:
        raise PreconditionError("bound defined for dimension >= 4")
    return Fraction(n * (1 << (n - 1)) - 5 * (1 << (n - 3)), n)


def forcing_upper_bound(n: int) -> int:
    """Floor of the fractional bound; bounds the maximum integral forcing number."""
    bound = ff_upper_bound(n)
    return bound.numerator // bound.denominator


def reported_lower_bound(n: int, a: Fraction) -> Fraction:
    """a * 2^(n-1), the reported asymptotic lower bound; not constructive here."""
    a = Fraction(a)
    if not (0 < a < 1):
        raise PreconditionError("coefficient must lie strictly between 0 and 1")
    if n < 1:
        raise PreconditionError("dimension must be positive")
    return a * (1 << (n - 1))

"""Exact-rational edge assignments, degree-factor classification, and matchings.

All weights are fractions.Fraction; no floating point enters any decision
path.  An EdgeAssignment covers both roles of a nonnegative edge weighting:
a full factor (every vertex sum meets its target) and a partial one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import CapExceeded, PreconditionError
from .graph import Graph, enumerate_cycles, is_bipartite

RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(x: RationalLike) -> Fraction:
    return Fraction(x)


@dataclass(frozen=True)
class VertexWeights:
    """Nonnegative target weight per vertex; the degree constraint right-hand side."""

    graph: Graph
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != self.graph.vertex_count:
            raise PreconditionError("vertex weight vector length mismatch")
        if any(v < 0 for v in self.values):
            raise PreconditionError("vertex weights must be nonnegative")

    @staticmethod
    def ones(graph: Graph) -> "VertexWeights":
        return VertexWeights(graph, (ONE,) * graph.vertex_count)

    @staticmethod
    def of(graph: Graph, values: Iterable[RationalLike]) -> "VertexWeights":
        return VertexWeights(graph, tuple(as_fraction(v) for v in values))

    def __getitem__(self, v: int) -> Fraction:
        return self.values[v]


@dataclass(frozen=True)
class EdgeAssignment:
    """Nonnegative rational weight per edge, indexed by canonical edge order."""

    graph: Graph
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != self.graph.edge_count:
            raise PreconditionError("assignment length must equal edge count")
        if any(v < 0 for v in self.values):
            raise PreconditionError("edge weights must be nonnegative")

    @staticmethod
    def zero(graph: Graph) -> "EdgeAssignment":
        return EdgeAssignment(graph, (ZERO,) * graph.edge_count)

    @staticmethod
    def of(graph: Graph, values: Iterable[RationalLike]) -> "EdgeAssignment":
        return EdgeAssignment(graph, tuple(as_fraction(v) for v in values))

    @staticmethod
    def uniform(graph: Graph, value: RationalLike) -> "EdgeAssignment":
        return EdgeAssignment(graph, (as_fraction(value),) * graph.edge_count)

    @staticmethod
    def from_edge_set(graph: Graph, edges: Iterable[int], value: RationalLike = 1) -> "EdgeAssignment":
        """Characteristic-style vector: `value` on the listed edge indices, 0 elsewhere."""
        val = as_fraction(value)
        row = [ZERO] * graph.edge_count
        for e in edges:
            row[e] = val
        return EdgeAssignment(graph, tuple(row))

    def __getitem__(self, e: int) -> Fraction:
        return self.values[e]

    def vertex_sum(self, v: int) -> Fraction:
        return sum((self.values[e] for e in self.graph.incident[v]), ZERO)

    def restrict(self, edges: Iterable[int]) -> "EdgeAssignment":
        """Same values on `edges`, zero elsewhere."""
        keep = set(edges)
        return EdgeAssignment(
            self.graph,
            tuple(v if e in keep else ZERO for e, v in enumerate(self.values)),
        )

    def replace(self, e: int, value: RationalLike) -> "EdgeAssignment":
        row = list(self.values)
        row[e] = as_fraction(value)
        return EdgeAssignment(self.graph, tuple(row))

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)


def support(w: EdgeAssignment) -> frozenset[int]:
    return frozenset(e for e, v in enumerate(w.values) if v > 0)


def total_weight(w: EdgeAssignment) -> Fraction:
    return sum(w.values, ZERO)


def leq(a: EdgeAssignment, b: EdgeAssignment) -> bool:
    """Pointwise comparison; the partial order on assignments of one graph."""
    if a.graph != b.graph:
        raise PreconditionError("assignments live on different graphs")
    return all(x <= y for x, y in zip(a.values, b.values))


def assignment_distance(a: EdgeAssignment, b: EdgeAssignment) -> Fraction:
    """L1 distance; a metric on the set of assignments of one graph."""
    if a.graph != b.graph:
        raise PreconditionError("assignments live on different graphs")
    return sum((abs(x - y) for x, y in zip(a.values, b.values)), ZERO)


class FactorKind(enum.Enum):
    FULL = "full"
    PARTIAL = "partial"
    INVALID = "invalid"


@dataclass(frozen=True)
class FactorVerdict:
    """FULL: all vertex sums hit the target; PARTIAL: all at most, some below;
    INVALID: carries the first vertex whose sum overshoots."""

    kind: FactorKind
    vertex: Optional[int] = None
    vertex_sum: Optional[Fraction] = None


def classify_g_factor(graph: Graph, weights: VertexWeights, w: EdgeAssignment) -> FactorVerdict:
    if w.graph != graph or weights.graph != graph:
        raise PreconditionError("assignment and weights must live on the given graph")
    strict = False
    for v in range(graph.vertex_count):
        s = w.vertex_sum(v)
        if s > weights[v]:
            return FactorVerdict(FactorKind.INVALID, vertex=v, vertex_sum=s)
        if s < weights[v]:
            strict = True
    return FactorVerdict(FactorKind.PARTIAL if strict else FactorKind.FULL)


def is_full_factor(graph: Graph, weights: VertexWeights, w: EdgeAssignment) -> bool:
    return classify_g_factor(graph, weights, w).kind is FactorKind.FULL


def is_fractional_perfect_matching(w: EdgeAssignment) -> bool:
    """Every vertex sum equals 1."""
    return is_full_factor(w.graph, VertexWeights.ones(w.graph), w)


# ---------------------------------------------------------------------------
# perfect matching enumeration
# ---------------------------------------------------------------------------

def iter_matchings_containing(
    graph: Graph,
    fixed: Iterable[int] = (),
    max_count: Optional[int] = None,
):
    """Yield every perfect matching (as a sorted edge tuple) containing `fixed`.

    Backtracking on the lowest-index uncovered vertex; the yield order is
    deterministic but not sorted.
    """
    n = graph.vertex_count
    fixed = tuple(fixed)
    covered = 0
    chosen = list(fixed)
    for e in fixed:
        u, v = graph.edges[e]
        bit = (1 << u) | (1 << v)
        if covered & bit:
            raise PreconditionError("fixed edges share an endpoint")
        covered |= bit
    if n % 2 == 1:
        return
    full = (1 << n) - 1
    produced = 0

    def recurse(covered: int):
        nonlocal produced
        if covered == full:
            produced += 1
            if max_count is not None and produced > max_count:
                raise CapExceeded(f"more than {max_count} perfect matchings")
            yield tuple(sorted(chosen))
            return
        free = (~covered) & full
        v = (free & -free).bit_length() - 1
        for e in graph.incident[v]:
            a, b = graph.edges[e]
            u = b if a == v else a
            if covered & (1 << u):
                continue
            chosen.append(e)
            yield from recurse(covered | (1 << v) | (1 << u))
            chosen.pop()

    yield from recurse(covered)


def enumerate_perfect_matchings(
    graph: Graph,
    max_vertices: int = 24,
    max_count: int = 1_000_000,
) -> list[tuple[int, ...]]:
    """All perfect matchings as sorted edge tuples, list sorted lexicographically."""
    if graph.vertex_count > max_vertices:
        raise CapExceeded(
            f"matching enumeration capped at {max_vertices} vertices ({graph.vertex_count} present)"
        )
    return sorted(iter_matchings_containing(graph, max_count=max_count))


# ---------------------------------------------------------------------------
# convex combinations
# ---------------------------------------------------------------------------

def convex_combination(parts: Sequence[tuple[EdgeAssignment, RationalLike]]) -> EdgeAssignment:
    """Pointwise sum of lambda_i * w_i; coefficients must be >= 0 and sum to 1."""
    if not parts:
        raise PreconditionError("empty combination")
    graph = parts[0][0].graph
    coeffs = [as_fraction(lam) for _, lam in parts]
    if any(lam < 0 for lam in coeffs):
        raise PreconditionError("combination coefficients must be nonnegative")
    if sum(coeffs, ZERO) != 1:
        raise PreconditionError("combination coefficients must sum to 1")
    row = [ZERO] * graph.edge_count
    for (w, _), lam in zip(parts, coeffs):
        if w.graph != graph:
            raise PreconditionError("combination parts live on different graphs")
        for e, value in enumerate(w.values):
            row[e] += lam * value
    return EdgeAssignment(graph, tuple(row))


# ---------------------------------------------------------------------------
# spanning structures: disjoint edges plus odd cycles covering every vertex
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolytopeVertexStructure:
    """A candidate extreme point: matched edges at 1, odd-cycle edges at 1/2.

    `extreme` is "confirmed" once the single-point face check has run,
    "candidate" when the check was skipped.
    """

    graph: Graph
    matching_edges: frozenset[int]
    odd_cycles: tuple[tuple[int, ...], ...]
    assignment: EdgeAssignment
    extreme: str = "candidate"

    def sort_key(self):
        return (tuple(sorted(self.matching_edges)), self.odd_cycles)


def _structure(graph: Graph, matched: frozenset[int], cycles: tuple[tuple[int, ...], ...]) -> PolytopeVertexStructure:
    row = [ZERO] * graph.edge_count
    for e in matched:
        row[e] = ONE
    half = Fraction(1, 2)
    for cyc in cycles:
        k = len(cyc)
        for i in range(k):
            row[graph.index_of(cyc[i], cyc[(i + 1) % k])] = half
    return PolytopeVertexStructure(graph, matched, cycles, EdgeAssignment(graph, tuple(row)))


def enumerate_spanning_structures(
    graph: Graph,
    max_vertices: int = 24,
    max_structures: int = 200_000,
) -> list[PolytopeVertexStructure]:
    """All partitions of the vertex set into matched pairs and odd cycles.

    These are exactly the shapes an extreme point of the degree-1 polytope can
    take; extremality itself is confirmed separately.
    """
    if graph.vertex_count > max_vertices:
        raise CapExceeded(
            f"structure enumeration capped at {max_vertices} vertices ({graph.vertex_count} present)"
        )
    n = graph.vertex_count
    full = (1 << n) - 1

    # Odd cycles grouped by their smallest vertex; none exist in bipartite graphs.
    odd_by_root: dict[int, list[tuple[tuple[int, ...], int]]] = {}
    if not is_bipartite(graph).bipartite:
        for cyc in enumerate_cycles(graph, max_edges=max(graph.edge_count, 64)):
            if not cyc.odd:
                continue
            bits = 0
            for w in cyc.vertices:
                bits |= 1 << w
            odd_by_root.setdefault(cyc.vertices[0], []).append((cyc.vertices, bits))

    out: list[PolytopeVertexStructure] = []
    matched: list[int] = []
    cycles: list[tuple[int, ...]] = []

    def recurse(covered: int):
        if covered == full:
            out.append(_structure(graph, frozenset(matched), tuple(sorted(cycles))))
            if len(out) > max_structures:
                raise CapExceeded(f"more than {max_structures} spanning structures")
            return
        free = (~covered) & full
        v = (free & -free).bit_length() - 1
        for e in graph.incident[v]:
            a, b = graph.edges[e]
            u = b if a == v else a
            if covered & (1 << u):
                continue
            matched.append(e)
            recurse(covered | (1 << v) | (1 << u))
            matched.pop()
        # v is the smallest uncovered vertex, so an odd cycle through it inside
        # the free set necessarily has v as its own smallest vertex.
        for verts, bits in odd_by_root.get(v, ()):
            if bits & covered:
                continue
            cycles.append(verts)
            recurse(covered | bits)
            cycles.pop()

    recurse(0)
    out.sort(key=PolytopeVertexStructure.sort_key)
    return out

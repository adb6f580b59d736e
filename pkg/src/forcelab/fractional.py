"""Forcing functions of fractional perfect matchings, decided by exact LP.

A partial factor forces a full factor when the full factor is its only
pointwise-dominating extension.  Uniqueness is certified by one maximization
LP per edge: if every per-edge maximum over the dominating polytope equals
the target value, every feasible point lies pointwise below the target, and
equal vertex-sum totals then force equality.  On bipartite graphs the same
question has a combinatorial answer: a support forces exactly when, in every
cycle, each alternating edge class meets the support or leaves the target's
support; that route avoids LPs entirely and the two routes are cross-checked
in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import CapExceeded, ForcelabError, NoPerfectMatching, PreconditionError
from .graph import Automorphism, Graph, enumerate_cycles, is_bipartite, is_transitive
from .lp import EqualityLP, incidence_rows
from .matchings import (
    EdgeAssignment,
    FactorKind,
    PolytopeVertexStructure,
    VertexWeights,
    classify_g_factor,
    convex_combination,
    enumerate_spanning_structures,
    leq,
    support,
    total_weight,
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class ForcingCertificate:
    """Outcome of a uniqueness check.

    Unique verdicts carry the per-edge LP maxima (each equal to the target
    value); non-unique verdicts carry a second dominating full factor.
    """

    unique: bool
    edge_maxima: Optional[tuple[Fraction, ...]]
    witness: Optional[EdgeAssignment]


def _extension_lp(graph: Graph, weights: VertexWeights, partial: EdgeAssignment) -> EqualityLP:
    return EqualityLP(incidence_rows(graph), weights.values, lower=partial.values)


def extension_unique(
    graph: Graph,
    weights: VertexWeights,
    partial: EdgeAssignment,
    factor: EdgeAssignment,
) -> ForcingCertificate:
    """Certify whether `factor` is the only full factor dominating `partial`.

    For each edge the LP maximizes that edge's weight over all full factors
    above `partial`; the first maximum exceeding the target yields a witness.
    """
    verdict = classify_g_factor(graph, weights, factor)
    if verdict.kind is not FactorKind.FULL:
        raise PreconditionError("target is not a full factor for the given vertex weights")
    if not leq(partial, factor):
        raise PreconditionError("partial assignment does not lie below the target")
    lp = _extension_lp(graph, weights, partial)
    if not lp.feasible:
        raise ForcelabError("internal error: extension polytope reported infeasible")
    maxima = []
    for e in range(graph.edge_count):
        res = lp.maximize_variable(e)
        if res.status != "optimal":
            raise ForcelabError(f"internal error: per-edge LP status {res.status}")
        if res.value > factor[e]:
            witness = EdgeAssignment(graph, tuple(res.solution))
            return ForcingCertificate(False, None, witness)
        if res.value < factor[e]:
            raise ForcelabError("internal error: per-edge maximum below a feasible point")
        maxima.append(res.value)
    return ForcingCertificate(True, tuple(maxima), None)


def is_saturated_or_zero(partial: EdgeAssignment, factor: EdgeAssignment) -> bool:
    return all(a == 0 or a == b for a, b in zip(partial.values, factor.values))


def is_minimal_forcing(
    graph: Graph,
    weights: VertexWeights,
    partial: EdgeAssignment,
    factor: EdgeAssignment,
) -> bool:
    """Forcing, saturated-or-zero on every edge, and no support edge droppable.

    Dropping one support edge at a time suffices: forcing supports form an
    upward-closed family, so a strictly smaller forcing function below a
    saturated one must already appear after a single-edge drop.
    """
    if not leq(partial, factor):
        raise PreconditionError("partial assignment does not lie below the target")
    if not is_saturated_or_zero(partial, factor):
        return False
    if not extension_unique(graph, weights, partial, factor).unique:
        return False
    for e in sorted(support(partial)):
        dropped = partial.replace(e, 0)
        if extension_unique(graph, weights, dropped, factor).unique:
            return False
    return True


# ---------------------------------------------------------------------------
# minimum-weight hitting sets (exact branch and bound)
# ---------------------------------------------------------------------------

def _min_weight_hitting_set(
    elements: Sequence[int],
    weight: dict[int, Fraction],
    constraints: Iterable[frozenset[int]],
) -> frozenset[int]:
    """Cheapest subset of `elements` intersecting every constraint."""
    # Keep only inclusion-minimal constraints; supersets are implied.
    cons = sorted(set(constraints), key=lambda c: (len(c), sorted(c)))
    minimal: list[frozenset[int]] = []
    for c in cons:
        if not c:
            raise ForcelabError("internal error: empty hitting-set constraint")
        if not any(prev <= c for prev in minimal):
            minimal.append(c)
    if not minimal:
        return frozenset()

    order = sorted(elements, key=lambda e: (weight[e], e))

    # Greedy upper bound: repeatedly take the element covering most constraints.
    uncovered = list(minimal)
    greedy: set[int] = set()
    while uncovered:
        best_e = min(
            order,
            key=lambda e: (-sum(1 for c in uncovered if e in c), weight[e], e),
        )
        greedy.add(best_e)
        uncovered = [c for c in uncovered if best_e not in c]
    best_set = frozenset(greedy)
    best_weight = sum((weight[e] for e in greedy), ZERO)

    def lower_bound(remaining: list[frozenset[int]]) -> Fraction:
        # Disjoint constraints need distinct elements; sum their cheapest hits.
        bound = ZERO
        used: set[int] = set()
        for c in remaining:
            if c & used:
                continue
            bound += min(weight[e] for e in c)
            used |= c
        return bound

    chosen: set[int] = set()

    def recurse(remaining: list[frozenset[int]], acc: Fraction) -> None:
        nonlocal best_set, best_weight
        if not remaining:
            if acc < best_weight:
                best_weight = acc
                best_set = frozenset(chosen)
            return
        if acc + lower_bound(remaining) >= best_weight:
            return
        target = min(remaining, key=lambda c: (len(c), sorted(c)))
        for e in sorted(target, key=lambda e: (weight[e], e)):
            chosen.add(e)
            recurse([c for c in remaining if e not in c], acc + weight[e])
            chosen.remove(e)

    recurse(minimal, ZERO)
    return best_set


# ---------------------------------------------------------------------------
# the minimum total weight of a forcing function
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FFResult:
    """Minimum-weight forcing data: the optimum equals the target restricted
    to `optimal_support`, per the saturation structure of minimal forcing
    functions."""

    value: Fraction
    optimal_support: tuple[int, ...]
    optimal_alpha: EdgeAssignment
    certificate: Optional[ForcingCertificate]


def _bipartite_class_constraints(
    graph: Graph,
    supp: frozenset[int],
    max_edges: int,
    max_cycles: int,
) -> list[frozenset[int]]:
    """Alternating classes lying fully inside the support; each must be hit."""
    complement = frozenset(range(graph.edge_count)) - supp
    constraints = []
    for cyc in enumerate_cycles(graph, max_edges=max_edges, max_cycles=max_cycles):
        for cls in (cyc.class_a, cyc.class_b):
            if cls is not None and not (cls & complement):
                constraints.append(cls)
    return constraints


def fractional_forcing_number(
    graph: Graph,
    factor: EdgeAssignment,
    weights: Optional[VertexWeights] = None,
    max_support: int = 26,
    max_edges: int = 64,
    max_cycles: int = 500_000,
    certify: bool = True,
) -> FFResult:
    """Minimum total weight of a forcing function for `factor`.

    Minimal forcing functions take the target's value or zero on each edge,
    so the search runs over supports weighted by the target.  On bipartite
    graphs with unit vertex weights the forcing supports are exactly the
    hitting sets of the in-support alternating classes; otherwise supports
    are generated best-first and separated by LP witnesses: a failed support
    must, like every other candidate, intersect the witness's deficit edges.
    """
    if weights is None:
        weights = VertexWeights.ones(graph)
    verdict = classify_g_factor(graph, weights, factor)
    if verdict.kind is not FactorKind.FULL:
        raise PreconditionError("target is not a full factor for the given vertex weights")
    supp = support(factor)
    if len(supp) > max_support:
        raise CapExceeded(f"support size {len(supp)} exceeds cap {max_support}")
    edge_weight = {e: factor[e] for e in supp}
    unit_weights = all(w == 1 for w in weights.values)

    best: Optional[frozenset[int]] = None
    certificate: Optional[ForcingCertificate] = None
    if unit_weights and is_bipartite(graph).bipartite:
        try:
            constraints = _bipartite_class_constraints(graph, supp, max_edges, max_cycles)
        except CapExceeded:
            constraints = None
        if constraints is not None:
            best = _min_weight_hitting_set(sorted(supp), edge_weight, constraints)
            if certify:
                certificate = extension_unique(graph, weights, factor.restrict(best), factor)
                if not certificate.unique:
                    raise ForcelabError("internal error: criterion and LP disagree on a support")
    if best is None:
        constraints: list[frozenset[int]] = []
        for _ in range(1 << min(len(supp), 30)):
            cand = _min_weight_hitting_set(sorted(supp), edge_weight, constraints)
            cert = extension_unique(graph, weights, factor.restrict(cand), factor)
            if cert.unique:
                best = cand
                certificate = cert if certify else None
                break
            witness = cert.witness
            deficit = frozenset(e for e in supp if witness[e] < factor[e])
            if not deficit or deficit & cand:
                raise ForcelabError("internal error: witness fails to separate the support")
            constraints.append(deficit)
        if best is None:
            raise CapExceeded("support search did not converge within the iteration cap")

    alpha = factor.restrict(best)
    return FFResult(
        value=total_weight(alpha),
        optimal_support=tuple(sorted(best)),
        optimal_alpha=alpha,
        certificate=certificate,
    )


def bipartite_support_criterion(
    graph: Graph,
    factor: EdgeAssignment,
    subset: Iterable[int],
    max_edges: int = 64,
    max_cycles: int = 500_000,
) -> bool:
    """Combinatorial forcing-support test for bipartite graphs.

    True iff the subset lies in the target's support and, in every cycle,
    each alternating class contains a subset edge or an edge outside the
    target's support.
    """
    report = is_bipartite(graph)
    if not report.bipartite:
        raise PreconditionError("criterion applies to bipartite graphs only")
    s_set = frozenset(subset)
    supp = support(factor)
    if not s_set <= supp:
        return False
    outside = frozenset(range(graph.edge_count)) - supp
    hit = s_set | outside
    for cyc in enumerate_cycles(graph, max_edges=max_edges, max_cycles=max_cycles):
        if not (cyc.class_a & hit) or not (cyc.class_b & hit):
            return False
    return True


# ---------------------------------------------------------------------------
# decomposition along a convex combination
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DecomposedPart:
    coefficient: Fraction
    factor: EdgeAssignment
    forcing: EdgeAssignment
    certificate: ForcingCertificate


def decompose_forcing_function(
    graph: Graph,
    partial: EdgeAssignment,
    factor: EdgeAssignment,
    parts: Sequence[tuple[EdgeAssignment, Fraction]],
    weights: Optional[VertexWeights] = None,
) -> list[DecomposedPart]:
    """Split a minimal forcing function along a convex combination of factors.

    Each part takes its own factor's values on the forcing support and zero
    elsewhere; the parts recombine to the original forcing function and each
    one forces its factor (certified).  Parts need not be minimal.
    """
    if weights is None:
        weights = VertexWeights.ones(graph)
    combo = convex_combination(parts)
    if combo.values != factor.values:
        raise PreconditionError("combination does not reproduce the target factor")
    if not is_minimal_forcing(graph, weights, partial, factor):
        raise PreconditionError("assignment is not a minimal forcing function for the target")
    supp = support(partial)
    out = []
    recombined = [ZERO] * graph.edge_count
    for part_factor, lam in parts:
        piece = part_factor.restrict(supp)
        lam = Fraction(lam)
        for e, v in enumerate(piece.values):
            recombined[e] += lam * v
        cert = extension_unique(graph, weights, piece, part_factor)
        if not cert.unique:
            raise ForcelabError("internal error: decomposed part fails to force its factor")
        out.append(DecomposedPart(lam, part_factor, piece, cert))
    if tuple(recombined) != partial.values:
        raise ForcelabError("internal error: decomposed parts do not recombine")
    return out


# ---------------------------------------------------------------------------
# symmetry
# ---------------------------------------------------------------------------

def pull_back(factor: EdgeAssignment, auto: Automorphism) -> EdgeAssignment:
    """Assignment e -> factor(sigma(e)) for an automorphism sigma."""
    return EdgeAssignment(
        factor.graph, tuple(factor[auto.edge_perm[e]] for e in range(factor.graph.edge_count))
    )


def _validate_automorphism(graph: Graph, auto: Automorphism) -> None:
    perm = auto.vertex_perm
    if sorted(perm) != list(range(graph.vertex_count)):
        raise PreconditionError("map is not an automorphism: not a vertex permutation")
    for i, (u, v) in enumerate(graph.edges):
        a, b = perm[u], perm[v]
        key = (a, b) if a < b else (b, a)
        idx = graph.edge_index.get(key)
        if idx is None:
            raise PreconditionError("map is not an automorphism: an edge image is missing")
        if auto.edge_perm[i] != idx:
            raise PreconditionError("map is not an automorphism: edge permutation inconsistent")


def symmetrized_fpm(
    graph: Graph,
    factor: EdgeAssignment,
    autos: Sequence[Automorphism],
) -> EdgeAssignment:
    """Average of the pullbacks of `factor` under the given automorphisms."""
    if not autos:
        raise PreconditionError("need at least one automorphism")
    weights = VertexWeights.ones(graph)
    if classify_g_factor(graph, weights, factor).kind is not FactorKind.FULL:
        raise PreconditionError("assignment is not a fractional perfect matching")
    for auto in autos:
        _validate_automorphism(graph, auto)
    lam = Fraction(1, len(autos))
    averaged = convex_combination([(pull_back(factor, a), lam) for a in autos])
    if classify_g_factor(graph, weights, averaged).kind is not FactorKind.FULL:
        raise ForcelabError("internal error: averaged assignment lost fullness")
    return averaged


# ---------------------------------------------------------------------------
# polytope vertices and whole-graph extrema
# ---------------------------------------------------------------------------

def _face_is_single_point(structure: PolytopeVertexStructure) -> bool:
    """LP check that the structure's support face contains only its point."""
    graph = structure.graph
    supp_edges = sorted(support(structure.assignment))
    rows = []
    for v in range(graph.vertex_count):
        incident = set(graph.incident[v])
        rows.append([ONE if e in incident else ZERO for e in supp_edges])
    lp = EqualityLP(rows, (ONE,) * graph.vertex_count)
    if not lp.feasible:
        return False
    for k, e in enumerate(supp_edges):
        res = lp.maximize_variable(k)
        if res.status != "optimal" or res.value != structure.assignment[e]:
            return False
    return True


def enumerate_fpm_vertex_candidates(
    graph: Graph,
    confirm: bool = True,
    max_vertices: int = 24,
    max_structures: int = 200_000,
) -> list[PolytopeVertexStructure]:
    """Spanning matched-pairs-plus-odd-cycles structures, optionally LP-confirmed.

    Every extreme point of the degree-1 polytope has this shape; the converse
    is not assumed, so `confirm` re-checks each candidate and tags it
    "confirmed" or "not-extreme" ("candidate" when skipped).
    """
    structures = enumerate_spanning_structures(graph, max_vertices, max_structures)
    if not confirm:
        return structures
    out = []
    for s in structures:
        tag = "confirmed" if _face_is_single_point(s) else "not-extreme"
        out.append(
            PolytopeVertexStructure(s.graph, s.matching_edges, s.odd_cycles, s.assignment, tag)
        )
    return out


def graph_ff_min(
    graph: Graph,
    max_vertices: int = 24,
    max_structures: int = 200_000,
) -> Fraction:
    """Minimum of the fractional forcing number over the whole polytope.

    The minimum of a concave function over a polytope is attained at a
    vertex, so scanning the confirmed extreme points is exact.
    """
    vertices = [
        s
        for s in enumerate_fpm_vertex_candidates(graph, True, max_vertices, max_structures)
        if s.extreme == "confirmed"
    ]
    if not vertices:
        raise NoPerfectMatching("graph has no fractional perfect matching")
    return min(
        fractional_forcing_number(graph, s.assignment, certify=False).value for s in vertices
    )


@dataclass(frozen=True)
class FFMaxResult:
    value: Fraction
    status: str  # "exact" | "lower-bound"
    maximizer: Optional[EdgeAssignment]


def uniform_fpm(graph: Graph) -> EdgeAssignment:
    """The constant assignment 1/degree; a fractional perfect matching on regular graphs."""
    degrees = {graph.degree(v) for v in range(graph.vertex_count)}
    if len(degrees) != 1:
        raise PreconditionError("uniform assignment needs a regular graph")
    d = degrees.pop()
    if d == 0:
        raise PreconditionError("degree-0 graph has no fractional perfect matching")
    return EdgeAssignment.uniform(graph, Fraction(1, d))


def graph_ff_max(
    graph: Graph,
    mode: str = "exact_transitive",
    max_vertices: int = 24,
    max_structures: int = 200_000,
) -> FFMaxResult:
    """Maximum of the fractional forcing number.

    "exact_transitive": on vertex- and edge-transitive graphs the uniform
    assignment attains the maximum, so its value is exact.
    "vertex_lower_bound": best value over the polytope's extreme points and
    the uniform point, reported as a lower bound only.
    """
    if mode == "exact_transitive":
        if not is_transitive(graph):
            raise PreconditionError("exact mode requires a vertex- and edge-transitive graph")
        gamma = uniform_fpm(graph)
        result = fractional_forcing_number(graph, gamma, certify=False)
        return FFMaxResult(result.value, "exact", gamma)
    if mode == "vertex_lower_bound":
        vertices = [
            s
            for s in enumerate_fpm_vertex_candidates(graph, True, max_vertices, max_structures)
            if s.extreme == "confirmed"
        ]
        if not vertices:
            raise NoPerfectMatching("graph has no fractional perfect matching")
        samples = [s.assignment for s in vertices]
        degrees = {graph.degree(v) for v in range(graph.vertex_count)}
        if len(degrees) == 1 and 0 not in degrees:
            samples.append(uniform_fpm(graph))
        best_value, best_gamma = None, None
        for gamma in samples:
            value = fractional_forcing_number(graph, gamma, certify=False).value
            if best_value is None or value > best_value:
                best_value, best_gamma = value, gamma
        return FFMaxResult(best_value, "lower-bound", best_gamma)
    raise PreconditionError(f"unknown mode: {mode!r}")

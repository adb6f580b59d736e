import random
from fractions import Fraction
from itertools import combinations

import pytest

from forcelab.errors import NoPerfectMatching, PreconditionError
from forcelab.forcing import forcing_number, graph_forcing_stats, is_forcing_set
from forcelab.fractional import (
    FFMaxResult,
    bipartite_support_criterion,
    decompose_forcing_function,
    enumerate_fpm_vertex_candidates,
    extension_unique,
    fractional_forcing_number,
    graph_ff_max,
    graph_ff_min,
    is_minimal_forcing,
    pull_back,
    symmetrized_fpm,
    uniform_fpm,
    _face_is_single_point,
)
from forcelab.fixtures import (
    triangle_square_triangle,
    two_triangles_bridge,
    two_triangles_half_point,
)
from forcelab.graph import (
    automorphism_group,
    complete_graph,
    cycle_graph,
    hypercube,
    is_bipartite,
    make_graph,
)
from forcelab.matchings import (
    EdgeAssignment,
    PolytopeVertexStructure,
    VertexWeights,
    convex_combination,
    enumerate_perfect_matchings,
    leq,
    support,
    total_weight,
)

from conftest import average_of_matchings, bipartite_corpus, general_corpus
from oracles import ff_by_support_scan, is_vertex_by_rank

F = Fraction


def k2():
    return make_graph(2, [(0, 1)])


def c4_with_matchings():
    g = cycle_graph(4)
    m1, m2 = (EdgeAssignment.from_edge_set(g, m) for m in enumerate_perfect_matchings(g))
    return g, m1, m2


# -- extension_unique ---------------------------------------------------------

def test_k2_one_point_polytope():
    g = k2()
    w = EdgeAssignment.of(g, [1])
    cert = extension_unique(g, VertexWeights.ones(g), w, w)
    assert cert.unique
    assert cert.edge_maxima == (F(1),)


def test_c4_zero_below_uniform_not_unique():
    g, m1, m2 = c4_with_matchings()
    uniform = EdgeAssignment.uniform(g, F(1, 2))
    cert = extension_unique(g, VertexWeights.ones(g), EdgeAssignment.zero(g), uniform)
    assert not cert.unique
    witness = cert.witness
    assert witness.values != uniform.values
    assert witness.values in (m1.values, m2.values)


def test_two_triangles_half_point_single_edge_forces():
    # degree equations with the apex edge pinned at 1/2: twice the pinned value
    # plus the bridge equals 1, so the bridge drops to 0 and both triangles
    # freeze at 1/2 -- the unique solution of the two-parameter family
    g = two_triangles_bridge()
    gamma = two_triangles_half_point(g)
    ones = VertexWeights.ones(g)
    apex_edge = g.index_of(0, 2)  # incident to the junction vertex 2
    alpha = gamma.restrict([apex_edge])
    cert = extension_unique(g, ones, alpha, gamma)
    assert cert.unique
    assert cert.edge_maxima == gamma.values


def test_two_triangles_outer_edge_does_not_force():
    # pinning the edge opposite the junction leaves a one-parameter family
    g = two_triangles_bridge()
    gamma = two_triangles_half_point(g)
    ones = VertexWeights.ones(g)
    outer_edge = g.index_of(0, 1)
    cert = extension_unique(g, ones, gamma.restrict([outer_edge]), gamma)
    assert not cert.unique
    assert leq(gamma.restrict([outer_edge]), cert.witness)


def test_extension_unique_precondition_errors():
    g, m1, _ = c4_with_matchings()
    ones = VertexWeights.ones(g)
    with pytest.raises(PreconditionError):
        extension_unique(g, ones, EdgeAssignment.uniform(g, 1), m1)  # not below
    with pytest.raises(PreconditionError):
        extension_unique(g, ones, EdgeAssignment.zero(g), EdgeAssignment.zero(g))  # not full


# -- is_minimal_forcing ---------------------------------------------------------

def test_k2_empty_support_minimal():
    g = k2()
    w = EdgeAssignment.of(g, [1])
    assert is_minimal_forcing(g, VertexWeights.ones(g), EdgeAssignment.zero(g), w)


def test_c4_single_matching_edge_minimal():
    g, m1, _ = c4_with_matchings()
    ones = VertexWeights.ones(g)
    e = sorted(support(m1))[0]
    assert is_minimal_forcing(g, ones, m1.restrict([e]), m1)


def test_c4_both_matching_edges_forcing_but_not_minimal():
    g, m1, _ = c4_with_matchings()
    ones = VertexWeights.ones(g)
    assert extension_unique(g, ones, m1, m1).unique
    assert not is_minimal_forcing(g, ones, m1, m1)


def test_unsaturated_forcing_function_not_minimal():
    g, m1, _ = c4_with_matchings()
    ones = VertexWeights.ones(g)
    e = sorted(support(m1))[0]
    half = m1.restrict([e]).replace(e, F(1, 2))
    # forcing on C4 only happens at saturation; either way minimality demands it
    assert not is_minimal_forcing(g, ones, half, m1)


# -- fractional_forcing_number ----------------------------------------------------

def test_k2_value_zero():
    g = k2()
    result = fractional_forcing_number(g, EdgeAssignment.of(g, [1]))
    assert result.value == 0
    assert result.optimal_support == ()


def test_c4_uniform_value_one_matches_support_scan():
    g = cycle_graph(4)
    uniform = EdgeAssignment.uniform(g, F(1, 2))
    result = fractional_forcing_number(g, uniform)
    assert result.value == 1
    assert result.value == ff_by_support_scan(g, uniform)
    assert result.certificate.unique
    # one edge from each alternating class of the single cycle
    cyc = {frozenset([0, 3]), frozenset([1, 2])}
    s = set(result.optimal_support)
    assert all(c & s for c in cyc)


def test_two_triangles_half_point_value():
    g = two_triangles_bridge()
    gamma = two_triangles_half_point(g)
    result = fractional_forcing_number(g, gamma)
    assert result.value == F(1, 2)
    assert result.value == ff_by_support_scan(g, gamma)


def test_bipartite_integral_matching_value_equals_forcing_number():
    rng = random.Random(42)
    for g in bipartite_corpus(count=12, seed=5):
        matchings = enumerate_perfect_matchings(g)
        for m in matchings[:3]:
            ff = fractional_forcing_number(g, EdgeAssignment.from_edge_set(g, m))
            assert ff.value == forcing_number(g, m, known_matchings=matchings).number


def test_nonbipartite_search_matches_support_scan():
    rng = random.Random(31)
    checked = 0
    for g in general_corpus(count=20, seed=31):
        if is_bipartite(g).bipartite:
            continue
        vertices = enumerate_fpm_vertex_candidates(g, confirm=True)
        for s in vertices[:2]:
            result = fractional_forcing_number(g, s.assignment)
            assert result.value == ff_by_support_scan(g, s.assignment)
            checked += 1
    assert checked >= 4


def test_optimal_alpha_is_saturated_and_minimal():
    g = two_triangles_bridge()
    gamma = two_triangles_half_point(g)
    result = fractional_forcing_number(g, gamma)
    ones = VertexWeights.ones(g)
    assert all(v in (0, gamma[e]) for e, v in enumerate(result.optimal_alpha.values))
    assert is_minimal_forcing(g, ones, result.optimal_alpha, gamma)


def test_interpolation_between_forcing_and_target_still_forces():
    rng = random.Random(9)
    g = triangle_square_triangle()
    vertices = enumerate_fpm_vertex_candidates(g, confirm=True)
    ones = VertexWeights.ones(g)
    for s in vertices:
        result = fractional_forcing_number(g, s.assignment)
        alpha, gamma = result.optimal_alpha, s.assignment
        for _ in range(3):
            mix = EdgeAssignment(
                g,
                tuple(
                    a + rng.choice([F(0), F(1, 4), F(1, 2), F(1)]) * (c - a)
                    for a, c in zip(alpha.values, gamma.values)
                ),
            )
            assert extension_unique(g, ones, mix, gamma).unique


def test_support_transfer_preserves_minimality():
    # same support, different values: restricting the new target to the old
    # optimal support stays a minimal forcing function
    cases = []
    g, m1, m2 = c4_with_matchings()
    cases.append((g, [(m1, F(1, 3)), (m2, F(2, 3))], [(m1, F(1, 5)), (m2, F(4, 5))]))
    g2 = two_triangles_bridge()
    pm = EdgeAssignment.from_edge_set(g2, enumerate_perfect_matchings(g2)[0])
    tri = two_triangles_half_point(g2)
    cases.append((g2, [(pm, F(1, 3)), (tri, F(2, 3))], [(pm, F(1, 7)), (tri, F(6, 7))]))
    for graph, parts_a, parts_b in cases:
        gamma_a = convex_combination(parts_a)
        gamma_b = convex_combination(parts_b)
        assert support(gamma_a) == support(gamma_b)
        ones = VertexWeights.ones(graph)
        result = fractional_forcing_number(graph, gamma_a)
        transferred = gamma_b.restrict(result.optimal_support)
        assert is_minimal_forcing(graph, ones, transferred, gamma_b)


def test_unique_extension_of_integral_matching_gives_forcing_set():
    rng = random.Random(14)
    for g in general_corpus(count=12, seed=140):
        matchings = enumerate_perfect_matchings(g)
        if not matchings:
            continue
        ones = VertexWeights.ones(g)
        m = matchings[0]
        target = EdgeAssignment.from_edge_set(g, m)
        subset = [e for e in m if rng.random() < 0.6]
        cert = extension_unique(g, ones, target.restrict(subset), target)
        if cert.unique:
            assert is_forcing_set(g, m, subset, known_matchings=matchings).forcing


def test_integral_value_at_least_forcing_number_everywhere():
    for g in general_corpus(count=15, seed=15):
        matchings = enumerate_perfect_matchings(g)
        if not matchings:
            continue
        bip = is_bipartite(g).bipartite
        for m in matchings[:2]:
            ff = fractional_forcing_number(g, EdgeAssignment.from_edge_set(g, m))
            fn = forcing_number(g, m, known_matchings=matchings).number
            assert ff.value >= fn
            if bip:
                assert ff.value == fn


# -- bipartite criterion -----------------------------------------------------------

def test_criterion_c4_examples():
    g = cycle_graph(4)
    uniform = EdgeAssignment.uniform(g, F(1, 2))
    # classes of the single cycle: {0, 3} and {1, 2}
    assert bipartite_support_criterion(g, uniform, [0, 1])
    assert not bipartite_support_criterion(g, uniform, [0, 3])
    # subsets outside the support fail outright
    m1 = EdgeAssignment.from_edge_set(g, enumerate_perfect_matchings(g)[0])
    outside = sorted(set(range(4)) - support(m1))[0]
    assert not bipartite_support_criterion(g, m1, [outside])


def test_criterion_rejects_non_bipartite():
    g = complete_graph(3)
    with pytest.raises(PreconditionError):
        bipartite_support_criterion(g, EdgeAssignment.uniform(g, F(1, 2)), [])


def test_criterion_agrees_with_lp_on_sample():
    ones_cache = {}
    for g in bipartite_corpus(count=12, seed=99):
        if not enumerate_perfect_matchings(g):
            continue
        gamma = average_of_matchings(g)
        ones = VertexWeights.ones(g)
        supp = sorted(support(gamma))
        subsets = [
            s
            for size in range(min(len(supp), 6) + 1)
            for s in combinations(supp[:6], size)
        ]
        for s in subsets:
            combinatorial = bipartite_support_criterion(g, gamma, s)
            lp = extension_unique(g, ones, gamma.restrict(s), gamma).unique
            assert combinatorial == lp


# -- decomposition ------------------------------------------------------------------

def test_single_part_decomposition():
    g, m1, _ = c4_with_matchings()
    e = sorted(support(m1))[0]
    alpha = m1.restrict([e])
    parts = decompose_forcing_function(g, alpha, m1, [(m1, F(1))])
    assert len(parts) == 1
    assert parts[0].forcing.values == alpha.values
    assert parts[0].certificate.unique


def test_c4_uniform_decomposition_gives_single_edge_forcing_sets():
    g, m1, m2 = c4_with_matchings()
    uniform = EdgeAssignment.uniform(g, F(1, 2))
    result = fractional_forcing_number(g, uniform)
    parts = decompose_forcing_function(
        g, result.optimal_alpha, uniform, [(m1, F(1, 2)), (m2, F(1, 2))]
    )
    for part, matching in zip(parts, (m1, m2)):
        s = sorted(support(part.forcing))
        assert is_forcing_set(g, sorted(support(matching)), s).forcing


def test_decomposition_validates_combination():
    g, m1, m2 = c4_with_matchings()
    e = sorted(support(m1))[0]
    with pytest.raises(PreconditionError):
        decompose_forcing_function(g, m1.restrict([e]), m1, [(m2, F(1))])


# -- symmetrization -----------------------------------------------------------------

def test_symmetrize_uniform_fixed_point():
    g = cycle_graph(4)
    uniform = EdgeAssignment.uniform(g, F(1, 2))
    autos = automorphism_group(g).automorphisms
    assert symmetrized_fpm(g, uniform, autos).values == uniform.values


def test_symmetrize_matching_over_dihedral_group_gives_uniform():
    g, m1, _ = c4_with_matchings()
    autos = automorphism_group(g).automorphisms
    averaged = symmetrized_fpm(g, m1, autos)
    assert averaged.values == EdgeAssignment.uniform(g, F(1, 2)).values


def test_symmetrize_identity_returns_input():
    g, m1, _ = c4_with_matchings()
    identity = [a for a in automorphism_group(g).automorphisms if a.vertex_perm == (0, 1, 2, 3)]
    assert symmetrized_fpm(g, m1, identity).values == m1.values


def test_pullback_invariance_of_the_value():
    g = two_triangles_bridge()
    gamma = two_triangles_half_point(g)
    base = fractional_forcing_number(g, gamma).value
    for auto in automorphism_group(g).automorphisms:
        assert fractional_forcing_number(g, pull_back(gamma, auto)).value == base


def test_symmetrized_maximizer_keeps_value_on_transitive_graphs():
    for g in (cycle_graph(4), cycle_graph(6), complete_graph(4)):
        autos = automorphism_group(g).automorphisms
        maximizer = uniform_fpm(g)
        averaged = symmetrized_fpm(g, maximizer, autos)
        assert (
            fractional_forcing_number(g, averaged).value
            == fractional_forcing_number(g, maximizer).value
        )


# -- polytope vertices ----------------------------------------------------------------

def test_c4_vertices_are_the_two_matchings():
    out = enumerate_fpm_vertex_candidates(cycle_graph(4))
    assert len(out) == 2
    assert all(s.extreme == "confirmed" for s in out)
    assert all(not s.odd_cycles for s in out)


def test_triangle_vertex_is_half_cycle():
    out = enumerate_fpm_vertex_candidates(complete_graph(3))
    assert len(out) == 1
    assert out[0].extreme == "confirmed"
    assert set(out[0].assignment.values) == {F(1, 2)}


def test_two_triangles_bridge_vertices():
    g = two_triangles_bridge()
    out = enumerate_fpm_vertex_candidates(g)
    kinds = {(bool(s.matching_edges), bool(s.odd_cycles)) for s in out}
    assert len(out) == 2
    assert kinds == {(True, False), (False, True)}
    assert all(s.extreme == "confirmed" for s in out)


def test_confirmation_agrees_with_rank_oracle():
    for g in general_corpus(count=15, seed=61):
        for s in enumerate_fpm_vertex_candidates(g, confirm=True):
            assert (s.extreme == "confirmed") == is_vertex_by_rank(s.assignment)


def test_face_check_rejects_non_vertex_point():
    g = cycle_graph(4)
    fake = PolytopeVertexStructure(
        g, frozenset(), (), EdgeAssignment.uniform(g, F(1, 2)), "candidate"
    )
    assert not _face_is_single_point(fake)


def test_bipartite_confirmed_vertices_are_integral():
    for g in bipartite_corpus(count=25, seed=123):
        for s in enumerate_fpm_vertex_candidates(g, confirm=True):
            if s.extreme == "confirmed":
                assert s.assignment.is_integral()


def test_candidate_mode_skips_confirmation():
    out = enumerate_fpm_vertex_candidates(cycle_graph(4), confirm=False)
    assert all(s.extreme == "candidate" for s in out)


# -- whole-graph extrema -----------------------------------------------------------------

def test_graph_ff_min_fixture_values():
    assert graph_ff_min(triangle_square_triangle()) == F(1, 2)
    assert graph_ff_min(two_triangles_bridge()) == F(1, 2)
    assert graph_ff_min(cycle_graph(4)) == 1


def test_graph_ff_min_bipartite_equals_integral_minimum():
    for g in bipartite_corpus(count=10, seed=2029):
        if not enumerate_perfect_matchings(g):
            continue
        assert graph_ff_min(g) == graph_forcing_stats(g).f


def test_graph_ff_min_requires_fractional_matching():
    star = make_graph(4, [(0, 1), (0, 2), (0, 3)])
    with pytest.raises(NoPerfectMatching):
        graph_ff_min(star)


def test_graph_ff_max_k2_zero():
    result = graph_ff_max(complete_graph(2))
    assert result.value == 0 and result.status == "exact"


def test_graph_ff_max_cycles():
    assert graph_ff_max(cycle_graph(4)).value == 1
    assert graph_ff_max(cycle_graph(6)).value == 1


def test_graph_ff_max_rejects_non_transitive():
    g = triangle_square_triangle()
    with pytest.raises(PreconditionError):
        graph_ff_max(g, mode="exact_transitive")
    lower = graph_ff_max(g, mode="vertex_lower_bound")
    assert lower.status == "lower-bound"
    assert lower.value >= F(1, 2)


def test_ff_max_at_least_integral_max_on_transitive_graphs():
    for g in (cycle_graph(4), cycle_graph(6), complete_graph(4), hypercube(3)):
        assert graph_ff_max(g).value >= graph_forcing_stats(g).F


def test_half_integral_minimum_on_corpus():
    for g in general_corpus(count=12, seed=88):
        value = graph_ff_min(g)
        assert (2 * value).denominator == 1

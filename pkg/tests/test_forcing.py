import random
from itertools import combinations

import pytest

from forcelab.errors import NoPerfectMatching, PreconditionError
from forcelab.forcing import (
    forcing_number,
    graph_forcing_stats,
    is_forcing_set,
)
from forcelab.graph import complete_graph, cycle_graph, hypercube, make_graph
from forcelab.matchings import enumerate_perfect_matchings

from conftest import random_graph
from oracles import forcing_number_by_hitting_set


def k2():
    return make_graph(2, [(0, 1)])


# -- is_forcing_set ------------------------------------------------------------

def test_k2_empty_set_forces():
    g = k2()
    assert is_forcing_set(g, [0], []).forcing


def test_c4_empty_set_fails_with_witness():
    g = cycle_graph(4)
    m1, m2 = enumerate_perfect_matchings(g)
    check = is_forcing_set(g, m1, [])
    assert not check.forcing
    assert check.counterexample == m2


def test_c4_single_edge_forces():
    g = cycle_graph(4)
    m1, m2 = enumerate_perfect_matchings(g)
    # derived by enumerating both matchings: each edge lies in exactly one
    for m, other in [(m1, m2), (m2, m1)]:
        for e in m:
            assert e not in other
            assert is_forcing_set(g, m, [e]).forcing


def test_is_forcing_set_validates_preconditions():
    g = cycle_graph(4)
    m1, m2 = enumerate_perfect_matchings(g)
    with pytest.raises(PreconditionError):
        is_forcing_set(g, m1[:1], [])  # not a perfect matching
    with pytest.raises(PreconditionError):
        is_forcing_set(g, m1, [m2[0]])  # subset not inside the matching


def test_known_matchings_scan_agrees_with_search():
    g = hypercube(3)
    matchings = enumerate_perfect_matchings(g)
    for m in matchings:
        for size in (0, 1):
            for s in combinations(m, size):
                assert (
                    is_forcing_set(g, m, s).forcing
                    == is_forcing_set(g, m, s, known_matchings=matchings).forcing
                )


# -- forcing_number --------------------------------------------------------------

def test_k2_forcing_number_zero():
    assert forcing_number(k2(), [0]).number == 0


def test_c4_forcing_number_one():
    g = cycle_graph(4)
    for m in enumerate_perfect_matchings(g):
        result = forcing_number(g, m)
        assert result.number == 1
        assert is_forcing_set(g, m, result.forcing_set).forcing


def test_hypercube3_minimum_is_two():
    g = hypercube(3)
    numbers = [forcing_number(g, m).number for m in enumerate_perfect_matchings(g)]
    assert min(numbers) == 2  # 2^(3-2)


@pytest.mark.parametrize("seed", range(8))
def test_forcing_number_matches_alternating_cycle_oracle(seed):
    rng = random.Random(4000 + seed)
    g = random_graph(rng, rng.choice([4, 6]), rng.choice([0.5, 0.7, 0.9]))
    for m in enumerate_perfect_matchings(g):
        assert forcing_number(g, m).number == forcing_number_by_hitting_set(g, frozenset(m))


def test_forcing_zero_iff_unique_matching():
    rng = random.Random(11)
    seen_unique = seen_multi = False
    for _ in range(30):
        g = random_graph(rng, 6, 0.5)
        matchings = enumerate_perfect_matchings(g)
        for m in matchings:
            zero = forcing_number(g, m).number == 0
            assert zero == (len(matchings) == 1)
        seen_unique |= len(matchings) == 1
        seen_multi |= len(matchings) > 1
    assert seen_unique and seen_multi


def test_monotonicity_supersets_force():
    g = cycle_graph(6)
    for m in enumerate_perfect_matchings(g):
        for size in range(len(m) + 1):
            for s in combinations(m, size):
                if is_forcing_set(g, m, s).forcing:
                    for bigger in combinations(m, min(size + 1, len(m))):
                        if set(s) <= set(bigger):
                            assert is_forcing_set(g, m, bigger).forcing


# -- graph_forcing_stats -----------------------------------------------------------

def test_c4_stats():
    stats = graph_forcing_stats(cycle_graph(4))
    assert (stats.f, stats.F, stats.spectrum) == (1, 1, (1,))


def test_hypercube4_min_forcing():
    stats = graph_forcing_stats(hypercube(4))
    assert stats.f == 4  # 2^(4-2)


def test_stats_spectrum_contains_extremes():
    rng = random.Random(77)
    for _ in range(10):
        g = random_graph(rng, 6, 0.6)
        if not enumerate_perfect_matchings(g):
            continue
        stats = graph_forcing_stats(g)
        assert stats.f == min(stats.spectrum)
        assert stats.F == max(stats.spectrum)
        assert all(stats.f <= x <= stats.F for x in stats.spectrum)
        assert stats.number_of(stats.table[0][0]) == stats.table[0][1]


def test_stats_requires_a_matching():
    with pytest.raises(NoPerfectMatching):
        graph_forcing_stats(complete_graph(3))

"""Shared corpus builders; all randomness is seeded for reproducibility."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest

from forcelab.graph import Graph, make_graph
from forcelab.matchings import (
    EdgeAssignment,
    convex_combination,
    enumerate_perfect_matchings,
)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    pairs = [(i, j) for i, j in combinations(range(n), 2) if rng.random() < p]
    return make_graph(n, pairs)


def random_bipartite_with_matching(rng: random.Random, half: int, p: float) -> Graph:
    """Sides {0..half-1} and {half..2*half-1}; contains the matching i <-> half+i."""
    pairs = {(i, half + i) for i in range(half)}
    for i in range(half):
        for j in range(half, 2 * half):
            if rng.random() < p:
                pairs.add((i, j))
    return make_graph(2 * half, sorted(pairs))


def bipartite_corpus(count: int = 110, seed: int = 20240) -> list[Graph]:
    """Deterministic corpus of bipartite graphs with <= 8 vertices and a matching."""
    rng = random.Random(seed)
    corpus = []
    while len(corpus) < count:
        half = rng.choice([1, 2, 2, 3, 3, 4, 4])
        g = random_bipartite_with_matching(rng, half, rng.choice([0.2, 0.4, 0.6, 0.8]))
        corpus.append(g)
    return corpus


def general_corpus(count: int = 40, seed: int = 777) -> list[Graph]:
    """Graphs with <= 8 vertices and a nonempty degree-1 polytope; mixed parity."""
    from forcelab.matchings import enumerate_spanning_structures

    rng = random.Random(seed)
    corpus = []
    while len(corpus) < count:
        n = rng.choice([4, 5, 6, 6, 7, 8])
        g = random_graph(rng, n, rng.choice([0.4, 0.5, 0.6, 0.7]))
        try:
            if enumerate_spanning_structures(g):
                corpus.append(g)
        except Exception:
            continue
    return corpus


def average_of_matchings(g: Graph) -> EdgeAssignment:
    """Uniform convex combination of every perfect matching; an interior point."""
    matchings = enumerate_perfect_matchings(g)
    lam = Fraction(1, len(matchings))
    return convex_combination([(EdgeAssignment.from_edge_set(g, m), lam) for m in matchings])


@pytest.fixture(scope="session")
def small_bipartite_corpus():
    return bipartite_corpus(count=110)


@pytest.fixture(scope="session")
def small_general_corpus():
    return general_corpus(count=40)

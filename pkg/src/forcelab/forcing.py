"""Forcing sets and forcing numbers of integral perfect matchings.

A subset S of a perfect matching M forces M when M is the only perfect
matching containing S.  Minimization runs subset sizes upward, pruning with
counterexample matchings: a second matching M' containing S rules out every
candidate that misses M \\ M'.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import NoPerfectMatching, PreconditionError
from .graph import Graph
from .matchings import enumerate_perfect_matchings, iter_matchings_containing


def check_perfect_matching(graph: Graph, matching: Iterable[int]) -> frozenset[int]:
    """Validate and return the matching as an edge-index set."""
    edges = frozenset(matching)
    covered = 0
    for e in edges:
        u, v = graph.edges[e]
        bit = (1 << u) | (1 << v)
        if covered & bit:
            raise PreconditionError("not a matching: two edges share an endpoint")
        covered |= bit
    if covered != (1 << graph.vertex_count) - 1:
        raise PreconditionError("not a perfect matching: some vertex is uncovered")
    return edges


@dataclass(frozen=True)
class ForcingCheck:
    forcing: bool
    counterexample: Optional[tuple[int, ...]]  # a second matching containing the subset


def is_forcing_set(
    graph: Graph,
    matching: Iterable[int],
    subset: Iterable[int],
    known_matchings: Optional[Sequence[Sequence[int]]] = None,
) -> ForcingCheck:
    """Decide whether `subset` pins down `matching` among all perfect matchings.

    With `known_matchings` (a precomputed complete list) the check is a
    containment scan; otherwise a backtracking search looks for one other
    matching containing the subset and stops at the first hit.
    """
    m_set = check_perfect_matching(graph, matching)
    s_set = frozenset(subset)
    if not s_set <= m_set:
        raise PreconditionError("subset must be contained in the matching")
    if known_matchings is not None:
        for other in known_matchings:
            o_set = frozenset(other)
            if o_set != m_set and s_set <= o_set:
                return ForcingCheck(False, tuple(sorted(o_set)))
        return ForcingCheck(True, None)
    for other in iter_matchings_containing(graph, sorted(s_set)):
        if frozenset(other) != m_set:
            return ForcingCheck(False, other)
    return ForcingCheck(True, None)


@dataclass(frozen=True)
class ForcingNumberResult:
    number: int
    forcing_set: tuple[int, ...]


def forcing_number(
    graph: Graph,
    matching: Iterable[int],
    known_matchings: Optional[Sequence[Sequence[int]]] = None,
) -> ForcingNumberResult:
    """Minimum size of a forcing subset, with one optimal subset.

    Iterative deepening over subset sizes; every failed check contributes the
    edge set M \\ M' that any forcing subset must intersect, which prunes the
    next rounds.  Supersets of forcing sets force, so the first success is
    optimal.
    """
    m_set = check_perfect_matching(graph, matching)
    edges = tuple(sorted(m_set))
    witnesses: set[frozenset[int]] = set()
    for k in range(len(edges) + 1):
        for cand in combinations(edges, k):
            cand_set = frozenset(cand)
            if any(not (w & cand_set) for w in witnesses):
                continue
            check = is_forcing_set(graph, edges, cand, known_matchings)
            if check.forcing:
                return ForcingNumberResult(k, cand)
            witnesses.add(m_set - frozenset(check.counterexample))
    raise AssertionError("unreachable: a perfect matching forces itself")


@dataclass(frozen=True)
class ForcingStats:
    """Whole-graph forcing statistics over every perfect matching."""

    f: int
    F: int
    spectrum: tuple[int, ...]
    table: tuple[tuple[tuple[int, ...], int], ...]

    def number_of(self, matching: Sequence[int]) -> int:
        key = tuple(sorted(matching))
        for m, k in self.table:
            if m == key:
                return k
        raise KeyError(key)


def graph_forcing_stats(
    graph: Graph,
    max_vertices: int = 24,
    max_matchings: int = 1_000_000,
) -> ForcingStats:
    """Exact minimum/maximum forcing number and the full spectrum."""
    matchings = enumerate_perfect_matchings(graph, max_vertices, max_matchings)
    if not matchings:
        raise NoPerfectMatching("graph has no perfect matching")
    table = []
    for m in matchings:
        result = forcing_number(graph, m, known_matchings=matchings)
        table.append((m, result.number))
    numbers = [k for _, k in table]
    return ForcingStats(
        f=min(numbers),
        F=max(numbers),
        spectrum=tuple(sorted(set(numbers))),
        table=tuple(table),
    )

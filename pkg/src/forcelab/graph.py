"""Immutable undirected simple graphs with canonical edge indexing.

Edges are stored sorted lexicographically as (u, v) pairs with u < v, so edge
indices are stable across runs and every serialized artifact is byte-stable.
Generators tag well-known families so that symmetry facts can be attested
without a brute-force group search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import CapExceeded, GraphError, PreconditionError

# Families whose vertex- and edge-transitivity is known and not re-derived.
ATTESTED_TRANSITIVE_FAMILIES = frozenset({"hypercube", "cycle", "complete"})


class Graph:
    """Undirected simple graph on vertices 0..vertex_count-1."""

    __slots__ = ("vertex_count", "edges", "edge_index", "incident", "neighbor_mask", "family")

    def __init__(self, vertex_count: int, edge_pairs: Iterable[Sequence[int]], family: str | None = None):
        if vertex_count < 0:
            raise GraphError("vertex_count must be non-negative")
        canonical = []
        for pair in edge_pairs:
            u, v = pair
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphError(f"edge endpoint out of range: ({u}, {v})")
            canonical.append((u, v) if u < v else (v, u))
        canonical.sort()
        for i in range(1, len(canonical)):
            if canonical[i] == canonical[i - 1]:
                raise GraphError(f"duplicate edge {canonical[i]}")
        self.vertex_count = vertex_count
        self.edges = tuple(canonical)
        self.edge_index = {e: i for i, e in enumerate(self.edges)}
        incident = [[] for _ in range(vertex_count)]
        mask = [0] * vertex_count
        for i, (u, v) in enumerate(self.edges):
            incident[u].append(i)
            incident[v].append(i)
            mask[u] |= 1 << v
            mask[v] |= 1 << u
        self.incident = tuple(tuple(ixs) for ixs in incident)
        self.neighbor_mask = tuple(mask)
        self.family = family

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.incident[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        m = self.neighbor_mask[v]
        out = []
        while m:
            low = m & (-m)
            out.append(low.bit_length() - 1)
            m ^= low
        return tuple(out)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edge_index or (v, u) in self.edge_index

    def index_of(self, u: int, v: int) -> int:
        """Edge index of {u, v}; raises KeyError if absent."""
        return self.edge_index[(u, v) if u < v else (v, u)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.vertex_count == other.vertex_count
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"


def make_graph(vertex_count: int, edge_pairs: Iterable[Sequence[int]]) -> Graph:
    """Canonical graph from explicit edge pairs; validates and sorts."""
    return Graph(vertex_count, edge_pairs)


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def path_graph(k: int) -> Graph:
    return Graph(k, [(i, i + 1) for i in range(k - 1)], family="path")


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)], family="cycle")


def complete_graph(k: int) -> Graph:
    return Graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)], family="complete")


def hypercube(n: int, max_n: int = 20) -> Graph:
    """n-dimensional hypercube; vertex v carries bits (a_1..a_n), a_1 most significant."""
    if n < 1:
        raise GraphError("hypercube dimension must be >= 1")
    if n > max_n:
        raise CapExceeded(f"hypercube dimension {n} exceeds cap {max_n}")
    size = 1 << n
    pairs = []
    for v in range(size):
        for b in range(n):
            w = v ^ (1 << b)
            if v < w:
                pairs.append((v, w))
    return Graph(size, pairs, family="hypercube")


def vertex_bits(v: int, n: int) -> tuple[int, ...]:
    """Bit tuple (a_1..a_n) of a hypercube vertex, a_1 most significant."""
    return tuple((v >> (n - 1 - i)) & 1 for i in range(n))


def bits_vertex(bits: Sequence[int]) -> int:
    """Inverse of vertex_bits."""
    v = 0
    for b in bits:
        v = (v << 1) | (b & 1)
    return v


def hamming(u: Sequence[int], v: Sequence[int]) -> int:
    """Hamming distance between equal-length bit vectors."""
    if len(u) != len(v):
        raise GraphError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum(abs(a - b) for a, b in zip(u, v))


def bit_weight(u: Sequence[int]) -> int:
    """Number of nonzero coordinates."""
    return hamming(u, [0] * len(u))


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product; vertex (a, b) gets index a*|V(h)| + b."""
    if g.vertex_count == 0 or h.vertex_count == 0:
        raise GraphError("cartesian product needs nonempty factors")
    nh = h.vertex_count
    pairs = []
    for a in range(g.vertex_count):
        for (u, v) in h.edges:
            pairs.append((a * nh + u, a * nh + v))
    for (a, b) in g.edges:
        for u in range(nh):
            pairs.append((a * nh + u, b * nh + u))
    return Graph(g.vertex_count * nh, pairs)


# ---------------------------------------------------------------------------
# bipartiteness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BipartitenessReport:
    """Two-coloring when bipartite, else an explicit odd cycle."""

    bipartite: bool
    parts: Optional[tuple[frozenset[int], frozenset[int]]]
    odd_cycle: Optional[tuple[int, ...]]


def is_bipartite(g: Graph) -> BipartitenessReport:
    """BFS two-coloring; on failure returns an odd-cycle witness."""
    color = [-1] * g.vertex_count
    parent = [-1] * g.vertex_count
    for start in range(g.vertex_count):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = [start]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for u in g.neighbors(v):
                if color[u] == -1:
                    color[u] = 1 - color[v]
                    parent[u] = v
                    queue.append(u)
                elif color[u] == color[v]:
                    return BipartitenessReport(False, None, _odd_cycle(parent, u, v))
    side0 = frozenset(v for v in range(g.vertex_count) if color[v] == 0)
    side1 = frozenset(v for v in range(g.vertex_count) if color[v] == 1)
    return BipartitenessReport(True, (side0, side1), None)


def _odd_cycle(parent: list[int], u: int, v: int) -> tuple[int, ...]:
    """Close the BFS tree paths of u and v into the odd cycle they witness."""
    path_u, path_v = [u], [v]
    seen = {u: 0}
    x = u
    while parent[x] != -1:
        x = parent[x]
        seen[x] = len(path_u)
        path_u.append(x)
    x = v
    while x not in seen:
        x = parent[x]
        path_v.append(x)
    meet = x
    cycle = path_u[: seen[meet] + 1]
    cycle.extend(reversed(path_v[: path_v.index(meet)]))
    return tuple(cycle)


# ---------------------------------------------------------------------------
# simple cycle enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CycleWithClasses:
    """A simple cycle in canonical orientation, with its alternating edge classes.

    `vertices` starts at the cycle's smallest vertex; direction is fixed by
    vertices[1] < vertices[-1].  Even cycles carry the two classes of their
    proper 2-edge-coloring (edges at even/odd positions along the traversal);
    odd cycles have no proper 2-edge-coloring and carry None.
    """

    vertices: tuple[int, ...]
    edge_indices: tuple[int, ...]
    odd: bool
    class_a: Optional[frozenset[int]]
    class_b: Optional[frozenset[int]]

    def __len__(self) -> int:
        return len(self.vertices)


def _cycle_record(g: Graph, path: tuple[int, ...]) -> CycleWithClasses:
    k = len(path)
    edge_ixs = tuple(g.index_of(path[i], path[(i + 1) % k]) for i in range(k))
    if k % 2 == 1:
        return CycleWithClasses(path, edge_ixs, True, None, None)
    return CycleWithClasses(
        path,
        edge_ixs,
        False,
        frozenset(edge_ixs[0::2]),
        frozenset(edge_ixs[1::2]),
    )


def enumerate_cycles(
    g: Graph,
    max_edges: int = 64,
    max_cycles: int = 500_000,
    vertex_mask: Optional[int] = None,
) -> list[CycleWithClasses]:
    """Every simple cycle exactly once, up to rotation and reflection.

    Rooted DFS: a cycle is reported at its smallest vertex, walking only
    through larger vertices, with the direction fixed by the smaller second
    endpoint.  `vertex_mask` optionally restricts the search to a vertex
    subset.  Exceeding a cap raises CapExceeded; at that scale use the LP
    route instead of combinatorial cycle checks.
    """
    if g.edge_count > max_edges:
        raise CapExceeded(
            f"cycle enumeration capped at {max_edges} edges ({g.edge_count} present); "
            "use the LP-based uniqueness check instead"
        )
    allowed = vertex_mask if vertex_mask is not None else (1 << g.vertex_count) - 1
    masks = g.neighbor_mask
    out: list[CycleWithClasses] = []

    def extend(root: int, v: int, visited: int, path: tuple[int, ...]) -> None:
        m = masks[v] & allowed
        while m:
            low = m & (-m)
            m ^= low
            u = low.bit_length() - 1
            if u == root:
                if len(path) >= 3 and path[1] < path[-1]:
                    out.append(_cycle_record(g, path))
                    if len(out) > max_cycles:
                        raise CapExceeded(
                            f"more than {max_cycles} cycles; "
                            "use the LP-based uniqueness check instead"
                        )
            elif u > root and not (visited & low):
                extend(root, u, visited | low, path + (u,))

    for root in range(g.vertex_count):
        if allowed & (1 << root):
            extend(root, root, 1 << root, (root,))
    return out


def is_closed_walk(g: Graph, sequence: Sequence[int]) -> bool:
    """True when consecutive vertices are adjacent and the ends meet."""
    if len(sequence) < 2:
        return False
    closed = list(sequence) + [sequence[0]]
    return all(g.has_edge(closed[i], closed[i + 1]) for i in range(len(sequence)))


# ---------------------------------------------------------------------------
# automorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Automorphism:
    """Vertex permutation together with the edge permutation it induces."""

    vertex_perm: tuple[int, ...]
    edge_perm: tuple[int, ...]

    def apply_vertex(self, v: int) -> int:
        return self.vertex_perm[v]

    def apply_edge(self, e: int) -> int:
        return self.edge_perm[e]


@dataclass(frozen=True)
class AutomorphismGroup:
    """Full group when searched; `attested` groups carry flags only."""

    automorphisms: Optional[tuple[Automorphism, ...]]
    vertex_transitive: bool
    edge_transitive: bool
    attested: bool


def _induced_edge_perm(g: Graph, perm: Sequence[int]) -> Optional[tuple[int, ...]]:
    out = []
    for (u, v) in g.edges:
        image = (perm[u], perm[v])
        key = image if image[0] < image[1] else (image[1], image[0])
        idx = g.edge_index.get(key)
        if idx is None:
            return None
        out.append(idx)
    return tuple(out)


def automorphism_from_vertex_perm(g: Graph, perm: Sequence[int]) -> Automorphism:
    """Validate a vertex permutation as an automorphism and induce its edge permutation."""
    if sorted(perm) != list(range(g.vertex_count)):
        raise PreconditionError("map is not an automorphism: not a vertex permutation")
    edge_perm = _induced_edge_perm(g, perm)
    if edge_perm is None:
        raise PreconditionError("map is not an automorphism: an edge image is missing")
    return Automorphism(tuple(perm), edge_perm)


def automorphism_group(g: Graph, max_vertices: int = 12) -> AutomorphismGroup:
    """All automorphisms by backtracking over degree-compatible permutations.

    Beyond the vertex cap, known-transitive families answer the transitivity
    flags without listing the group; anything else raises CapExceeded.
    """
    n = g.vertex_count
    if n > max_vertices:
        if g.family in ATTESTED_TRANSITIVE_FAMILIES:
            return AutomorphismGroup(None, True, True, attested=True)
        raise CapExceeded(
            f"automorphism search capped at {max_vertices} vertices ({n} present)"
        )
    degrees = [g.degree(v) for v in range(n)]
    perms: list[tuple[int, ...]] = []
    image = [-1] * n
    used = [False] * n

    def assign(v: int) -> None:
        if v == n:
            perms.append(tuple(image))
            return
        for w in range(n):
            if used[w] or degrees[w] != degrees[v]:
                continue
            ok = True
            for u in range(v):
                if g.has_edge(u, v) != g.has_edge(image[u], w):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                assign(v + 1)
                used[w] = False
        image[v] = -1

    assign(0)
    autos = []
    for perm in perms:
        edge_perm = _induced_edge_perm(g, perm)
        if edge_perm is None:  # degree screen admits no false positives, but be safe
            continue
        autos.append(Automorphism(perm, edge_perm))

    vertex_orbit = {0} if n else set()
    for a in autos:
        vertex_orbit.add(a.vertex_perm[0])
    vt = len(vertex_orbit) == n and n > 0
    edge_orbit = {0} if g.edge_count else set()
    for a in autos:
        edge_orbit.add(a.edge_perm[0])
    et = len(edge_orbit) == g.edge_count and g.edge_count > 0
    return AutomorphismGroup(tuple(autos), vt, et, attested=False)


def is_transitive(g: Graph, max_vertices: int = 12) -> bool:
    """Vertex- and edge-transitivity, by attestation or by group search."""
    if g.family in ATTESTED_TRANSITIVE_FAMILIES:
        return True
    group = automorphism_group(g, max_vertices=max_vertices)
    return group.vertex_transitive and group.edge_transitive

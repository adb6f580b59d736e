"""forcelab: exact forcing numbers of integral and fractional perfect matchings."""

__version__ = "0.1.0"

from .errors import (
    CapExceeded,
    ForcelabError,
    GraphError,
    NoPerfectMatching,
    ParseError,
    PreconditionError,
)
from .graph import (
    Automorphism,
    AutomorphismGroup,
    CycleWithClasses,
    Graph,
    automorphism_group,
    bit_weight,
    bits_vertex,
    cartesian_product,
    complete_graph,
    cycle_graph,
    enumerate_cycles,
    hamming,
    hypercube,
    is_bipartite,
    is_transitive,
    make_graph,
    path_graph,
    vertex_bits,
)
from .matchings import (
    EdgeAssignment,
    FactorKind,
    FactorVerdict,
    PolytopeVertexStructure,
    VertexWeights,
    assignment_distance,
    classify_g_factor,
    convex_combination,
    enumerate_perfect_matchings,
    enumerate_spanning_structures,
    leq,
    support,
    total_weight,
)
from .forcing import (
    ForcingCheck,
    ForcingNumberResult,
    ForcingStats,
    forcing_number,
    graph_forcing_stats,
    is_forcing_set,
)
from .fractional import (
    FFResult,
    ForcingCertificate,
    bipartite_support_criterion,
    decompose_forcing_function,
    enumerate_fpm_vertex_candidates,
    extension_unique,
    fractional_forcing_number,
    graph_ff_max,
    graph_ff_min,
    is_minimal_forcing,
    symmetrized_fpm,
)
from .hypercube_bounds import (
    BlueSet,
    base_blue_set,
    build_blue_set,
    ff_upper_bound,
    fold_map,
    forcing_upper_bound,
    reported_lower_bound,
    verify_blue_set,
)

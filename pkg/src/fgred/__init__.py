"""Fine-grained reductions between clique, cycle, hypergraph and CSP
problems, with brute-force oracles and a sparse min-weight k-cycle solver."""

from .formats import ParseError, emit, parse
from .model import (
    CircleLayeredGraph,
    CspInstance,
    MultilinearPolynomial,
    UniformHypergraph,
    WeightedDigraph,
    Witness,
    tuple_index,
    tuple_unindex,
    validate,
)
from .oracles import (
    SolveResult,
    bf_apsp,
    bf_hyperclique,
    bf_hypercycle,
    bf_max_ksat,
    bf_min_clique,
    bf_min_kcycle,
    bf_radius,
    bf_shortest_cycle,
    bf_wiener,
    check_witness,
)
from .fast import AlgoStats, min_weight_kcycle, shortest_kcycle_through
from .reduce_cycle import (
    ReductionOutput,
    clique_to_cycle,
    clique_to_cycle_direct,
    gamma,
    hyperclique_to_hypercycle,
    hypercycle_to_digraph,
)

__all__ = [
    "AlgoStats",
    "CircleLayeredGraph",
    "CspInstance",
    "MultilinearPolynomial",
    "ParseError",
    "ReductionOutput",
    "SolveResult",
    "UniformHypergraph",
    "WeightedDigraph",
    "Witness",
    "bf_apsp",
    "bf_hyperclique",
    "bf_hypercycle",
    "bf_max_ksat",
    "bf_min_clique",
    "bf_min_kcycle",
    "bf_radius",
    "bf_shortest_cycle",
    "bf_wiener",
    "check_witness",
    "clique_to_cycle",
    "clique_to_cycle_direct",
    "emit",
    "gamma",
    "hyperclique_to_hypercycle",
    "hypercycle_to_digraph",
    "min_weight_kcycle",
    "parse",
    "shortest_kcycle_through",
    "tuple_index",
    "tuple_unindex",
    "validate",
]

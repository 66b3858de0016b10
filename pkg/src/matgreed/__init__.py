"""Matroids, greedoids and their intersections, given by membership oracles."""
from .core import (
    AxiomReport,
    Classification,
    ConstructionError,
    Counterexample,
    DomainTooLargeError,
    Element,
    GroundSet,
    MatgreedError,
    SetSystemOracle,
    check_axioms,
    classify,
    enumerate_feasible,
    intersection_oracle,
    is_greedoid,
)
from .graphs import BipartiteGraph, RootedTree
from .logic import (
    BoolCircuit,
    CnfFormula,
    ParseError,
    brute_force_sat,
    brute_force_weighted_sat,
    eval_circuit,
    eval_cnf,
    parse_circuit,
    parse_dimacs,
)
from .oracles import (
    PartitionSpec,
    partition_matroid,
    power_set,
    rooted_subtree_greedoid,
    tree_constrained_edge_greedoid,
    uniform_matroid,
)
from .reductions import (
    IntersectionInstance,
    WeightVector,
    deserialize_instance,
    padded_sat_to_intersection,
    sat_to_intersection,
    sat_to_weighted_greedoid,
    serialize_instance,
    wcs_to_dual_param_intersection,
    wcs_to_param_intersection,
)
from .solvers import (
    brute_force_max_intersection,
    brute_force_max_partition,
    brute_force_max_weight,
    greedy_basis,
    greedy_weighted_matroid,
    matroid_intersection,
)
from .treematch import (
    Matching,
    bipartite_max_matching,
    enumerate_root_subtrees,
    tree_constrained_matching,
    tree_matching_as_intersection,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "Classification",
    "ConstructionError",
    "Counterexample",
    "DomainTooLargeError",
    "Element",
    "GroundSet",
    "MatgreedError",
    "SetSystemOracle",
    "check_axioms",
    "classify",
    "enumerate_feasible",
    "intersection_oracle",
    "is_greedoid",
    "BipartiteGraph",
    "RootedTree",
    "BoolCircuit",
    "CnfFormula",
    "ParseError",
    "brute_force_sat",
    "brute_force_weighted_sat",
    "eval_circuit",
    "eval_cnf",
    "parse_circuit",
    "parse_dimacs",
    "PartitionSpec",
    "partition_matroid",
    "power_set",
    "rooted_subtree_greedoid",
    "tree_constrained_edge_greedoid",
    "uniform_matroid",
    "IntersectionInstance",
    "WeightVector",
    "deserialize_instance",
    "padded_sat_to_intersection",
    "sat_to_intersection",
    "sat_to_weighted_greedoid",
    "serialize_instance",
    "wcs_to_dual_param_intersection",
    "wcs_to_param_intersection",
    "brute_force_max_intersection",
    "brute_force_max_partition",
    "brute_force_max_weight",
    "greedy_basis",
    "greedy_weighted_matroid",
    "matroid_intersection",
    "Matching",
    "bipartite_max_matching",
    "enumerate_root_subtrees",
    "tree_constrained_matching",
    "tree_matching_as_intersection",
]

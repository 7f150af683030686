"""Stable matching with complementary firm preferences.

Certification of balancedness conditions on firms' acceptable sets,
firm decompositions, a complete desk-scale solver, and the rounding
pipeline from stable fractional matchings to stable integral ones.
"""

from .market import (
    BlockReport,
    FirmPreference,
    Market,
    MarketError,
    Matching,
    acceptable_sets,
    choose,
    find_block,
    is_acceptable_set,
    is_individually_rational,
    is_stable,
)
from .prefs import (
    ComplementarityGraph,
    DecomposedMarket,
    complementarity_graph,
    decompose_by_components,
    decompose_by_sets,
    demand_type,
    is_additive,
    is_complementary,
    lift_matching,
    primitive_acceptable_sets,
)
from .matrices import (
    MatrixCertificate,
    ZeroOneMatrix,
    is_balanced,
    is_totally_balanced,
    is_totally_unimodular,
    matrix_of_sets,
)
from .hypergraphs import (
    Hypergraph,
    HyperCycle,
    acceptable_set_hypergraph,
    check_hypergraph_balanced,
    check_odd_cycle_condition,
    firm_worker_hypergraph,
)
from .fractional import (
    ConstraintSystem,
    FractionalMatching,
    apply_stable_transformations,
    build_constraint_system,
    extract_integral_solution,
    verify_fractional_stability,
)
from .solve import SolveResult, solve
from .techtree import (
    TechnologyTree,
    check_neighbour_condition,
    engagement,
    find_neighbour_ordering,
    profile_from_tree,
    sets_from_tree,
    upgrade_workers,
    worker_set_matrix,
)
from .oracle import all_stable_matchings, cyclic_market, exists_for_all_worker_prefs

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

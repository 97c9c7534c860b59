"""Finite-scale classification machinery for metric spaces and trees.

Exact rational metric spaces with isometry search, ultrametric
structure theory (ball partitions, dendrogram codes, sphere
decompositions), prefix trees with canonical codes and rank, relational
structures, the constructions between these kinds, and a harness that
verifies each construction's defining property against brute-force
oracles.
"""

from .codes import CanonicalCode, render_code
from .errors import FinisoError
from .graphs import Graph, all_graphs, graph_isomorphic
from .metric import (
    Bijection,
    MetricSpace,
    diameter,
    distance_spectrum,
    find_isometry,
    is_isometry,
    realized_by,
    restrict,
    validate_metric,
)
from .reductions import (
    RadiusSequence,
    discrete_to_structure,
    graph_to_space,
    gromov_full,
    gromov_invariant,
    repair_isometry_to_tree_iso,
    sum_space,
    tree_to_space,
)
from .actions import GroupAction, adjust_group_metric, orbit_encode, validate_group_action
from .structures import RelationalStructure, structure_isomorphic
from .trees import Tree, enumerate_trees, meet, tree_canonical, tree_rank, validate_tree
from .ultrametric import (
    BallStructure,
    anchored_isometry_check,
    ball_partition,
    ball_structure,
    canonical_code,
    sphere_decompose,
    transfer,
    universal_discrete,
)
from .verify import (
    EquivalenceOracle,
    ReductionReport,
    dedup_by_oracle,
    eomega_equal,
    eplus_equal,
    verify_reduction,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

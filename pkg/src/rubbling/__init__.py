"""Exact solvers for graph pebbling and rubbling.

A distribution places pebbles on the vertices of a connected graph.  A
pebbling move removes two pebbles from one vertex and puts one on a
neighbor; a strict rubbling move removes one pebble from each of two
distinct neighbors of a vertex and puts one there.  This package decides
reachability and solvability questions exactly, produces replayable move
certificates, and computes the associated optimal and adversarial pebbling
and rubbling numbers by exhaustive, symmetry-reduced search.
"""

from .graphs import (
    FAMILIES,
    FamilySpec,
    Graph,
    QuotientMap,
    automorphism_generators,
    build_family,
    cartesian_product,
    delete_vertex,
    distance_classes,
    distances,
    expand_group,
    format_graph_text,
    parse_graph_text,
    permute_counts,
    quotient,
)
from .pebbles import (
    Certificate,
    CertReport,
    Distribution,
    MODES,
    MOVE_PEBBLING,
    MOVE_STRICT,
    Move,
    PEBBLING,
    RUBBLING,
    TransitionDigraph,
    apply_move,
    format_distribution_text,
    is_smooth,
    legal_moves,
    parse_distribution_text,
    quotient_distribution,
    smooth_fully,
    smoothing_move,
    verify_certificate,
    weight,
)
from .solver import (
    Query,
    Reachability,
    RootSearch,
    acyclic_reachable,
    reachable,
    solvable,
    thread_restricted_equivalence,
)
from .numbers import (
    NoFormulaError,
    NumberResult,
    QUANTITIES,
    Quantity,
    adversarial_number,
    characterize_path_solvable,
    closed_form,
    composition_count,
    compute_number,
    construction,
    enumerate_distributions,
    family_group,
    find_solvable,
    find_unsolvable,
    optimal_number,
)

__version__ = "0.1.0"

__all__ = [
    "FAMILIES",
    "FamilySpec",
    "Graph",
    "QuotientMap",
    "automorphism_generators",
    "build_family",
    "cartesian_product",
    "delete_vertex",
    "distance_classes",
    "distances",
    "expand_group",
    "format_graph_text",
    "parse_graph_text",
    "permute_counts",
    "quotient",
    "Certificate",
    "CertReport",
    "Distribution",
    "MODES",
    "MOVE_PEBBLING",
    "MOVE_STRICT",
    "Move",
    "PEBBLING",
    "RUBBLING",
    "TransitionDigraph",
    "apply_move",
    "format_distribution_text",
    "is_smooth",
    "legal_moves",
    "parse_distribution_text",
    "quotient_distribution",
    "smooth_fully",
    "smoothing_move",
    "verify_certificate",
    "weight",
    "Query",
    "Reachability",
    "RootSearch",
    "acyclic_reachable",
    "reachable",
    "solvable",
    "thread_restricted_equivalence",
    "NoFormulaError",
    "NumberResult",
    "QUANTITIES",
    "Quantity",
    "adversarial_number",
    "characterize_path_solvable",
    "closed_form",
    "composition_count",
    "compute_number",
    "construction",
    "enumerate_distributions",
    "family_group",
    "find_solvable",
    "find_unsolvable",
    "optimal_number",
    "__version__",
]

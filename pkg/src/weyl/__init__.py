"""Exact combinatorial invariants of Coxeter systems and their buildings."""
from .catalog import classify_irreducible, is_spherical, maximal_spherical_subsets, spherical_subsets
from .core import INF, CoxeterSystem, diagram, parse_system, serialize_system
from .cosetgraph import chamber_graph, coset_graph, ends_estimate, is_tree_within_ball, search_for_cycle
from .davis import rational_cd, relative_cohomology
from .decompose import (
    accessibility_tree,
    ends,
    find_spherical_infinity_decomposition,
    is_virtually_free,
    visual_decomposition,
    xi_graph,
)
from .invariants import algebraic_rank, invariant_report, rank3_case, vcd_bounds
from .words import ball, double_coset_counts, reduce

__all__ = [
    "INF", "CoxeterSystem", "accessibility_tree", "algebraic_rank", "ball",
    "chamber_graph", "coset_graph", "ends_estimate", "is_tree_within_ball", "search_for_cycle",
    "classify_irreducible", "diagram", "double_coset_counts", "ends",
    "find_spherical_infinity_decomposition", "invariant_report", "is_spherical",
    "is_virtually_free", "maximal_spherical_subsets", "parse_system", "rank3_case",
    "rational_cd", "reduce", "relative_cohomology", "serialize_system",
    "spherical_subsets", "vcd_bounds", "visual_decomposition", "xi_graph",
]

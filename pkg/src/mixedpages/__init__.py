"""Stack, queue, and mixed page numbers of ordered graphs.

Core objects: OrderedGraph (vertices 0..n-1, the index is the layout order),
GridMatching (permutation view of a separated matching), PageAssignment.
Submodules: core, patterns, greene, solver, constructions, quotient,
enumeration, cli.
"""

from .core import (
    GridMatching,
    OrderedGraph,
    PageAssignment,
    PageKind,
    PageSpec,
    build_graph,
    canonicalize_pattern,
    classify_pair,
    grid_to_graph,
    to_grid,
    validate_assignment,
)
from .patterns import PatternKind, PatternWitness

__all__ = [
    "GridMatching",
    "OrderedGraph",
    "PageAssignment",
    "PageKind",
    "PageSpec",
    "PatternKind",
    "PatternWitness",
    "build_graph",
    "canonicalize_pattern",
    "classify_pair",
    "grid_to_graph",
    "to_grid",
    "validate_assignment",
]

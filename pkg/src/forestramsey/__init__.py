"""Ramsey and star-critical Ramsey numbers of forests versus complete graphs."""

__version__ = "0.1.0"

from .calc import RamseyResult, classical_r, ramsey_forest, size_ramsey_upper, star_forest
from .errors import CapacityError, InvalidInput, ParseError, SearchIndeterminate, UnknownValue
from .forest import Forest, Tree, parse_forest, path, star
from .graph import (
    EdgeColoring,
    Graph,
    build_complete,
    build_complete_multipartite,
    build_pendant_star,
    contains_clique,
    contains_forest,
    is_free_coloring,
)
from .kernel import BACKEND
from .oracle import ArrowQuery, arrows, enumerate_free_colorings, find_free_coloring, min_ramsey, min_star
from .witness import (
    WitnessColoring,
    critical_family,
    family_membership,
    ramsey_full_witness,
    ramsey_lower_witness,
    star_lower_witness,
    verify_witness,
)

__all__ = [
    "ArrowQuery",
    "BACKEND",
    "CapacityError",
    "EdgeColoring",
    "Forest",
    "Graph",
    "InvalidInput",
    "ParseError",
    "RamseyResult",
    "SearchIndeterminate",
    "Tree",
    "UnknownValue",
    "WitnessColoring",
    "arrows",
    "build_complete",
    "build_complete_multipartite",
    "build_pendant_star",
    "classical_r",
    "contains_clique",
    "contains_forest",
    "critical_family",
    "enumerate_free_colorings",
    "family_membership",
    "find_free_coloring",
    "is_free_coloring",
    "min_ramsey",
    "min_star",
    "parse_forest",
    "path",
    "ramsey_forest",
    "ramsey_full_witness",
    "ramsey_lower_witness",
    "size_ramsey_upper",
    "star",
    "star_forest",
    "star_lower_witness",
    "verify_witness",
]

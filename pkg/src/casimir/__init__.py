"""Exact search for Casimir operators through differential operator realisations."""

from .algebra import LieAlgebra, beltrametti_blasi_count, builtin, jacobi_check, load_algebra, parse_algebra
from .enveloping import Enveloping, UEAElement, enveloping, is_casimir
from .grading import Grading, compute_grading, weight_classes
from .search import SearchResult, SearchRun, run_search
from .weyl import (
    DifferentialOperator, Realization, apply, builtin_realization, coadjoint_realization, load_realization,
)

__all__ = [
    "LieAlgebra", "beltrametti_blasi_count", "builtin", "jacobi_check", "load_algebra", "parse_algebra",
    "Enveloping", "UEAElement", "enveloping", "is_casimir",
    "Grading", "compute_grading", "weight_classes",
    "SearchResult", "SearchRun", "run_search",
    "DifferentialOperator", "Realization", "apply", "builtin_realization", "coadjoint_realization", "load_realization",
]

__version__ = "0.1.0"

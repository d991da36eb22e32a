"""Surjection operad, interval cuts on simplicial chains and Hochschild homology over F2."""

from .formal import FormalSum, kernel_f2, rank_f2, solve_f2
from .hochschild import GradedAlgebra, HochschildComplex, cochain_algebra, psi_eval
from .operad import OperadElement, Surjection, basis, boundary, compose, parse_surjection
from .pipeline import build_U, solve_V, verify
from .simplicial import SimplicialSet, interval_cut_action, sphere, standard_simplex

__all__ = [
    "FormalSum",
    "GradedAlgebra",
    "HochschildComplex",
    "OperadElement",
    "SimplicialSet",
    "Surjection",
    "basis",
    "boundary",
    "build_U",
    "cochain_algebra",
    "compose",
    "interval_cut_action",
    "kernel_f2",
    "parse_surjection",
    "psi_eval",
    "rank_f2",
    "solve_V",
    "solve_f2",
    "sphere",
    "standard_simplex",
    "verify",
]

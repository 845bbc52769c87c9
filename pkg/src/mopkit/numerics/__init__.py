"""Scalar domains, exact/high-precision linear algebra and root finding."""

from .domain import EXACT, ScalarDomain
from .linalg import DenseMatrix, det, lin_solve, nullspace, solve_general, solve_refined
from .poly import Polynomial
from .roots import RootSet, poly_roots

__all__ = [
    "EXACT", "ScalarDomain", "DenseMatrix", "det", "lin_solve", "nullspace",
    "solve_general", "solve_refined", "Polynomial", "RootSet", "poly_roots",
]

"""Multivariable Catalan-like polynomial triangles and x-total-positivity checks."""

from .polyring import (KERNEL, PolyMatrix, Polynomial, VarSet, determinant,
                       geq_x, is_x_nonnegative)

__all__ = ["KERNEL", "PolyMatrix", "Polynomial", "VarSet", "determinant",
           "geq_x", "is_x_nonnegative"]
__version__ = "0.1.0"

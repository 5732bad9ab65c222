"""Exact computations with Hopf algebra contramodule coefficients."""

__version__ = "0.1.0"

from .errors import HopfContraError
from .exactla import GF, QQ, FieldSpec, Matrix

__all__ = ["GF", "QQ", "FieldSpec", "HopfContraError", "Matrix", "__version__"]

"""Zeros of finite combinations of consecutive orthogonal polynomials."""
from ._backend import BACKEND
from .errors import CombzeroError

__version__ = "0.1.0"
__all__ = ["BACKEND", "CombzeroError", "__version__"]

"""Exact integral planes over orders in the real composition algebras."""

from __future__ import annotations

__version__ = "0.1.0"

from .golden import PHI, GoldenScalar, galois, sign_exact
from .algebra import ALGEBRAS, AlgebraElement, get_algebra
from .orders import BUILTIN_NAMES, Order, builtin
from .shells import enumerate_shell, unit_shell

__all__ = [
    "ALGEBRAS",
    "AlgebraElement",
    "BUILTIN_NAMES",
    "GoldenScalar",
    "Order",
    "PHI",
    "builtin",
    "enumerate_shell",
    "galois",
    "get_algebra",
    "sign_exact",
    "unit_shell",
    "__version__",
]

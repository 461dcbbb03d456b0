"""Exact arithmetic kernel.

Rationals are :class:`fractions.Fraction`; the other carriers are defined here.
"""
from fractions import Fraction as Rational

from .bipoly import BiPoly, BiRat
from .cyclotomic import Cyclotomic, cyclotomic_coeffs, cyclotomic_polynomial, euler_phi
from .linalg import Matrix, determinant, linear_solve
from .qseries import QSeries

__all__ = [
    "Rational",
    "Cyclotomic",
    "QSeries",
    "BiPoly",
    "BiRat",
    "Matrix",
    "cyclotomic_polynomial",
    "cyclotomic_coeffs",
    "euler_phi",
    "determinant",
    "linear_solve",
    "qseries_arith",
]


def qseries_arith(a, b=None, kind: str = "mul"):
    """Dispatch a named ring operation on q-series (add, mul, inv, div, derive, exp)."""
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "inv":
        return a.inverse()
    if kind == "div":
        return a / b
    if kind == "derive":
        return a.derive()
    if kind == "exp":
        return a.exp()
    raise ValueError(f"unknown q-series operation {kind!r}")

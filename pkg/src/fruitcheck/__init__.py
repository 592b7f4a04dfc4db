"""Checks for the generalized fruit equation a*x^d - y^2 - z^2 + x*y*z - c = 0 over quadratic fields."""

from .errors import CostCapExceeded, DomainError, PrecisionError, UnsupportedPrime
from .quad_field import RATIONAL, QuadField, QuadInt, parse_field, parse_quadint

__version__ = "0.1.0"

__all__ = [
    "RATIONAL",
    "QuadField",
    "QuadInt",
    "parse_field",
    "parse_quadint",
    "DomainError",
    "UnsupportedPrime",
    "PrecisionError",
    "CostCapExceeded",
]

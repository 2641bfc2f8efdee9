"""Even cycle transversal on node-weighted planar graphs."""

from fractions import Fraction

from ._ect import (
    APPROXIMATION_BOUND,
    InvalidParameter,
    OddK,
    ParseError,
    SolverError,
    TooLarge,
    even_cycle_vertices,
    exact,
    generate,
    has_even_cycle,
    verify,
)
from ._ect import solve as _solve

__all__ = [
    "APPROXIMATION_BOUND",
    "InvalidParameter",
    "OddK",
    "ParseError",
    "SolverError",
    "TooLarge",
    "even_cycle_vertices",
    "exact",
    "generate",
    "has_even_cycle",
    "solve",
    "verify",
    "fraction",
]


def fraction(text):
    """Converts a "p/q" string to a Fraction."""
    return Fraction(text)


def solve(instance_text):
    """Solves an instance given in text form; rational fields become Fractions."""
    result = _solve(instance_text)
    for key in ("cost", "dual", "ratio", "min_certificate"):
        result[key] = Fraction(result[key])
    return result

"""Exact commutative-algebra checks: Gröbner bases, integral closures,
primary tests and Whitney-condition witnesses."""

from .fields import QQ, PrimeField, SimpleExtension
from .groebner import Ideal, buchberger, ideal_equal, ideal_member, radical_member, saturation
from .parse import parse_field, parse_fixture, parse_poly, parse_ring
from .poly import Block, Grevlex, Lex, PolyRing, Polynomial

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "PrimeField",
    "SimpleExtension",
    "Ideal",
    "buchberger",
    "ideal_equal",
    "ideal_member",
    "radical_member",
    "saturation",
    "parse_field",
    "parse_fixture",
    "parse_poly",
    "parse_ring",
    "Block",
    "Grevlex",
    "Lex",
    "PolyRing",
    "Polynomial",
]

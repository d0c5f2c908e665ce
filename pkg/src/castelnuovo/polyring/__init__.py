"""Sparse multivariate polynomials over GF(p)."""

from castelnuovo.polyring.order import EQ, GT, LT, MonomialOrder, compare_monomials
from castelnuovo.polyring.parse import (
    PolynomialSyntaxError,
    format_polynomial,
    parse_order,
    parse_polynomial,
    parse_ring,
)
from castelnuovo.polyring.ring import (
    DEFAULT_CHARACTERISTIC,
    ExponentOverflow,
    Polynomial,
    Ring,
    RingMismatch,
    UnknownVariable,
    differentiate,
    substitute,
)


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


__all__ = [
    "DEFAULT_CHARACTERISTIC", "EQ", "GT", "LT", "ExponentOverflow", "MonomialOrder",
    "Polynomial", "PolynomialSyntaxError", "Ring", "RingMismatch", "UnknownVariable", "add",
    "compare_monomials", "differentiate", "format_polynomial", "mul", "parse_order",
    "parse_polynomial", "parse_ring", "substitute",
]

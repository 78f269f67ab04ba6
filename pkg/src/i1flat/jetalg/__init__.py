"""Exact polynomial, jet, and graded linear algebra kernel."""

from .linalg import (
    GradedSpan,
    RangeMismatchError,
    SpanSolver,
    member,
    quotient_complement,
    span_of,
)
from .parse import ParseError, parse_poly, parse_surface
from .poly import (
    DEFAULT_ORDER,
    CompositionError,
    Jet,
    Monomial,
    MonomialOrder,
    Poly,
    VariableMismatchError,
    format_poly,
    mono_degree,
    monomials_in_range,
    monomials_of_degree,
    partial,
    poly_compose,
    poly_mul,
    rat_from_str,
    rat_to_str,
)

__all__ = [
    "CompositionError",
    "DEFAULT_ORDER",
    "GradedSpan",
    "Jet",
    "Monomial",
    "MonomialOrder",
    "ParseError",
    "Poly",
    "RangeMismatchError",
    "SpanSolver",
    "VariableMismatchError",
    "format_poly",
    "member",
    "mono_degree",
    "monomials_in_range",
    "monomials_of_degree",
    "parse_poly",
    "parse_surface",
    "partial",
    "poly_compose",
    "poly_mul",
    "quotient_complement",
    "rat_from_str",
    "rat_to_str",
    "span_of",
]

"""Exact scalars, polynomials, certified intervals and real algebraic numbers."""
from .algebraic import (
    Number,
    RealAlgebraic,
    alg_compare,
    as_number,
    isolate_real_roots,
    refine,
    refined,
    sturm_count,
)
from .dyadic import DyadicInterval, default_precision, with_doubling
from .intervalset import IntervalSet, endpoint_enclosure, endpoint_json
from .parse import ParseError, parse_interval, parse_number, parse_rational
from .poly import Poly, X, is_squarefree, poly_gcd, squarefree_part
from .sturm import IndeterminateCount, count_real_roots, count_roots_rational, sturm_sequence

__all__ = [
    "DyadicInterval",
    "IndeterminateCount",
    "IntervalSet",
    "Number",
    "ParseError",
    "Poly",
    "RealAlgebraic",
    "X",
    "alg_compare",
    "as_number",
    "count_real_roots",
    "count_roots_rational",
    "default_precision",
    "endpoint_enclosure",
    "endpoint_json",
    "is_squarefree",
    "isolate_real_roots",
    "parse_interval",
    "parse_number",
    "parse_rational",
    "poly_gcd",
    "refine",
    "refined",
    "squarefree_part",
    "sturm_count",
    "sturm_sequence",
    "with_doubling",
]

"""Exact parsing of command-line numbers.

Accepted forms: integers, fractions ``p/q``, decimals ``1.25``, and quadratic
surds ``a + b*sqrtN`` such as ``-2-sqrt2``, ``sqrt(5)/2`` or ``1/2+3/4*sqrt5``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from .algebraic import RealAlgebraic

_RAT = r"(?:\d+(?:\.\d*)?|\.\d+)(?:/\d+)?"
_SQRT = r"sqrt(?:\(\s*(\d+(?:/\d+)?)\s*\)|(\d+))"
_TERM = re.compile(
    rf"\s*([+-])?\s*(?:({_RAT})\s*\*?\s*)?(?:{_SQRT})?(?:\s*/\s*(\d+))?\s*"
)


class ParseError(ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational; floats in scientific notation are rejected."""
    s = text.strip().replace("−", "-")
    if not re.fullmatch(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:/[+-]?\d+)?", s):
        raise ParseError(f"not an exact rational: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not an exact rational: {text!r}") from exc


def parse_number(text: str) -> Union[Fraction, RealAlgebraic]:
    """Parse ``a + b*sqrtN`` (any part optional) into an exact number."""
    s = text.strip().replace("−", "-").replace(" ", "")
    if not s:
        raise ParseError("empty number")
    try:
        return parse_rational(s)
    except ParseError:
        pass
    rational = Fraction(0)
    surd = Fraction(0)
    radicand = None
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse {text!r} at {s[pos:]!r}")
        sign, coef, rad_paren, rad_bare, den = m.groups()
        rad = rad_paren if rad_paren is not None else rad_bare
        if coef is None and rad is None:
            raise ParseError(f"cannot parse {text!r} at {s[pos:]!r}")
        if pos > 0 and sign is None:
            raise ParseError(f"missing operator in {text!r}")
        value = Fraction(coef) if coef is not None else Fraction(1)
        if sign == "-":
            value = -value
        if den is not None:
            value /= int(den)
        if rad is None:
            rational += value
        else:
            r = Fraction(rad)
            if radicand is not None and r != radicand:
                raise ParseError("only one square-root radicand is supported")
            radicand = r
            surd += value
        pos = m.end()
    if radicand is None:
        return rational
    return RealAlgebraic.quadratic(rational, surd, radicand)


def parse_interval(text: str):
    """Parse ``left,right`` into two exact endpoints."""
    parts = _split_top(text)
    if len(parts) != 2:
        raise ParseError(f"interval needs two comma-separated endpoints: {text!r}")
    return parse_number(parts[0]), parse_number(parts[1])


def _split_top(text: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return out

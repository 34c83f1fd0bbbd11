"""Finite unions of disjoint closed real intervals with exact endpoints."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .algebraic import Number, RealAlgebraic, alg_compare
from .dyadic import DyadicInterval


def endpoint_enclosure(x: Number, prec: int = 64) -> DyadicInterval:
    if isinstance(x, RealAlgebraic):
        return x.enclosure(prec)
    return DyadicInterval.exact(Fraction(x), prec)


def endpoint_json(x: Number, digits: int = 18) -> dict:
    enc = endpoint_enclosure(x, int(digits * 3.33) + 8)
    out = {"decimal": enc.decimal(digits), "width": str(float(enc.width))}
    if isinstance(x, RealAlgebraic):
        out["minpoly"] = str(x.minpoly)
    else:
        out["exact"] = str(Fraction(x))
    return out


@dataclass(frozen=True)
class IntervalSet:
    intervals: tuple[tuple[Number, Number], ...]

    def __post_init__(self):
        prev = None
        for left, right in self.intervals:
            if alg_compare(left, right) > 0:
                raise ValueError("interval with left > right")
            if prev is not None and alg_compare(prev, left) >= 0:
                raise ValueError("intervals must be sorted and pairwise disjoint")
            prev = right

    @classmethod
    def of(cls, pairs: Sequence[tuple[Number, Number]]) -> "IntervalSet":
        return cls(tuple((a, b) for a, b in pairs))

    def __len__(self):
        return len(self.intervals)

    def __iter__(self) -> Iterator[tuple[Number, Number]]:
        return iter(self.intervals)

    def __getitem__(self, i):
        return self.intervals[i]

    def contains(self, x: Number) -> bool:
        return any(alg_compare(a, x) <= 0 <= alg_compare(b, x) for a, b in self.intervals)

    def hull(self) -> tuple[Number, Number]:
        return self.intervals[0][0], self.intervals[-1][1]

    def equals(self, other: "IntervalSet") -> bool:
        if len(self) != len(other):
            return False
        return all(alg_compare(a, c) == 0 and alg_compare(b, d) == 0
                   for (a, b), (c, d) in zip(self.intervals, other.intervals))

    def to_json(self) -> list[dict]:
        return [{"left": endpoint_json(a), "right": endpoint_json(b)} for a, b in self.intervals]

    def __str__(self):
        parts = []
        for a, b in self.intervals:
            parts.append(f"[{_short(a)}, {_short(b)}]")
        return " U ".join(parts)


def _short(x: Number) -> str:
    if isinstance(x, RealAlgebraic):
        return f"{float(x):.12g}"
    return str(Fraction(x))

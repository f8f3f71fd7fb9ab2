"""Numeric values for centrality results.

Exact values are arbitrary-precision rationals and compare exactly.
Approximate values are floats tagged with a tolerance; two of them compare
equal when they differ by at most the (larger) tolerance.  Mixing the two
kinds in one comparison is a :class:`ValueKindError`, never a silent cast.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ValueKindError

DEFAULT_TOLERANCE = 1e-9

#: Multiplier for the "too close to call" band around the tolerance: an
#: approximate delta with tol < |x| <= AMBIGUITY_BAND * tol keeps its sign
#: but is reported as ambiguous instead of being trusted blindly.
AMBIGUITY_BAND = 1000.0


@dataclass(frozen=True)
class Exact:
    value: Fraction

    def __post_init__(self):
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Approx:
    value: float
    tol: float = DEFAULT_TOLERANCE


Value = Union[Exact, Approx]


def exact(x) -> Exact:
    return Exact(Fraction(x))


def approx(x: float, tol: float = DEFAULT_TOLERANCE) -> Approx:
    return Approx(float(x), tol)


def _check_same_kind(a: Value, b: Value) -> None:
    if isinstance(a, Exact) != isinstance(b, Exact):
        raise ValueKindError(
            f"cannot compare exact and approximate values: {a!r} vs {b!r}"
        )


def values_equal(a: Value, b: Value) -> bool:
    _check_same_kind(a, b)
    if isinstance(a, Exact):
        return a.value == b.value
    tol = max(a.tol, b.tol)
    return abs(a.value - b.value) <= tol


def value_cmp(a: Value, b: Value) -> int:
    """Three-way comparison: -1, 0 or +1.  Approx ties within tolerance are 0."""
    _check_same_kind(a, b)
    if isinstance(a, Exact):
        d = a.value - b.value
        return (d > 0) - (d < 0)
    tol = max(a.tol, b.tol)
    d = a.value - b.value
    if abs(d) <= tol:
        return 0
    return 1 if d > 0 else -1


def value_sub(a: Value, b: Value) -> Value:
    _check_same_kind(a, b)
    if isinstance(a, Exact):
        return Exact(a.value - b.value)
    return Approx(a.value - b.value, max(a.tol, b.tol))


def sign_with_band(delta: Value) -> tuple[int, bool]:
    """Classify a delta as (-1 | 0 | +1, ambiguous).

    Exact deltas get their true sign and are never ambiguous.  Approximate
    deltas within the tolerance are zero; within the wider ambiguity band
    they keep their sign but are flagged ambiguous.
    """
    if isinstance(delta, Exact):
        d = delta.value
        return ((d > 0) - (d < 0), False)
    x, tol = delta.value, delta.tol
    if abs(x) <= tol:
        return (0, False)
    sign = 1 if x > 0 else -1
    return (sign, abs(x) <= AMBIGUITY_BAND * tol)


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or a plain integer/decimal string into a Fraction."""
    return Fraction(text.strip())


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def value_to_json(v: Value):
    if isinstance(v, Exact):
        return {"exact": format_rational(v.value)}
    return {"approx": v.value, "tol": v.tol}

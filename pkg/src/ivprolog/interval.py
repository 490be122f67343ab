"""Closed subintervals of [0, 1] and the lattice operations on them.

Intervals are ordered componentwise, so ``<=`` on :class:`Interval` is a
*partial* order: ``[0.2,0.6]`` and ``[0.5,0.5]`` are incomparable and both
``a <= b`` and ``b <= a`` are false.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple

from .errors import InvalidInterval, NegativeExponent

__all__ = [
    "Interval", "Bounds", "BOTTOM", "TOP", "make", "leq", "lt", "meet", "join",
    "complement", "add", "sub", "mul", "power", "clamp", "approx_equal",
    "parse_interval", "register_tnorm", "get_tnorm", "TNORMS", "meet_all", "join_all",
]


class Bounds(NamedTuple):
    """Unclamped result of interval arithmetic; may leave [0, 1]."""

    lower: float
    upper: float


@dataclass(frozen=True, slots=True)
class Interval:
    lower: float
    upper: float

    def __post_init__(self):
        lo, hi = self.lower, self.upper
        if not (isinstance(lo, (int, float)) and isinstance(hi, (int, float))):
            raise InvalidInterval(f"bounds must be real numbers, got {lo!r}, {hi!r}")
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise InvalidInterval(f"bounds must be finite, got [{lo}, {hi}]")
        if not 0.0 <= lo <= hi <= 1.0:
            raise InvalidInterval(f"need 0 <= lower <= upper <= 1, got [{lo}, {hi}]")
        object.__setattr__(self, "lower", float(lo))
        object.__setattr__(self, "upper", float(hi))

    def __str__(self) -> str:
        return f"[{self.lower!r},{self.upper!r}]"

    def __repr__(self) -> str:
        return f"Interval{self}"

    def __iter__(self):
        yield self.lower
        yield self.upper

    # partial order
    def __le__(self, other: Interval) -> bool:
        return self.lower <= other.lower and self.upper <= other.upper

    def __ge__(self, other: Interval) -> bool:
        return other.__le__(self)

    def __lt__(self, other: Interval) -> bool:
        return self <= other and self != other

    def __gt__(self, other: Interval) -> bool:
        return other.__lt__(self)

    def __and__(self, other: Interval) -> Interval:
        return meet(self, other)

    def __or__(self, other: Interval) -> Interval:
        return join(self, other)

    def __invert__(self) -> Interval:
        return complement(self)


BOTTOM = Interval(0.0, 0.0)
TOP = Interval(1.0, 1.0)


def make(lower: float, upper: float) -> Interval:
    return Interval(lower, upper)


def leq(a: Interval, b: Interval) -> bool:
    return a.lower <= b.lower and a.upper <= b.upper


def lt(a: Interval, b: Interval) -> bool:
    return (a.lower < b.lower and a.upper <= b.upper) or (a.lower <= b.lower and a.upper < b.upper)


def meet(a: Interval, b: Interval) -> Interval:
    return Interval(min(a.lower, b.lower), min(a.upper, b.upper))


def join(a: Interval, b: Interval) -> Interval:
    return Interval(max(a.lower, b.lower), max(a.upper, b.upper))


def meet_all(items: Iterable[Interval]) -> Interval:
    """Infimum of a collection; the empty infimum is the top element."""
    out = TOP
    for x in items:
        out = meet(out, x)
    return out


def join_all(items: Iterable[Interval]) -> Interval:
    out = BOTTOM
    for x in items:
        out = join(out, x)
    return out


def complement(a: Interval) -> Interval:
    return Interval(1.0 - a.upper, 1.0 - a.lower)


# Arithmetic accepts Interval or Bounds (anything unpacking to two reals).

def add(a, b) -> Bounds:
    (al, au), (bl, bu) = a, b
    return Bounds(al + bl, au + bu)


def sub(a, b) -> Bounds:
    (al, au), (bl, bu) = a, b
    return Bounds(al - bu, au - bl)


def mul(a, b) -> Bounds:
    (al, au), (bl, bu) = a, b
    products = (al * bl, al * bu, au * bl, au * bu)
    return Bounds(min(products), max(products))


def power(a, r: float) -> Bounds:
    if r < 0:
        raise NegativeExponent(f"exponent must be non-negative, got {r}")
    lo, hi = a
    if lo < 0 or hi < 0:
        raise InvalidInterval("power is only defined for non-negative bounds")
    return Bounds(lo ** r, hi ** r)


def clamp(bounds) -> Interval:
    """Project a pair of reals onto the lattice by clipping each bound to [0, 1]."""
    lo, hi = bounds
    if lo > hi:
        raise InvalidInterval(f"inverted bounds [{lo}, {hi}]")
    return Interval(min(max(lo, 0.0), 1.0), min(max(hi, 0.0), 1.0))


def approx_equal(a, b, tol: float = 1e-9) -> bool:
    (al, au), (bl, bu) = a, b
    return abs(al - bl) <= tol and abs(au - bu) <= tol


def parse_interval(text: str) -> Interval:
    """Parse the textual form ``[l,u]``."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise InvalidInterval(f"expected '[l,u]', got {text!r}")
    parts = s[1:-1].split(",")
    if len(parts) != 2:
        raise InvalidInterval(f"expected '[l,u]', got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise InvalidInterval(f"expected '[l,u]', got {text!r}") from None
    return Interval(lo, hi)


# t-norms are registered as scalar functions and lifted componentwise.
TNORMS: dict[str, Callable[[float, float], float]] = {"min": min}


def register_tnorm(name: str, fn: Callable[[float, float], float]) -> None:
    TNORMS[name] = fn


def get_tnorm(name: str = "min") -> Callable[[Interval, Interval], Interval]:
    if name == "min":
        return meet
    try:
        t = TNORMS[name]
    except KeyError:
        raise KeyError(f"unknown t-norm {name!r}; registered: {sorted(TNORMS)}") from None

    def lifted(a: Interval, b: Interval) -> Interval:
        return Interval(t(a.lower, b.lower), t(a.upper, b.upper))

    return lifted

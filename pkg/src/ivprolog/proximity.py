"""Symmetric, reflexive proximity relation between symbols.

No transitive closure is taken: ``a~b`` and ``b~c`` say nothing about
``a`` and ``c``.
"""

from __future__ import annotations

import warnings
from typing import Iterable, Optional

from .interval import TOP, Interval
from .terms import ProximityEquation

__all__ = ["ProximityTable", "EMPTY_TABLE"]


class ProximityTable:
    def __init__(self, equations: Iterable[ProximityEquation] = ()):
        self._degrees: dict[frozenset, Interval] = {}
        self._partners: dict[str, dict[str, Interval]] = {}
        for eq in equations:
            self.add(eq.left, eq.right, eq.degree)

    @classmethod
    def from_program(cls, program) -> "ProximityTable":
        return cls(program.proximities)

    def add(self, left: str, right: str, degree: Interval) -> None:
        if left == right:
            raise ValueError("reflexive pairs are implicit at [1,1]")
        key = frozenset((left, right))
        if key in self._degrees and self._degrees[key] != degree:
            warnings.warn(f"proximity {left}~{right} redefined as {degree}", stacklevel=2)
        self._degrees[key] = degree
        self._partners.setdefault(left, {})[right] = degree
        self._partners.setdefault(right, {})[left] = degree

    def degree(self, x: str, y: str) -> Optional[Interval]:
        """Degree of ``x ~ y``; ``[1,1]`` when equal, ``None`` when unrelated."""
        if x == y:
            return TOP
        return self._degrees.get(frozenset((x, y)))

    def partners(self, symbol: str) -> dict[str, Interval]:
        """Symbols proximate to ``symbol`` (excluding itself)."""
        return self._partners.get(symbol, {})

    def __bool__(self) -> bool:
        return bool(self._degrees)

    def __len__(self) -> int:
        return len(self._degrees)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProximityTable) and self._degrees == other._degrees

    def __hash__(self):
        return hash(frozenset(self._degrees.items()))

    def equations(self) -> list[ProximityEquation]:
        out = []
        for key, deg in self._degrees.items():
            a, b = sorted(key)
            out.append(ProximityEquation(a, b, deg))
        return out

    def __repr__(self) -> str:
        body = ", ".join(f"{e.left}~{e.right}={e.degree}" for e in self.equations())
        return f"ProximityTable({body})"


EMPTY_TABLE = ProximityTable()

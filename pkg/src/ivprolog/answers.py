"""Computed answers and the lazy answer stream shared by both engines."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import DepthLimitExceeded
from .interval import Interval
from .terms import Atom, Compound, Constant, Variable

__all__ = ["Answer", "AnswerStream", "canonical_bindings"]


@dataclass(frozen=True)
class Answer:
    bindings: tuple  # ((name, Term), ...) in goal-variable order
    degree: Interval

    @property
    def substitution(self) -> dict:
        return {Variable(name): t for name, t in self.bindings}

    def __str__(self) -> str:
        if not self.bindings:
            return f"yes with {self.degree}"
        shown = ", ".join(f"{name}={t}" for name, t in self.bindings)
        return f"{shown} with {self.degree}"


def _rename(t, mapping: dict):
    if isinstance(t, Variable):
        if t not in mapping:
            mapping[t] = Variable(f"_G{len(mapping) + 1}")
        return mapping[t]
    if isinstance(t, Compound):
        return Compound(t.functor, tuple(_rename(a, mapping) for a in t.args))
    return t


def canonical_bindings(names, terms) -> tuple:
    """Pair goal variable names with resolved terms, renaming free variables.

    Free variables are renamed ``_G1, _G2, ...`` by first occurrence so that
    answers from different engines compare equal regardless of internal names.
    Anonymous goal variables are dropped.
    """
    mapping: dict = {}
    out = []
    for name, t in zip(names, terms):
        renamed = _rename(t, mapping)
        if not name.startswith("_Anon"):
            out.append((name, renamed))
    return tuple(out)


class AnswerStream:
    """Iterator over answers that also supports Prolog-style "next answer".

    ``incomplete`` becomes true once some branch was cut by the depth limit.
    """

    def __init__(self, generator: Iterator[Answer]):
        self._gen = generator
        self.incomplete = False
        self.exhausted = False

    def __iter__(self):
        return self

    def __next__(self) -> Answer:
        try:
            return next(self._gen)
        except StopIteration:
            self.exhausted = True
            raise

    def next_answer(self) -> Optional[Answer]:
        try:
            return next(self)
        except StopIteration:
            return None

    def all(self) -> list[Answer]:
        return list(self)

    def raise_if_incomplete(self) -> None:
        if self.incomplete:
            raise DepthLimitExceeded("depth limit cut at least one branch")

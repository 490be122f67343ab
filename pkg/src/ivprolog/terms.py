"""Abstract syntax for interval-valued fuzzy programs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional, Union

from .interval import BOTTOM, TOP, Interval

__all__ = [
    "Variable", "Constant", "Compound", "Term", "Atom", "Clause", "ProximityEquation",
    "Program", "Goal", "Alphabet", "alphabet", "pretty", "term_variables", "is_ground",
    "ARTIFICIAL_CONSTANT",
]

ARTIFICIAL_CONSTANT = "a"


@dataclass(frozen=True, slots=True)
class Variable:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Constant:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Compound:
    functor: str
    args: tuple

    def __post_init__(self):
        if len(self.args) < 1:
            raise ValueError("compound terms need at least one argument")

    @property
    def arity(self) -> int:
        return len(self.args)

    def __str__(self) -> str:
        return f"{self.functor}({','.join(map(str, self.args))})"


Term = Union[Variable, Constant, Compound]


@dataclass(frozen=True, slots=True)
class Atom:
    predicate: str
    args: tuple = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def key(self) -> tuple[str, int]:
        return (self.predicate, len(self.args))

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(map(str, self.args))})"


@dataclass(frozen=True, slots=True)
class Clause:
    """``head :- body [annotation]``; a fact when ``body`` is empty.

    ``guards`` runs parallel to ``body``; ``None`` marks an unguarded body atom.
    A guard of ``[0,0]`` is vacuous and is normalised to ``None``.
    """

    head: Atom
    body: tuple = ()
    annotation: Interval = TOP
    guards: tuple = ()

    def __post_init__(self):
        guards = self.guards or (None,) * len(self.body)
        if len(guards) != len(self.body):
            raise ValueError("guards must be parallel to the body")
        guards = tuple(None if g == BOTTOM else g for g in guards)
        object.__setattr__(self, "guards", guards)

    @property
    def is_fact(self) -> bool:
        return not self.body

    @property
    def has_guards(self) -> bool:
        return any(g is not None for g in self.guards)

    def variables(self) -> list[Variable]:
        """Variables in order of first occurrence, head first."""
        seen: dict[Variable, None] = {}
        for atom in (self.head, *self.body):
            for v in term_variables(atom):
                seen.setdefault(v)
        return list(seen)

    def __str__(self) -> str:
        return pretty(self)


@dataclass(frozen=True, slots=True)
class ProximityEquation:
    left: str
    right: str
    degree: Interval

    def __post_init__(self):
        if self.left == self.right:
            raise ValueError(f"reflexive proximity {self.left}~{self.right} is implicit")

    def __str__(self) -> str:
        return pretty(self)


@dataclass(frozen=True)
class Program:
    clauses: tuple = ()
    proximities: tuple = ()
    lambda_cut: Interval = BOTTOM

    def predicates(self) -> list[tuple[str, int]]:
        """Defined predicate keys in order of first defining clause."""
        seen: dict[tuple[str, int], None] = {}
        for c in self.clauses:
            seen.setdefault(c.head.key)
        return list(seen)

    def predicate_order(self) -> list[tuple[str, int]]:
        """Rule-defined predicates first, then fact-only ones, each by first definition.

        Compiled code blocks are laid out in this order, and both engines try
        proximate predicates in this order.
        """
        keys = self.predicates()
        with_rules = {c.head.key for c in self.clauses if c.body}
        return [k for k in keys if k in with_rules] + [k for k in keys if k not in with_rules]

    def clauses_for(self, key: tuple[str, int]) -> list[Clause]:
        return [c for c in self.clauses if c.head.key == key]

    def __str__(self) -> str:
        return pretty(self)


@dataclass(frozen=True, slots=True)
class Goal:
    atoms: tuple

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("a goal needs at least one atom")

    def variables(self) -> list[Variable]:
        seen: dict[Variable, None] = {}
        for atom in self.atoms:
            for v in term_variables(atom):
                seen.setdefault(v)
        return list(seen)

    def __str__(self) -> str:
        return ", ".join(map(str, self.atoms))


def term_variables(t) -> Iterator[Variable]:
    """Yield variables of a term or atom left to right (with repeats)."""
    if isinstance(t, Variable):
        yield t
    elif isinstance(t, (Compound, Atom)):
        for a in t.args:
            yield from term_variables(a)


def is_ground(t) -> bool:
    return next(term_variables(t), None) is None


class Alphabet(NamedTuple):
    constants: frozenset
    functions: frozenset
    predicates: frozenset
    variables: frozenset


def _collect(t, consts, funcs, vars_):
    if isinstance(t, Variable):
        vars_.add(t.name)
    elif isinstance(t, Constant):
        consts.add(t.name)
    else:
        funcs.add((t.functor, t.arity))
        for a in t.args:
            _collect(a, consts, funcs, vars_)


def alphabet(program: Program) -> Alphabet:
    """Symbols occurring in the clauses; injects constant ``a`` if none occur."""
    consts: set[str] = set()
    funcs: set[tuple[str, int]] = set()
    preds: set[tuple[str, int]] = set()
    vars_: set[str] = set()
    for c in program.clauses:
        for atom in (c.head, *c.body):
            preds.add(atom.key)
            for a in atom.args:
                _collect(a, consts, funcs, vars_)
    if not consts:
        consts.add(ARTIFICIAL_CONSTANT)
    return Alphabet(frozenset(consts), frozenset(funcs), frozenset(preds), frozenset(vars_))


def pretty(obj) -> str:
    """Render an AST node as source text that parses back to an equal node."""
    if isinstance(obj, Program):
        lines = []
        if obj.lambda_cut != BOTTOM:
            lines.append(f":-lambdaCutIVFS({obj.lambda_cut}).")
        lines.extend(pretty(p) for p in obj.proximities)
        lines.extend(pretty(c) for c in obj.clauses)
        return "\n".join(lines) + ("\n" if lines else "")
    if isinstance(obj, ProximityEquation):
        return f"{obj.left}~{obj.right}={obj.degree}."
    if isinstance(obj, Clause):
        return _pretty_clause(obj)
    if isinstance(obj, Goal):
        return str(obj)
    return str(obj)


def _pretty_clause(c: Clause) -> str:
    if c.is_fact:
        ann = "" if c.annotation == TOP else str(c.annotation)
        return f"{c.head}{ann}."
    parts = []
    for atom, guard in zip(c.body, c.guards):
        parts.append(f"{atom}{guard}" if guard is not None else str(atom))
    text = f"{c.head}:-{', '.join(parts)}"
    # One trailing interval is a guard when an earlier body atom is guarded and
    # the rule annotation otherwise; two are always guard then annotation.
    earlier_guards = any(g is not None for g in c.guards[:-1])
    if c.guards[-1] is not None:
        if c.annotation != TOP or not earlier_guards:
            text += f" {c.annotation}"
    elif c.annotation != TOP:
        if earlier_guards:
            text += str(BOTTOM)
        text += f" {c.annotation}"
    return text + "."

"""Syntactic and proximity-based (weak) unification over AST terms."""

from __future__ import annotations

from typing import Mapping, Optional

from .errors import OccursViolation, UnifyFailure
from .interval import TOP, Interval, meet
from .proximity import EMPTY_TABLE, ProximityTable
from .terms import Atom, Compound, Constant, Variable

__all__ = ["Substitution", "walk", "resolve", "unify", "weak_unify", "occurs"]


class Substitution(Mapping):
    """Immutable triangular substitution; :meth:`apply` resolves fully.

    Because application resolves bindings to a fixpoint, applying the result
    again changes nothing.
    """

    __slots__ = ("_b",)

    def __init__(self, bindings: Optional[Mapping] = None):
        self._b = dict(bindings) if bindings else {}

    def __getitem__(self, v):
        return self._b[v]

    def __iter__(self):
        return iter(self._b)

    def __len__(self):
        return len(self._b)

    def __repr__(self):
        return "{" + ", ".join(f"{k}↦{resolve(k, self._b)}" for k in self._b) + "}"

    def apply(self, t):
        return resolve(t, self._b)

    def restrict(self, variables) -> "Substitution":
        return Substitution({v: resolve(v, self._b) for v in variables if v in self._b})

    @property
    def bindings(self) -> dict:
        return dict(self._b)


def walk(t, b: Mapping):
    while isinstance(t, Variable):
        nxt = b.get(t)
        if nxt is None:
            return t
        t = nxt
    return t


def resolve(t, b: Mapping):
    t = walk(t, b)
    if isinstance(t, Compound):
        return Compound(t.functor, tuple(resolve(a, b) for a in t.args))
    if isinstance(t, Atom):
        return Atom(t.predicate, tuple(resolve(a, b) for a in t.args))
    return t


def occurs(v: Variable, t, b: Mapping) -> bool:
    t = walk(t, b)
    if t == v:
        return True
    if isinstance(t, (Compound, Atom)):
        return any(occurs(v, a, b) for a in t.args)
    return False


def _bind(v: Variable, t, b: dict, occurs_check: bool) -> None:
    if occurs_check and occurs(v, t, b):
        raise OccursViolation(f"{v} occurs in {resolve(t, b)}")
    b[v] = t


def _symbol_degree(x: str, y: str, table: ProximityTable) -> Interval:
    d = table.degree(x, y)
    if d is None:
        raise UnifyFailure(f"{x} and {y} do not unify")
    return d


def _unify(a, b_, b: dict, table: ProximityTable, occurs_check: bool, degree: Interval) -> Interval:
    # Depth-first, left to right; the abstract machine visits symbols in the
    # same order, which keeps degrees identical across engines.
    a = walk(a, b)
    b_ = walk(b_, b)
    if a == b_:
        return degree
    if isinstance(a, Variable):
        _bind(a, b_, b, occurs_check)
        return degree
    if isinstance(b_, Variable):
        _bind(b_, a, b, occurs_check)
        return degree
    if isinstance(a, Constant):
        if not isinstance(b_, Constant):
            raise UnifyFailure(f"{a} and {b_} do not unify")
        if a.name == b_.name:
            return degree
        return meet(degree, _symbol_degree(a.name, b_.name, table))
    if isinstance(a, (Compound, Atom)) and type(a) is type(b_):
        if len(a.args) != len(b_.args):
            raise UnifyFailure(f"arity mismatch between {a} and {b_}")
        fa = a.functor if isinstance(a, Compound) else a.predicate
        fb = b_.functor if isinstance(b_, Compound) else b_.predicate
        if fa != fb:
            degree = meet(degree, _symbol_degree(fa, fb, table))
        for x, y in zip(a.args, b_.args):
            degree = _unify(x, y, b, table, occurs_check, degree)
        return degree
    raise UnifyFailure(f"{a} and {b_} do not unify")


def unify(a, b, subst: Optional[Mapping] = None, *, occurs_check: bool = False) -> Substitution:
    """Most general unifier of ``a`` and ``b`` extending ``subst``.

    Raises :class:`UnifyFailure` when none exists.
    """
    bindings = dict(subst) if subst else {}
    _unify(a, b, bindings, EMPTY_TABLE, occurs_check, TOP)
    return Substitution(bindings)


def weak_unify(a, b, table: ProximityTable = EMPTY_TABLE, subst: Optional[Mapping] = None,
               *, occurs_check: bool = False) -> tuple[Substitution, Interval]:
    """Unify up to proximity; returns the unifier and the meet of symbol degrees.

    Exact symbol matches contribute ``[1,1]``, proximate pairs contribute
    their table degree and unrelated symbols or differing arities fail.
    """
    bindings = dict(subst) if subst else {}
    degree = _unify(a, b, bindings, table, occurs_check, TOP)
    return Substitution(bindings), degree

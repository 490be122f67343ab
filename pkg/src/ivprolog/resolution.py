"""Interval-valued SLD resolution: the reference operational semantics.

Search is depth-first with the leftmost selection rule.  For a selected atom
``p(...)`` the candidate clauses are those of ``p`` in source order followed
by those of each proximate predicate of equal arity, taken in
:meth:`Program.predicate_order`.  Each step meets the clause annotation and the
weak-unification degree into the running degree; a step whose degree is not
``>=`` the lambda-cut is pruned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from .answers import Answer, AnswerStream, canonical_bindings
from .errors import LambdaCutPruned, UnifyFailure
from .interval import BOTTOM, TOP, Interval, get_tnorm
from .parser import parse_goal
from .proximity import ProximityTable
from .terms import Atom, Clause, Compound, Goal, Program, Variable
from .unify import Substitution, _unify, resolve

__all__ = ["solve", "resolve_step", "rename_clause", "candidate_clauses", "ClauseIndex"]


def _rename_term(t, suffix: str):
    if isinstance(t, Variable):
        return Variable(t.name + suffix)
    if isinstance(t, Compound):
        return Compound(t.functor, tuple(_rename_term(a, suffix) for a in t.args))
    return t


def rename_clause(clause: Clause, k: int) -> Clause:
    """Standardise a clause apart by suffixing ``#k`` to every variable."""
    suffix = f"#{k}"

    def atom(a: Atom) -> Atom:
        return Atom(a.predicate, tuple(_rename_term(x, suffix) for x in a.args))

    return Clause(atom(clause.head), tuple(atom(b) for b in clause.body),
                  clause.annotation, clause.guards)


class ClauseIndex:
    """Candidate clauses per predicate key, proximity partners included."""

    def __init__(self, program: Program, table: ProximityTable):
        self.program = program
        self.table = table
        by_key: dict[tuple[str, int], list[Clause]] = {}
        for c in program.clauses:
            by_key.setdefault(c.head.key, []).append(c)
        self._by_key = by_key
        self._order = {key: i for i, key in enumerate(program.predicate_order())}
        self._cache: dict[tuple[str, int], list[Clause]] = {}

    def partner_keys(self, key: tuple[str, int]) -> list[tuple[str, int]]:
        name, arity = key
        keys = [(p, arity) for p in self.table.partners(name) if (p, arity) in self._by_key]
        keys.sort(key=self._order.__getitem__)
        return keys

    def __getitem__(self, key: tuple[str, int]) -> list[Clause]:
        cached = self._cache.get(key)
        if cached is None:
            cached = list(self._by_key.get(key, ()))
            for pk in self.partner_keys(key):
                cached.extend(self._by_key[pk])
            self._cache[key] = cached
        return cached


def candidate_clauses(program: Program, key: tuple[str, int],
                      table: Optional[ProximityTable] = None) -> list[Clause]:
    table = ProximityTable.from_program(program) if table is None else table
    return ClauseIndex(program, table)[key]


def resolve_step(goal, degree: Interval, clause: Clause, table: ProximityTable,
                 lambda_cut: Interval = BOTTOM, subst=None, *, occurs_check: bool = False,
                 tnorm: str = "min"):
    """Resolve the leftmost atom of ``goal`` with an already renamed ``clause``.

    Returns ``(remaining_atoms, substitution, degree)``.  Raises
    :class:`UnifyFailure` or :class:`LambdaCutPruned`.  Body guards are not
    checked here since they need the whole sub-derivation; :func:`solve`
    handles them.
    """
    atoms = goal.atoms if isinstance(goal, Goal) else tuple(goal)
    if not atoms:
        raise ValueError("cannot resolve the empty goal")
    t = get_tnorm(tnorm)
    bindings = dict(subst) if subst else {}
    u = _unify(atoms[0], clause.head, bindings, table, occurs_check, TOP)
    new_degree = t(t(degree, clause.annotation), u)
    if not new_degree >= lambda_cut:
        raise LambdaCutPruned(new_degree, lambda_cut)
    remaining = tuple(resolve(a, bindings) for a in (*clause.body, *atoms[1:]))
    return remaining, Substitution(bindings), new_degree


@dataclass(frozen=True, slots=True)
class _OpenGuard:
    pass


@dataclass(frozen=True, slots=True)
class _CloseGuard:
    guard: Interval


_OPEN = _OpenGuard()


def _body_items(clause: Clause) -> tuple:
    if not clause.has_guards:
        return clause.body
    items = []
    for atom, g in zip(clause.body, clause.guards):
        if g is None:
            items.append(atom)
        else:
            items.extend((_OPEN, atom, _CloseGuard(g)))
    return tuple(items)


def solve(program: Program, goal: Union[Goal, str], *, table: Optional[ProximityTable] = None,
          lambda_cut: Optional[Interval] = None, depth_limit: Optional[int] = None,
          occurs_check: bool = False, tnorm: str = "min") -> AnswerStream:
    """Lazily enumerate computed answers of ``goal`` against ``program``.

    ``lambda_cut`` defaults to the program's directive.  A guarded body atom
    succeeds only if the degree of its own sub-derivation dominates the guard;
    that sub-degree is then met into the running degree.
    """
    if isinstance(goal, str):
        goal = parse_goal(goal)
    table = ProximityTable.from_program(program) if table is None else table
    lam = program.lambda_cut if lambda_cut is None else lambda_cut
    index = ClauseIndex(program, table)
    stream = AnswerStream(iter(()))
    stream._gen = _search(index, goal, lam, depth_limit, occurs_check, get_tnorm(tnorm), stream)
    return stream


def _search(index: ClauseIndex, goal: Goal, lam: Interval, depth_limit, occurs_check,
            t, stream: AnswerStream) -> Iterator[Answer]:
    goal_vars = goal.variables()
    names = [v.name for v in goal_vars]
    table = index.table
    counter = itertools.count(1)
    # (goal items, bindings, degree, depth, saved outer degrees for open guards)
    stack = [(goal.atoms, {}, TOP, 0, ())]
    while stack:
        items, b, d, depth, gstack = stack.pop()
        failed = False
        while items and not isinstance(items[0], Atom):
            marker, items = items[0], items[1:]
            if marker is _OPEN:
                gstack = gstack + (d,)
                d = TOP
            else:
                outer, gstack = gstack[-1], gstack[:-1]
                if not d >= marker.guard:
                    failed = True
                    break
                d = t(outer, d)
                if not d >= lam:
                    failed = True
                    break
        if failed:
            continue
        if not items:
            terms = [resolve(v, b) for v in goal_vars]
            yield Answer(canonical_bindings(names, terms), d)
            continue
        if depth_limit is not None and depth >= depth_limit:
            stream.incomplete = True
            continue
        selected, rest = items[0], items[1:]
        children = []
        for clause in index[selected.key]:
            renamed = rename_clause(clause, next(counter))
            b2 = dict(b)
            try:
                u = _unify(selected, renamed.head, b2, table, occurs_check, TOP)
            except UnifyFailure:
                continue
            d2 = t(t(d, renamed.annotation), u)
            if not d2 >= lam:
                continue
            children.append((_body_items(renamed) + rest, b2, d2, depth + 1, gstack))
        stack.extend(reversed(children))

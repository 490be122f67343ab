"""Herbrand interpretations, lambda-models and the immediate-consequence operator.

The operator maps an interpretation ``I`` to the interpretation in which each
ground atom ``A`` gets the join, over all ground clause instances with head
``A``, of ``meet(annotation, inf I(B_i))``.  Iterating it from the bottom
interpretation reaches the least Herbrand model.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import EmptyModelSet, IterationCap, SpaceTooLarge, UnboundVariable
from .interval import BOTTOM, TOP, Interval, join, meet, meet_all
from .terms import Atom, Clause, Compound, Constant, Program, Variable, alphabet

__all__ = [
    "Interpretation", "HerbrandSpace", "herbrand", "valuate", "implication",
    "is_lambda_model_clause", "is_lambda_model", "intersect_models", "step",
    "least_model", "is_logical_consequence", "model_lines", "DEFAULT_CAP",
]

DEFAULT_CAP = 10**6


class Interpretation(Mapping):
    """Total map from ground atoms to intervals, ``[0,0]`` unless listed.

    Iteration, ``len`` and ``in`` refer to the support (atoms above bottom);
    indexing is total.
    """

    __slots__ = ("_d",)

    def __init__(self, degrees: Optional[Mapping] = None):
        self._d = {a: iv for a, iv in (degrees or {}).items() if iv != BOTTOM}

    def __getitem__(self, atom: Atom) -> Interval:
        return self._d.get(atom, BOTTOM)

    def __contains__(self, atom) -> bool:
        return atom in self._d

    def __iter__(self) -> Iterator[Atom]:
        return iter(self._d)

    def __len__(self) -> int:
        return len(self._d)

    def __eq__(self, other) -> bool:
        if isinstance(other, Interpretation):
            return self._d == other._d
        if isinstance(other, Mapping):
            return self == Interpretation(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._d.items()))

    def __le__(self, other: "Interpretation") -> bool:
        return all(iv <= other[a] for a, iv in self._d.items())

    def __ge__(self, other: "Interpretation") -> bool:
        return other <= self

    def meet(self, other: "Interpretation") -> "Interpretation":
        return Interpretation({a: meet(iv, other[a]) for a, iv in self._d.items()})

    def join(self, other: "Interpretation") -> "Interpretation":
        out = dict(self._d)
        for a, iv in other.items():
            out[a] = join(out.get(a, BOTTOM), iv)
        return Interpretation(out)

    def __repr__(self) -> str:
        body = ", ".join(f"{a}: {iv}" for a, iv in sorted(self._d.items(), key=lambda kv: str(kv[0])))
        return f"Interpretation({{{body}}})"


@dataclass(frozen=True)
class HerbrandSpace:
    universe: tuple
    base: tuple
    depth_bound: int
    truncated: bool

    def __post_init__(self):
        object.__setattr__(self, "_universe_set", frozenset(self.universe))
        object.__setattr__(self, "_base_set", frozenset(self.base))

    def in_universe(self, t) -> bool:
        return t in self._universe_set

    def in_base(self, atom: Atom) -> bool:
        return atom in self._base_set


def herbrand(program: Program, depth_bound: int = 3, *, cap: int = DEFAULT_CAP) -> HerbrandSpace:
    """Herbrand universe and base, truncated at ``depth_bound`` nestings of functions."""
    if depth_bound < 0:
        raise ValueError("depth_bound must be non-negative")
    alpha = alphabet(program)
    level = {Constant(c) for c in alpha.constants}
    funcs = sorted(alpha.functions)
    if funcs:
        for _ in range(depth_bound):
            new = set(level)
            for name, arity in funcs:
                if len(level) ** arity > cap:
                    raise SpaceTooLarge(f"Herbrand universe exceeds {cap} terms")
                for args in itertools.product(sorted(level, key=str), repeat=arity):
                    new.add(Compound(name, args))
            if len(new) > cap:
                raise SpaceTooLarge(f"Herbrand universe exceeds {cap} terms")
            if new == level:
                break
            level = new
    universe = tuple(sorted(level, key=lambda t: (_depth(t), str(t))))
    size = sum(len(universe) ** arity for _, arity in alpha.predicates)
    if size > cap:
        raise SpaceTooLarge(f"Herbrand base has {size} atoms, cap is {cap}")
    base = []
    for name, arity in sorted(alpha.predicates):
        for args in itertools.product(universe, repeat=arity):
            base.append(Atom(name, args))
    return HerbrandSpace(universe, tuple(base), depth_bound, bool(funcs))


def _depth(t) -> int:
    if isinstance(t, Compound):
        return 1 + max(_depth(a) for a in t.args)
    return 0


def _subst(t, env: Mapping):
    if isinstance(t, Variable):
        try:
            return env[t]
        except KeyError:
            raise UnboundVariable(f"variable {t} has no assignment") from None
    if isinstance(t, Compound):
        return Compound(t.functor, tuple(_subst(a, env) for a in t.args))
    return t


def _ground(atom: Atom, env: Mapping) -> Atom:
    return Atom(atom.predicate, tuple(_subst(a, env) for a in atom.args))


def _normalise_assignment(assignment: Mapping) -> dict:
    return {(Variable(k) if isinstance(k, str) else k): v for k, v in assignment.items()}


def implication(head: Interval, body: Interval) -> Interval:
    """Residuum of componentwise min on L([0,1]).

    Each component is 1 where the head dominates the body and the head
    component otherwise; the lower bound is then capped by the upper one so
    the result stays an interval.  ``implication(h, b) >= a`` holds exactly
    when ``meet(a, b) <= h``.
    """
    r_lo = 1.0 if head.lower >= body.lower else head.lower
    r_hi = 1.0 if head.upper >= body.upper else head.upper
    return Interval(min(r_lo, r_hi), r_hi)


def _order_implication(head: Interval, body: Interval) -> Interval:
    return TOP if head >= body else head


def valuate(interp: Mapping, clause: Clause, assignment: Mapping, *,
            residuated: bool = True) -> Interval:
    """Truth value of a clause instance under ``interp``.

    Facts take the value of their head.  Rules use :func:`implication`;
    with ``residuated=False`` the rule value is ``[1,1]`` when the head
    dominates the body and the head value otherwise.
    """
    env = _normalise_assignment(assignment)
    head = interp[_ground(clause.head, env)]
    if clause.is_fact:
        return head
    body = meet_all(interp[_ground(b, env)] for b in clause.body)
    if residuated:
        return implication(head, body)
    return _order_implication(head, body)


def _universe_of(space_or_terms) -> Sequence:
    if isinstance(space_or_terms, HerbrandSpace):
        return space_or_terms.universe
    return tuple(space_or_terms)


def _assignments(variables: list, universe: Sequence, cap: int) -> Iterator[dict]:
    if len(universe) ** len(variables) > cap:
        raise SpaceTooLarge(f"{len(universe)}^{len(variables)} groundings exceed cap {cap}")
    for values in itertools.product(universe, repeat=len(variables)):
        yield dict(zip(variables, values))


def is_lambda_model_clause(interp: Mapping, clause: Clause, lam: Interval, universe, *,
                           cap: int = DEFAULT_CAP, residuated: bool = True) -> bool:
    """Every ground instance valuates to at least the annotation, which is at least ``lam``."""
    if not clause.annotation >= lam:
        return False
    for env in _assignments(clause.variables(), _universe_of(universe), cap):
        if not valuate(interp, clause, env, residuated=residuated) >= clause.annotation:
            return False
    return True


def is_lambda_model(interp: Mapping, program: Program, lam: Interval,
                    space: Optional[HerbrandSpace] = None, *, residuated: bool = True) -> bool:
    space = herbrand(program) if space is None else space
    return all(is_lambda_model_clause(interp, c, lam, space, residuated=residuated)
               for c in program.clauses)


def intersect_models(models: Iterable[Mapping]) -> Interpretation:
    models = [m if isinstance(m, Interpretation) else Interpretation(m) for m in models]
    if not models:
        raise EmptyModelSet("cannot intersect an empty set of models")
    out = models[0]
    for m in models[1:]:
        out = out.meet(m)
    return out


def _match(pattern, ground, env: dict) -> bool:
    if isinstance(pattern, Variable):
        bound = env.get(pattern)
        if bound is None:
            env[pattern] = ground
            return True
        return bound == ground
    if isinstance(pattern, Constant):
        return pattern == ground
    if not isinstance(ground, Compound) or pattern.functor != ground.functor \
            or len(pattern.args) != len(ground.args):
        return False
    return all(_match(p, g, env) for p, g in zip(pattern.args, ground.args))


def _body_matches(body: tuple, by_key: dict, env: dict, acc: Interval) -> Iterator[tuple[dict, Interval]]:
    # Only atoms in the support can contribute: a bottom body atom makes the
    # whole instance bottom, and bottom is the identity of join.
    if not body:
        yield env, acc
        return
    first, rest = body[0], body[1:]
    for atom, degree in by_key.get(first.key, ()):
        env2 = dict(env)
        if all(_match(p, g, env2) for p, g in zip(first.args, atom.args)):
            yield from _body_matches(rest, by_key, env2, meet(acc, degree))


def step(interp: Mapping, program: Program, space: Optional[HerbrandSpace] = None, *,
         cap: int = DEFAULT_CAP) -> Interpretation:
    """One application of the immediate-consequence operator."""
    space = herbrand(program) if space is None else space
    by_key: dict[tuple[str, int], list] = {}
    for atom, degree in interp.items():
        if degree != BOTTOM:
            by_key.setdefault(atom.key, []).append((atom, degree))
    out: dict[Atom, Interval] = {}
    for clause in program.clauses:
        head_vars = clause.variables()
        for env, body_degree in _body_matches(clause.body, by_key, {}, TOP):
            value = meet(clause.annotation, body_degree)
            if value == BOTTOM:
                continue
            free = [v for v in head_vars if v not in env]
            for extra in _assignments(free, space.universe, cap):
                full = {**env, **extra}
                head = _ground(clause.head, full)
                if not space.in_base(head):
                    continue  # beyond the truncation depth
                out[head] = join(out.get(head, BOTTOM), value)
    return Interpretation(out)


def least_model(program: Program, space: Optional[HerbrandSpace] = None, *,
                max_iterations: int = 10_000, cap: int = DEFAULT_CAP) -> tuple[Interpretation, int]:
    """Iterate :func:`step` from bottom; return the fixpoint and the ``n`` with O↑n = O↑(n+1)."""
    space = herbrand(program, cap=cap) if space is None else space
    current = Interpretation()
    for n in range(max_iterations + 1):
        nxt = step(current, program, space, cap=cap)
        if nxt == current:
            return current, n
        current = nxt
    raise IterationCap(f"no fixpoint within {max_iterations} iterations")


def is_logical_consequence(program: Program, atom: Atom, level: Interval,
                           space: Optional[HerbrandSpace] = None) -> bool:
    model, _ = least_model(program, space)
    return model[atom] >= level


def model_lines(interp: Mapping, space: Optional[HerbrandSpace] = None, *, full: bool = False) -> list[str]:
    """``atom -> [l,u]`` lines sorted by atom text; bottom atoms only with ``full``."""
    if full and space is not None:
        atoms = space.base
    else:
        atoms = [a for a in interp if interp[a] != BOTTOM]
    return sorted(f"{a} -> {interp[a]}" for a in atoms)

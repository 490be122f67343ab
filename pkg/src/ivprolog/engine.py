"""One entry point for querying a program with any of the three engines."""

from __future__ import annotations

import itertools
from typing import Iterator, Optional, Union

from .answers import Answer, AnswerStream, canonical_bindings
from .fixpoint import HerbrandSpace, Interpretation, herbrand, least_model
from .interval import BOTTOM, Interval, meet_all
from .parser import parse_goal, parse_program
from .resolution import solve
from .swam import compile_program, compile_query, run
from .terms import Atom, Compound, Goal, Program, Variable

__all__ = ["ENGINES", "query", "model_answers"]

ENGINES = ("wam", "sld", "fixpoint")


def _subst(t, env):
    if isinstance(t, Variable):
        return env[t]
    if isinstance(t, Compound):
        return Compound(t.functor, tuple(_subst(a, env) for a in t.args))
    return t


def model_answers(model: Interpretation, space: HerbrandSpace, goal: Goal,
                  lambda_cut: Interval = BOTTOM) -> Iterator[Answer]:
    """Answers read off a model: every grounding above bottom that passes the cut."""
    variables = goal.variables()
    names = [v.name for v in variables]
    for values in itertools.product(space.universe, repeat=len(variables)):
        env = dict(zip(variables, values))
        atoms = [Atom(a.predicate, tuple(_subst(x, env) for x in a.args)) for a in goal.atoms]
        degree = meet_all(model[a] for a in atoms)
        if degree != BOTTOM and degree >= lambda_cut:
            yield Answer(canonical_bindings(names, values), degree)


def query(program: Union[Program, str], goal: Union[Goal, str], *, engine: str = "wam",
          lambda_cut: Optional[Interval] = None, depth_limit: Optional[int] = None,
          depth_bound: int = 3) -> AnswerStream:
    """Answer ``goal`` with the chosen engine; ``lambda_cut`` overrides the program directive."""
    if isinstance(program, str):
        program = parse_program(program)
    if isinstance(goal, str):
        goal = parse_goal(goal)
    lam = program.lambda_cut if lambda_cut is None else lambda_cut
    if engine == "sld":
        return solve(program, goal, lambda_cut=lam, depth_limit=depth_limit)
    if engine == "wam":
        return run(compile_query(goal, compile_program(program)), lam, depth_limit=depth_limit)
    if engine == "fixpoint":
        space = herbrand(program, depth_bound)
        model, _ = least_model(program, space)
        return AnswerStream(model_answers(model, space, goal, lam))
    raise ValueError(f"unknown engine {engine!r}; choose from {', '.join(ENGINES)}")

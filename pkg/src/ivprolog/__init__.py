"""Interval-valued fuzzy logic programming.

The package provides the interval lattice, a parser for annotated logic
programs, the least-model (fixpoint) semantics, a reference SLD resolver
with proximity-based weak unification, and a compiler plus abstract
machine that runs the same programs.

>>> from ivprolog import parse_program, query
>>> prog = parse_program("p(X) :- q(X).\\nq(a)[0.8,0.9].")
>>> [str(a) for a in query(prog, "p(X)")]
['X=a with [0.8,0.9]']
"""

from .answers import Answer, AnswerStream
from .engine import ENGINES, query
from .errors import (
    CompileError, DepthLimitExceeded, EmptyModelSet, InvalidInterval, IterationCap, IVPError,
    LambdaCutPruned, LexError, MachineFault, NegativeExponent, OccursViolation, ParseError,
    SpaceTooLarge, UnboundVariable, UnifyFailure,
)
from .fixpoint import Interpretation, herbrand, is_lambda_model, least_model, step, valuate
from .interval import BOTTOM, TOP, Interval, complement, join, meet, parse_interval
from .parser import parse_atom, parse_goal, parse_program, parse_term
from .proximity import ProximityTable
from .resolution import resolve_step, solve
from .terms import Atom, Clause, Compound, Constant, Goal, Program, ProximityEquation, Variable, pretty
from .unify import Substitution, unify, weak_unify

__version__ = "0.1.0"

__all__ = [
    "Answer", "AnswerStream", "ENGINES", "query",
    "CompileError", "DepthLimitExceeded", "EmptyModelSet", "InvalidInterval", "IterationCap",
    "IVPError", "LambdaCutPruned", "LexError", "MachineFault", "NegativeExponent",
    "OccursViolation", "ParseError", "SpaceTooLarge", "UnboundVariable", "UnifyFailure",
    "Interpretation", "herbrand", "is_lambda_model", "least_model", "step", "valuate",
    "BOTTOM", "TOP", "Interval", "complement", "join", "meet", "parse_interval",
    "parse_atom", "parse_goal", "parse_program", "parse_term", "ProximityTable",
    "resolve_step", "solve", "Atom", "Clause", "Compound", "Constant", "Goal", "Program",
    "ProximityEquation", "Variable", "pretty", "Substitution", "unify", "weak_unify",
]

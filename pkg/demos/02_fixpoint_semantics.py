"""The declarative side: Herbrand interpretations and the least model.

Run with ``python demos/02_fixpoint_semantics.py``.
"""

from pathlib import Path

from ivprolog.fixpoint import (
    Interpretation, herbrand, is_lambda_model, least_model, model_lines, step, valuate,
)
from ivprolog.interval import BOTTOM, Interval
from ivprolog.parser import parse_atom, parse_program

source = (Path(__file__).parent / "programs" / "chain.ipl").read_text()
program = parse_program(source)
print(program)

# The Herbrand base is every predicate applied to every ground term.
space = herbrand(program)
print("universe:", [str(t) for t in space.universe])
print("base:    ", [str(a) for a in space.base])

# Iterate the immediate-consequence operator from the bottom interpretation.
current = Interpretation()
for n in range(4):
    print(f"step {n}:", {str(a): str(d) for a, d in current.items()})
    current = step(current, program, space)

model, n = least_model(program, space)
print(f"fixpoint after {n} productive steps")
print("\n".join(model_lines(model)))

# Clause valuation: a rule holds to the degree the head keeps up with the body.
rule = program.clauses[0]
weaker = Interpretation({parse_atom("q(a)"): Interval(0.8, 0.9), parse_atom("p(a)"): Interval(0.5, 0.6)})
print("rule under the model: ", valuate(model, rule, {"X": parse_atom("q(a)").args[0]}))
print("rule with a weak head:", valuate(weaker, rule, {"X": parse_atom("q(a)").args[0]}))

# An interpretation is a model exactly when one step cannot raise it.
print(is_lambda_model(model, program, BOTTOM), step(model, program, space) <= model)
print(is_lambda_model(weaker, program, BOTTOM), step(weaker, program, space) <= weaker)

# Models at a level: every annotation and every clause value must reach it.
print(is_lambda_model(model, parse_program("q(a)[0.8,0.9].\nq(b)[0.7,0.8]."), Interval(0.7, 0.8)))

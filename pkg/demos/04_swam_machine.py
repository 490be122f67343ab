"""Compiling programs for the abstract machine.

Run with ``python demos/04_swam_machine.py``.
"""

from pathlib import Path

from ivprolog.interval import Interval
from ivprolog.parser import parse_goal, parse_program
from ivprolog.swam import Machine, assemble, compile, compile_query, disassemble, run

programs = Path(__file__).parent / "programs"
good_player = parse_program((programs / "good_player.ipl").read_text())

# One code block per predicate, plus a query block appended on demand.
image = compile_query(parse_goal("good_player(X)"), compile(good_player))
print(disassemble(image))

# The listing is a faithful textual form of the image.
print("round trip:", assemble(disassemble(image)) == image)

# Execution threads a degree register through the clauses it enters.
machine = Machine(image, trace=True)
for answer in machine.answers():
    print(answer)
for kind, where, degree in machine.events:
    print(f"  {kind:8} {where:3} D={degree}")

# The same lambda-cut semantics as the resolver.
print(run(image, Interval(0.5, 0.5)).all())

# Multi-clause predicates chain their alternatives with choice points.
chain = parse_program((programs / "chain.ipl").read_text())
image = compile_query(parse_goal("p(X)"), compile(chain))
print(disassemble(image))
machine = Machine(image)
print([str(a) for a in machine.answers()])
print("back to baseline:", machine.sizes() == machine.baseline)

# Compound terms use get_structure / put_structure.
pairs = parse_program("swap(pair(X,Y), pair(Y,X)).")
image = compile_query(parse_goal("swap(pair(a,b), Q)"), compile(pairs))
print(disassemble(image))
print([str(a) for a in run(image)])

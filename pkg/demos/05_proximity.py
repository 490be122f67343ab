"""Proximity equations and weak unification.

Run with ``python demos/05_proximity.py``.
"""

from pathlib import Path

from ivprolog import query
from ivprolog.parser import parse_atom, parse_program
from ivprolog.proximity import ProximityTable
from ivprolog.unify import weak_unify

prefs = parse_program((Path(__file__).parent / "programs" / "preferences.ipl").read_text())
table = ProximityTable.from_program(prefs)
for eq in table.equations():
    print(eq)

# Distinct symbols unify to the degree the table gives them.
subst, degree = weak_unify(parse_atom("passion(mary,X)"), parse_atom("loves(mary,mountaineering)"), table)
print(subst, degree)

# Proximity is not transitive: only listed pairs are close.
print(table.degree("sport", "fun"), table.degree("fun", "variation"))

# Both engines consult the table for predicates, functors and constants.
for goal in ["plays(peter,hoops)", "passion(mary,X)", "loves(Who,What)"]:
    for engine in ("sld", "wam"):
        print(f"{engine}: {goal:22}", [str(a) for a in query(prefs, goal, engine=engine)])

# With an empty table weak unification is ordinary unification.
print(weak_unify(parse_atom("p(X,b)"), parse_atom("p(a,Y)")))

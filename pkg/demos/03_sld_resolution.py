"""Goal-directed evaluation with SLD resolution.

Run with ``python demos/03_sld_resolution.py``.
"""

from pathlib import Path

from ivprolog.interval import Interval
from ivprolog.parser import parse_program
from ivprolog.resolution import solve

programs = Path(__file__).parent / "programs"
good_player = parse_program((programs / "good_player.ipl").read_text())

# Each resolution step meets the clause annotation into the running degree.
for answer in solve(good_player, "good_player(X)"):
    print(answer)

# A lambda-cut prunes every branch whose degree falls below the threshold.
print(solve(good_player, "good_player(X)", lambda_cut=Interval(0.5, 0.5)).all())
print(solve(good_player, "good_player(X)", lambda_cut=Interval(0.2, 0.4)).all())

# Answers come lazily, one per request.
chain = parse_program((programs / "chain.ipl").read_text())
stream = solve(chain, "p(X)")
print(stream.next_answer())
print(stream.next_answer())
print(stream.next_answer(), stream.exhausted)

# Infinite search spaces can be explored up to a depth limit.
nat = parse_program("nat(z).\nnat(s(X)) :- nat(X) [0.9,1.0].")
stream = solve(nat, "nat(N)", depth_limit=4)
for answer in stream:
    print(answer)
print("incomplete:", stream.incomplete)

# An interval after a body atom is a guard on that atom's own derivation.
journal = parse_program((programs / "suitable_journal.ipl").read_text())
print(journal.clauses[0])
print("guarded:", solve(journal, "suitable_journal(X)").all())
plain = parse_program(
    "suitable_journal(X) :- impact_factor(X), immediacy_index(X), cited_half_life(X), best_position(X).\n"
    + "\n".join(str(c) for c in journal.clauses[1:]))
print("unguarded:", [str(a) for a in solve(plain, "suitable_journal(X)")])

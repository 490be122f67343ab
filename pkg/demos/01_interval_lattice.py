"""Truth degrees as intervals.

Run with ``python demos/01_interval_lattice.py``.
"""

from ivprolog.interval import (
    BOTTOM, TOP, Interval, add, clamp, complement, join, leq, meet, mul, power, sub,
)

# A degree is a closed subinterval of [0,1]: a lower and an upper bound.
coordination = Interval(0.2, 0.4)
speed = Interval(0.9, 1.0)
print("coordination", coordination, "speed", speed)

# Bad bounds are rejected at construction time.
try:
    Interval(0.5, 0.4)
except ValueError as exc:
    print("rejected:", exc)

# The order is componentwise, so some pairs are incomparable.
print(leq(Interval(0.2, 0.4), Interval(0.5, 0.5)))   # True
print(leq(Interval(0.2, 0.6), Interval(0.5, 0.5)))   # False
print(leq(Interval(0.5, 0.5), Interval(0.2, 0.6)))   # False as well

# meet and join are the componentwise min and max (the default t-norm and t-conorm).
print(meet(coordination, speed), join(coordination, speed))
print(coordination & speed == meet(coordination, speed))

# Bottom and top are the units.
print(meet(TOP, coordination) == coordination, join(BOTTOM, coordination) == coordination)

# The complement swaps and reflects the bounds; De Morgan's laws hold with it.
a, b = Interval(0.1, 0.7), Interval(0.3, 0.5)
print(complement(a))
print(complement(join(a, b)) == meet(complement(a), complement(b)))

# Interval arithmetic returns raw bound pairs, which may leave [0,1].
raw = add(Interval(0.6, 0.7), Interval(0.5, 0.9))
print("raw sum", raw, "clamped", clamp(raw))
print(sub(Interval(0.5, 0.7), Interval(0.1, 0.2)))
print(mul(Interval(0.2, 0.4), Interval(0.5, 1.0)))
print(power(Interval(0.4, 0.9), 2))

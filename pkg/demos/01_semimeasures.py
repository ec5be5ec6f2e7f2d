"""Semimeasures and the built-in model families.

A semimeasure nu assigns each finite string a value in [0, 1] with
nu(empty) <= 1 and sum_a nu(xa) <= nu(x); proper measures make both
tight.  Everything evaluates to exact rationals.
"""

from fractions import Fraction as F

from mdl_lab.measures import (
    DeterministicModel,
    IidModel,
    LeakySemimeasure,
    OscillatingMartingaleMeasure,
    check_semimeasure,
    sample_sequence,
)

fair = IidModel((F(1, 2), F(1, 2)))
print("fair coin on '110':", fair.evaluate("110"))

ones = DeterministicModel(preperiod=(), period=(1,))
print("point mass on 1^inf at '10':", ones.evaluate("10"))
print("its next-symbol law after '11':", [ones.conditional(a, "11") for a in (0, 1)])

# A strict semimeasure: one quarter of the mass leaks away per step.
leaky = LeakySemimeasure(fair, leak=F(1, 4))
report = check_semimeasure(leaky, depth=5)
print("leaky wrapper passes the structural check:", report.passed)
print("  ... with strict inequalities:", not report.all_equalities)

# The oscillating-martingale measure: nu(x) = f(x) 2^-len(x) where f is
# an exact dyadic martingale crossing 3/4 at every alive node.
martingale = OscillatingMartingaleMeasure()
print("f at the root:", martingale.f_value(""))
print("f after '0':", martingale.f_value("0"), " nu('0'):", martingale.evaluate("0"))
print("'000' is the first dead node:", martingale.is_dead("000"))
masses = martingale.dead_mass_by_depth(12)
print("dead mass by depth:", [str(m) for m in masses[:8]], "...")
print("never exceeds 1/4:", all(m <= F(1, 4) for m in masses))

# Proper measures can be sampled exactly, reproducibly by seed.
print("20 fair-coin symbols, seed 7:", "".join(map(str, sample_sequence(fair, 20, 7))))

"""Two ways stabilization fails, and one sufficient condition.

Factorizable + uniformly stochastic classes stabilize almost surely.
The oscillating factorizable pair breaks uniform stochasticity (its
per-step probabilities drain to zero); the martingale measure breaks
factorizability (its conditionals depend on the history).  Both keep the
maximizer flipping forever on a heavy set of paths.
"""

from fractions import Fraction as F

from mdl_lab.model_class import bernoulli_class, example4_class, example5_class
from mdl_lab.stabilization import (
    map_trace,
    monte_carlo_stabilization,
    profile_class,
)

# Positive case: four Bernoulli models, all uniformly stochastic.
iid_cls = bernoulli_class([F(1, 8), F(3, 8), F(5, 8), F(7, 8)], true_index=1)
profile = profile_class(iid_cls)
print("iid class profile:", profile)
summary = monte_carlo_stabilization(iid_cls, horizon=400, samples=60, window=100, seed=1)
print("stabilized fraction:", summary.fraction_stabilized)

# The factorizable pair: ratio oscillates; with weights (3/7, 4/7) the
# decision threshold falls inside the oscillation band.
e4 = example4_class(F(3, 7), F(4, 7))
print("\nfactorizable pair profile:", profile_class(e4))
trace = map_trace(e4, (1,) * 40)
print("maximizer changes along 1^40:", trace.change_times())

# The martingale class: alive paths cross the decision line every step.
e5 = example5_class()
print("\nmartingale class profile:", profile_class(e5))
summary5 = monte_carlo_stabilization(e5, horizon=400, samples=60, window=100, seed=2)
print("non-stabilized fraction:", 1 - summary5.fraction_stabilized)
print("(the asymptotic value is at least 3/4; this is a finite-horizon proxy)")

"""The two-part (MAP) estimator over a weighted class.

Maximizing w_nu * nu(x) is the same as minimizing the two-part code
length -lb(w_nu) - lb(nu(x)): model bits plus data-given-model bits.
"""

from fractions import Fraction as F

from mdl_lab.model_class import (
    bernoulli_class,
    complexity,
    example1_class,
    example3_class,
    map_estimator,
    round_robin,
    two_part_value,
    two_part_value_at,
)

cls = bernoulli_class([F(1, 4), F(1, 2), F(3, 4)])
res = map_estimator(cls, "1100")
print("Bernoulli {1/4, 1/2, 3/4} on '1100' selects theta index:", res.index)
print("two-part value w * nu:", res.value)
print("description length of each model (bits):")
for i in range(3):
    print(f"  theta={cls.models[i].theta[1]}: {complexity(cls, i):.3f}")

# Deterministic class: models die one per step along 1^t, the estimator
# value stays 1/5 while the identity of the maximizer keeps moving.
e1 = example1_class(5)
print("rho(1^t) for t = 0..4:", [str(two_part_value(e1, (1,) * t)) for t in range(5)])

# Choosing at y but evaluating at x can only lose:
print("rho^y(x) <= rho(x):", two_part_value_at(e1, "1", "10") <= two_part_value(e1, "10"))

# Exact ties are first-class citizens: the tie construction puts weight
# 2/3 on the uniform measure and 1/3 on a leading-one measure.
e3 = example3_class()
tie = map_estimator(e3, "1")
print("tie set on '1':", tie.tie_set, "value:", tie.value)
rotating = round_robin()
print(
    "round-robin picks by string length:",
    [map_estimator(e3, (1,) * t, rotating).index for t in range(1, 7)],
)

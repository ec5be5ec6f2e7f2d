"""From predictive beliefs to actions, with regret budgets.

A predictor acting Bayes-optimally on its belief pays, beyond the
informed predictor's loss L, at most 2 sqrt(2 c L / w) + 2 c / w under
any bounded loss, where c is the predictor's square/Hellinger constant.
The scalar inequality behind the reduction is checked on a grid.
"""

from fractions import Fraction as F

from mdl_lab.decisions import (
    bayes_optimal_action,
    check_regret_bound,
    decision_trace,
    special_functions,
    table_loss,
    unit_square_inequality_scan,
    zero_one_loss,
)
from mdl_lab.model_class import example1_class

loss01 = zero_one_loss()
print("0/1 loss, belief 1/3 -> action", bayes_optimal_action(F(1, 3), loss01))
print("0/1 loss, belief 1/2 -> action", bayes_optimal_action(F(1, 2), loss01), "(tie rule)")

asym = table_loss({(0, 0): 0, (0, 1): 1, (1, 0): F(1, 4), (1, 1): 0})
print("asymmetric loss, belief 0.3 -> action", bayes_optimal_action(F(3, 10), asym))

print("\nspecial functions at (mu, phi) = (0.3, 0.4):", special_functions(F(3, 10), F(2, 5)))
print("unit-square max violation (m=401):", unit_square_inequality_scan(401))

cls = example1_class(5)
trace = decision_trace(cls, "rho_norm", loss01, 6)
print("\ndeterministic death class, 0/1 loss:")
print("  predictor loss:", trace.cumulative_phi(), " informed loss:", trace.cumulative_mu())
print("  regret:", trace.regret())
print("  per-prefix instantaneous bound held:", trace.instantaneous_ok)
print("  cumulative bound held:", trace.cumulative_bound_ok())
print("  final budget:", check_regret_bound(cls, "rho_norm", loss01, 6).render())

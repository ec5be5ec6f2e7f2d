"""Four prediction rules and their exact convergence budgets.

The mixture's cumulative squared error is bounded by ln(1/w_mu); the MDL
variants pay exponentially more: {2, 8, 21, 32} / w_mu for normalized
dynamic, dynamic, static, normalized static.  The deterministic death
class makes the normalized dynamic predictor sit at 1/2 for N-1 steps,
so its ledger is exactly (N-1)/2 - the budgets are not vacuous.
"""

from mdl_lab.metrics import check_bounds, cumulative_distances
from mdl_lab.model_class import example1_class
from mdl_lab.predictors import normalize, predict_bayes, predict_dynamic, predict_static

cls = example1_class(5)

print("predictions after seeing '1':")
print("  mixture:           ", predict_bayes(cls, "1").values)
print("  dynamic (raw):     ", predict_dynamic(cls, "1").values)
print("  dynamic normalized:", normalize(predict_dynamic(cls, "1")).values)
print("  static:            ", predict_static(cls, "1").values)

ledger = cumulative_distances(cls, "rho_norm", 8)
print("\ncumulative square error of normalized dynamic:", ledger.cumulative("square"))
print("per-step contributions:", [str(s) for s in ledger.per_step("square")])

print("\nevery budget, verified with exact slack:")
for report in check_bounds(cls, 8):
    print(" ", report.render())

"""Inputs and real-valued outcomes: classification and regression.

Classification conditions each model on an input; for a fixed input
sequence the whole sequence machinery applies verbatim.  Regression
moves to uniformly bounded densities, where squared error misleads (a
mirrored two-level density drives it to infinity at constant relative
entropy) and the continuous Hellinger distance takes over.
"""

from fractions import Fraction as F

from mdl_lab.conditional import (
    ConditionalClass,
    GaussianModel,
    LabelNoiseModel,
    classify_dynamic,
    classify_static,
    conditional_to_sequence_class,
    footnote_density_demo,
    model_hellinger,
    monte_carlo_regression_hellinger,
    regression_map,
)
from mdl_lab.metrics import check_bounds

channels = ConditionalClass(
    [LabelNoiseModel(F(1, 4)), LabelNoiseModel(F(3, 4))],
    [F(1, 2), F(1, 2)],
    true_index=1,
)
print("after u=(0,0), x=(0,0), next input 0:")
print("  static :", classify_static(channels, [0, 0], [0, 0], 0).values)
print("  dynamic:", classify_dynamic(channels, [0, 0], [0, 0], 0).values)

inputs = [0, 1, 1, 0, 1]
seq = conditional_to_sequence_class(channels, inputs)
rows = [r for r in check_bounds(seq, 5) if r.bound_name.startswith("summary_square")]
print("\nsquare budgets for the frozen input sequence", inputs)
for r in rows:
    print(" ", r.render())

gaussians = [GaussianModel(0.0), GaussianModel(1.0)]
print("\ndensity-MAP on x = (0.1, -0.2):", "mean", regression_map(gaussians, [F(1, 2), F(1, 2)], [0, 0], [0.1, -0.2]))
print("Hellinger between the two unit Gaussians:", model_hellinger(*gaussians))

summary = monte_carlo_regression_hellinger(
    gaussians, [F(1, 2), F(1, 2)], 0, [0] * 25, samples=80, seed=3
)
print("static selection Hellinger ledger:", f"{summary.mean:.3f} +- {summary.stderr:.3f}")
print("   against the 21/w budget:", summary.bound)

print("\nmirrored two-level densities (square blows up, KL stays put):")
for n in (3, 9, 27):
    square, kl = footnote_density_demo(n)
    print(f"  n={n:2d}: square={square:.4f} (= 2n/9), kl={kl:.6f} (= ln2/3)")

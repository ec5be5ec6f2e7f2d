"""Why hybrid selection is fragile: exact ties plus rotation.

On the tie class, dynamic and static predictions are exactly 1/2 no
matter how ties break.  The hybrid quotient drops the weights, so a
rotating tie-break makes its on-sequence values bounce between 1/4 and 1
forever, while a largest-weight rule freezes the choice and tames it.
"""

from mdl_lab.model_class import LARGEST_WEIGHT, example3_class, round_robin
from mdl_lab.predictors import normalize, predict_dynamic, predict_hybrid
from mdl_lab.stabilization import hybrid_value_series, map_trace, stabilization_verdict

cls = example3_class()
ones = (1,) * 16

rotating = round_robin()
print("hybrid on-sequence values, rotating ties:")
print("  ", [str(v) for v in hybrid_value_series(cls, ones, rotating)])

print("dynamic normalized stays put:", normalize(predict_dynamic(cls, "1111", rotating)).values)
print("hybrid with largest-weight ties:", predict_hybrid(cls, "1111", LARGEST_WEIGHT).values)

trace_rot = map_trace(cls, ones, rotating)
trace_lw = map_trace(cls, ones, LARGEST_WEIGHT)
print("rotating maximizer trace:   ", trace_rot.indices)
print("largest-weight trace:       ", trace_lw.indices)
print("rotating verdict:", stabilization_verdict(trace_rot, window=8))
print("largest-weight verdict:", stabilization_verdict(trace_lw, window=8))

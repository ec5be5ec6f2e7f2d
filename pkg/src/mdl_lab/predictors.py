"""The four prediction rules over a weighted class, plus normalization.

Given a class C with weights w and history x, the next-symbol values are

* Bayes mixture:   xi(a|x)      = xi(xa) / xi(x),  xi = sum_nu w_nu nu
* dynamic MDL:     rho(a|x)     = rho(xa) / rho(x), rho = max_nu w_nu nu
* static MDL:      rho_st(a|x)  = nu^x(xa) / nu^x(x) for the single
                   maximizer nu^x at the history
* hybrid MDL:      nu^{xa}(xa) / nu^x(x) -- re-select per continuation
                   but drop the weights from the quotient

Dynamic re-selects the maximizer for the history and all k continuations
(k+1 MAP searches per step); static needs one.  Both report their search
counts through :class:`~mdl_lab.model_class.EvalStats` so efficiency
claims can be measured rather than asserted.

Bayes, dynamic and static entries always lie in [0, 1].  Hybrid entries
can exceed 1 when re-selection jumps to a model with a larger bare value;
that instability is the point of studying it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .enclosure import FracInterval
from .errors import AllZeroError, ZeroHistoryError
from .measures import Word
from .model_class import (
    LARGEST_WEIGHT,
    EvalStats,
    TieBreak,
    WeightedClass,
    map_estimator,
)
from .values import EXACT, LogFloat, Value, check_mode

# Predictor kinds.
TRUE = "true"
XI = "xi"
RHO = "rho"
RHO_NORM = "rho_norm"
STATIC = "static"
STATIC_NORM = "static_norm"
HYBRID = "hybrid"

ALL_KINDS = (TRUE, XI, RHO, RHO_NORM, STATIC, STATIC_NORM, HYBRID)

_FLOAT_SUM_TOL = 1e-9


@dataclass(frozen=True)
class PredictiveDistribution:
    """Per-symbol next-step values; a sub-probability unless normalized."""

    values: Tuple[Value, ...]
    normalized: bool

    def entry(self, a: int) -> Value:
        return self.values[a]

    def sum_value(self) -> Value:
        total = self.values[0]
        for v in self.values[1:]:
            total = total + v
        return total

    def as_floats(self) -> Tuple[float, ...]:
        return tuple(float(v) for v in self.values)

    def belief(self, a: int = 1) -> float:
        """Scalar belief in symbol ``a``; decision layer input."""
        return float(self.values[a])


def _check_sums_to_one(values, mode: str) -> bool:
    if mode == EXACT:
        return sum(values) == 1
    total = 0.0
    for v in values:
        total += float(v)
    return abs(total - 1.0) <= _FLOAT_SUM_TOL


def _distribution(values, mode: str) -> PredictiveDistribution:
    return PredictiveDistribution(tuple(values), _check_sums_to_one(values, mode))


def bayes_mixture(cls: WeightedClass, x, mode: str = EXACT) -> Value:
    """xi(x) = sum_nu w_nu nu(x) over the materialized models.

    For truncated infinite classes this is the lower end of the interval
    returned by :func:`bayes_mixture_bounds`.
    """
    check_mode(mode)
    word = cls.word(x)
    if mode == EXACT:
        return sum(
            (w * m.evaluate_exact(word) for m, w in zip(cls.models, cls.weights)),
            Fraction(0),
        )
    total = LogFloat.zero()
    for m, w in zip(cls.models, cls.weights):
        total = total + LogFloat.from_fraction(w) * m.log_evaluate(word)
    return total


def bayes_mixture_bounds(cls: WeightedClass, x) -> FracInterval:
    """Exact interval containing xi(x) when a weight tail is unmaterialized."""
    lower = bayes_mixture(cls, x, EXACT)
    tail = cls.tail_bound or Fraction(0)
    return FracInterval(lower, lower + tail)


def predict_bayes(cls: WeightedClass, x, mode: str = EXACT) -> PredictiveDistribution:
    """Entries xi(a|x) = xi(xa) / xi(x)."""
    check_mode(mode)
    word = cls.word(x)
    base = bayes_mixture(cls, word, mode)
    if _is_zero(base):
        raise ZeroHistoryError(f"xi(x) = 0 at history {word}")
    values = [bayes_mixture(cls, word + (a,), mode) / base for a in cls.alphabet.symbols()]
    return _distribution(values, mode)


def predict_dynamic(
    cls: WeightedClass,
    x,
    tie_break: TieBreak = LARGEST_WEIGHT,
    mode: str = EXACT,
    stats: Optional[EvalStats] = None,
) -> PredictiveDistribution:
    """Entries rho(a|x) = rho(xa) / rho(x); k+1 MAP searches."""
    check_mode(mode)
    word = cls.word(x)
    parent = map_estimator(cls, word, tie_break, mode)
    if stats is not None:
        stats.add_search(cls)
    if _is_zero(parent.value):
        raise ZeroHistoryError(f"rho(x) = 0 at history {word}")
    values = []
    for a in cls.alphabet.symbols():
        child = map_estimator(cls, word + (a,), tie_break, mode)
        if stats is not None:
            stats.add_search(cls)
        values.append(child.value / parent.value)
    return _distribution(values, mode)


def predict_static(
    cls: WeightedClass,
    x,
    tie_break: TieBreak = LARGEST_WEIGHT,
    mode: str = EXACT,
    stats: Optional[EvalStats] = None,
) -> PredictiveDistribution:
    """Entries nu^x(xa) / nu^x(x) for the single maximizer at the history."""
    check_mode(mode)
    word = cls.word(x)
    chosen = map_estimator(cls, word, tie_break, mode)
    if stats is not None:
        stats.add_search(cls)
    if _is_zero(chosen.value):
        raise ZeroHistoryError(f"rho(x) = 0 at history {word}")
    model = cls.models[chosen.index]
    base = model.evaluate(word, mode)
    values = [model.evaluate(word + (a,), mode) / base for a in cls.alphabet.symbols()]
    return _distribution(values, mode)


def predict_hybrid(
    cls: WeightedClass,
    x,
    tie_break: TieBreak = LARGEST_WEIGHT,
    mode: str = EXACT,
    stats: Optional[EvalStats] = None,
) -> PredictiveDistribution:
    """Entries nu^{xa}(xa) / nu^x(x): re-select per child, drop the weights."""
    check_mode(mode)
    word = cls.word(x)
    at_x = map_estimator(cls, word, tie_break, mode)
    if stats is not None:
        stats.add_search(cls)
    base = cls.models[at_x.index].evaluate(word, mode)
    if _is_zero(base):
        raise ZeroHistoryError(f"nu^x(x) = 0 at history {word}")
    values = []
    for a in cls.alphabet.symbols():
        child = map_estimator(cls, word + (a,), tie_break, mode)
        if stats is not None:
            stats.add_search(cls)
        numerator = cls.models[child.index].evaluate(word + (a,), mode)
        values.append(numerator / base)
    return _distribution(values, mode)


def predict_true(cls: WeightedClass, x, mode: str = EXACT) -> PredictiveDistribution:
    """Conditionals of the designated true model (baseline, not a learner)."""
    word = cls.word(x)
    mu = cls.true_model
    values = [mu.conditional(a, word, mode) for a in cls.alphabet.symbols()]
    return _distribution(values, mode)


def normalize(dist: PredictiveDistribution) -> PredictiveDistribution:
    """Scale the entries to sum to one (Solomonoff normalization)."""
    if dist.normalized:
        return dist
    total = dist.sum_value()
    if _is_zero(total):
        raise AllZeroError("cannot normalize an all-zero prediction")
    return PredictiveDistribution(
        tuple(v / total for v in dist.values), normalized=True
    )


def normalizer_product(
    cls: WeightedClass,
    x,
    tie_break: Optional[TieBreak] = None,
    mode: str = EXACT,
) -> Value:
    """Running product N_rho(x) of per-step prediction sums.

    N_rho(x) = prod_{t=1..len(x)+1} [sum_a rho(x_<t a)] / rho(x_<t);
    the value is 1 for every x when the class holds a single proper
    measure, and tie-breaking never enters because only rho values do.
    """
    check_mode(mode)
    del tie_break  # the product involves only rho values
    word = cls.word(x)
    if mode == EXACT:
        product = Fraction(1)
    else:
        product = LogFloat.one()
    for t in range(len(word) + 1):
        prefix = word[:t]
        parent = _rho(cls, prefix, mode)
        if _is_zero(parent):
            raise ZeroHistoryError(f"rho = 0 along the prefix {prefix}")
        total = _rho(cls, prefix + (0,), mode)
        for a in range(1, cls.alphabet.size):
            total = total + _rho(cls, prefix + (a,), mode)
        product = product * (total / parent)
    return product


def _rho(cls: WeightedClass, word: Word, mode: str) -> Value:
    return map_estimator(cls, word, LARGEST_WEIGHT, mode).value


def _is_zero(v: Value) -> bool:
    if isinstance(v, LogFloat):
        return v.is_zero
    return v == 0


@dataclass
class Predictor:
    """A prediction rule bound to a class, tie-break policy and mode."""

    kind: str
    cls: WeightedClass
    tie_break: TieBreak = LARGEST_WEIGHT
    mode: str = EXACT
    stats: EvalStats = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.kind not in ALL_KINDS:
            raise ValueError(f"unknown predictor kind {self.kind!r}")
        if self.stats is None:
            self.stats = EvalStats()

    def predict(self, x) -> PredictiveDistribution:
        k, c, tb, m = self.kind, self.cls, self.tie_break, self.mode
        if k == TRUE:
            return predict_true(c, x, m)
        if k == XI:
            return predict_bayes(c, x, m)
        if k == RHO:
            return predict_dynamic(c, x, tb, m, self.stats)
        if k == RHO_NORM:
            return normalize(predict_dynamic(c, x, tb, m, self.stats))
        if k == STATIC:
            return predict_static(c, x, tb, m, self.stats)
        if k == STATIC_NORM:
            return normalize(predict_static(c, x, tb, m, self.stats))
        return predict_hybrid(c, x, tb, m, self.stats)


def make_predictor(
    kind: str,
    cls: WeightedClass,
    tie_break: TieBreak = LARGEST_WEIGHT,
    mode: str = EXACT,
) -> Predictor:
    return Predictor(kind, cls, tie_break, mode)

"""MAP-choice traces along sequences, and when the choice settles down.

For factorizable, uniformly stochastic classes the maximizing element
stabilizes almost surely; the oscillating pairs built in ``measures``
show both ways this can fail (vanishing per-step probabilities, or
history dependence).  Almost-sure statements are not falsifiable at a
finite horizon, so the verdicts here use an explicit finite proxy: a
trace "stabilized" when no change of choice occurs within the final
observation window.  Window and horizon always travel with the verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .errors import ZeroHistoryError
from .measures import derived_rng, sample_path
from .model_class import LARGEST_WEIGHT, TieBreak, WeightedClass
from .metrics import ordered_parallel_map


@dataclass
class MapTrace:
    """Chosen model index after 0..T observed symbols, with tie flags."""

    indices: List[int]
    tie_flags: List[bool]

    @property
    def horizon(self) -> int:
        return len(self.indices) - 1

    def change_times(self) -> List[int]:
        return [
            t
            for t in range(1, len(self.indices))
            if self.indices[t] != self.indices[t - 1]
        ]


@dataclass
class StabilizationVerdict:
    """Finite-horizon stabilization proxy for one trace.

    ``stabilized_by`` is the last change time when no change falls in the
    final ``window`` steps, else None.  A constant trace stabilized at 0.
    """

    stabilized_by: Optional[int]
    change_count: int
    final_index: int
    horizon: int
    window: int

    @property
    def stabilized(self) -> bool:
        return self.stabilized_by is not None


def map_trace(
    cls: WeightedClass,
    x,
    tie_break: TieBreak = LARGEST_WEIGHT,
) -> MapTrace:
    """Exact maximizer index at every prefix of x (incremental cursors)."""
    word = cls.word(x)
    cursors = [m.cursor() for m in cls.models]
    weights = cls.weights
    indices: List[int] = []
    ties: List[bool] = []
    for t in range(len(word) + 1):
        if t > 0:
            cursors = [c.advance(word[t - 1]) for c in cursors]
        scored = [w * c.value for w, c in zip(weights, cursors)]
        best = max(scored)
        if best == 0:
            raise ZeroHistoryError(f"rho = 0 after {t} symbols")
        tied = tuple(i for i, s in enumerate(scored) if s == best)
        indices.append(tie_break.choose(tied, weights, t))
        ties.append(len(tied) > 1)
    return MapTrace(indices, ties)


def stabilization_verdict(trace: MapTrace, window: int) -> StabilizationVerdict:
    if window > trace.horizon:
        raise ValueError("window cannot exceed the trace horizon")
    changes = trace.change_times()
    last = changes[-1] if changes else 0
    stabilized_by = last if last <= trace.horizon - window else None
    return StabilizationVerdict(
        stabilized_by=stabilized_by,
        change_count=len(changes),
        final_index=trace.indices[-1],
        horizon=trace.horizon,
        window=window,
    )


@dataclass
class StabilizationSummary:
    fraction_stabilized: Fraction
    verdicts: List[StabilizationVerdict]
    horizon: int
    window: int
    samples: int
    seed: int


def monte_carlo_stabilization(
    cls: WeightedClass,
    horizon: int,
    samples: int,
    window: int,
    seed: int,
    tie_break: TieBreak = LARGEST_WEIGHT,
    workers: int = 1,
) -> StabilizationSummary:
    """Fraction of true-model paths whose MAP trace stabilizes.

    Per-sample RNGs are derived from (seed, index), so results are
    byte-identical for any worker count.
    """
    mu = cls.true_model

    def one(i: int) -> StabilizationVerdict:
        path = sample_path(mu, horizon, derived_rng(seed, i))
        return stabilization_verdict(map_trace(cls, path, tie_break), window)

    verdicts = ordered_parallel_map(one, range(samples), workers)
    stabilized = sum(1 for v in verdicts if v.stabilized)
    return StabilizationSummary(
        fraction_stabilized=Fraction(stabilized, samples),
        verdicts=verdicts,
        horizon=horizon,
        window=window,
        samples=samples,
        seed=seed,
    )


@dataclass
class ClassProfile:
    """Structural hypothesis check for the stabilization sufficient condition."""

    all_factorizable: bool
    all_measures: bool
    uniform_stochasticity_delta: Optional[Fraction]
    checked_depth: int


def profile_class(cls: WeightedClass, depth: int = 16) -> ClassProfile:
    """Classify the class per the factorizable + uniformly-stochastic test.

    delta is the least declared positive lower bound on nonzero per-step
    probabilities, present only when every model is factorizable and
    declares one; the declared bound is cross-checked against every
    per-step distribution up to ``depth``.  Models with vanishing
    per-step probabilities (no positive bound) leave delta absent.
    """
    all_fact = all(m.is_factorizable for m in cls.models)
    all_meas = all(m.is_proper_measure for m in cls.models)
    delta: Optional[Fraction] = None
    if all_fact:
        declared = [m.step_prob_infimum for m in cls.models]
        if all(d is not None and d > 0 for d in declared):
            delta = min(declared)
            for m in cls.models:
                for i in range(1, depth + 1):
                    dist = m.step_distribution(i)
                    bad = [p for p in dist if 0 < p < delta]
                    if bad:
                        raise AssertionError(
                            f"{m!r} declares infimum {m.step_prob_infimum} but "
                            f"step {i} has probability {bad[0]}"
                        )
    return ClassProfile(
        all_factorizable=all_fact,
        all_measures=all_meas,
        uniform_stochasticity_delta=delta,
        checked_depth=depth,
    )


def hybrid_value_series(
    cls: WeightedClass,
    x,
    tie_break: TieBreak,
) -> List[Fraction]:
    """On-sequence hybrid quotients nu^{x_1:t}(x_1:t) / nu^{x_<t}(x_<t).

    The series whose oscillation separates hybrid from static/dynamic
    under tie rotation.
    """
    word = cls.word(x)
    trace = map_trace(cls, word, tie_break)
    values = []
    for t in range(1, len(word) + 1):
        num_model = cls.models[trace.indices[t]]
        den_model = cls.models[trace.indices[t - 1]]
        num = num_model.evaluate_exact(word[:t])
        den = den_model.evaluate_exact(word[: t - 1])
        values.append(num / den)
    return values


def alternation_count(series: Sequence[Fraction]) -> int:
    """Number of strict changes between successive values."""
    return sum(1 for a, b in zip(series, series[1:]) if a != b)


def increment_sign_changes(series: Sequence[Fraction]) -> int:
    """Strict sign alternations of successive increments of a series."""
    signs = []
    for a, b in zip(series, series[1:]):
        d = b - a
        if d != 0:
            signs.append(1 if d > 0 else -1)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)

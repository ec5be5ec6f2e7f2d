"""Input-conditioned classification and bounded-density regression.

Classification adds an input u_t to each observation: models are proper
conditional measures nu(x|u) over a finite outcome alphabet, selected by
the weighted joint likelihood of the observed (input, outcome) history.
For any fixed input sequence this reduces to the plain sequence problem
with per-step distributions nu(.|u_t), which is how the square-error
bounds {2, 8, 21} * 1/w_mu are verified here.

Regression replaces the finite alphabet with real outcomes and uniformly
bounded densities; squared error is the wrong gauge there (a sliver of
density can blow it up while the relative entropy stays put, see
``footnote_density_demo``), so the continuous Hellinger distance
h(f, g) = integral (sqrt f - sqrt g)^2 takes over.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from scipy import integrate

from .errors import DegenerateLikelihoodError, ZeroHistoryError
from .measures import Alphabet, BINARY, FactorizableModel, derived_rng
from .model_class import LARGEST_WEIGHT, TieBreak, WeightedClass
from .predictors import PredictiveDistribution

SIGMA_MIN = 1e-3


# ----------------------------------------------------------------------
# Classification
# ----------------------------------------------------------------------


class ConditionalModel:
    """Proper conditional measure nu(x|u) over a finite outcome alphabet."""

    alphabet: Alphabet
    input_space: str = "arbitrary"

    def prob(self, x: int, u) -> Fraction:
        raise NotImplementedError

    def distribution(self, u) -> Tuple[Fraction, ...]:
        dist = tuple(self.prob(x, u) for x in self.alphabet.symbols())
        if sum(dist) != 1 or any(p < 0 for p in dist):
            raise ValueError(f"{self!r} is not a conditional measure at u={u!r}")
        return dist


class LabelNoiseModel(ConditionalModel):
    """Binary channel: the outcome equals the input with probability p."""

    input_space = "binary"

    def __init__(self, p):
        self.alphabet = BINARY
        self.p = Fraction(p)
        if not 0 <= self.p <= 1:
            raise ValueError("channel fidelity must lie in [0, 1]")

    def prob(self, x: int, u) -> Fraction:
        return self.p if x == int(u) else 1 - self.p

    def __repr__(self) -> str:
        return f"label_noise(p={self.p})"


class InputAgnosticModel(ConditionalModel):
    """Ignores the input: nu(x|u) = theta_x.  Reduction witness."""

    def __init__(self, theta: Sequence):
        self.theta = tuple(Fraction(t) for t in theta)
        self.alphabet = Alphabet(len(self.theta))

    def prob(self, x: int, u) -> Fraction:
        return self.theta[x]

    def __repr__(self) -> str:
        return f"input_agnostic({','.join(str(t) for t in self.theta)})"


@dataclass
class ConditionalClass:
    models: Sequence[ConditionalModel]
    weights: Sequence[Fraction]
    true_index: Optional[int] = None

    def __post_init__(self):
        self.weights = tuple(Fraction(w) for w in self.weights)
        if len(self.models) != len(self.weights):
            raise ValueError("models and weights must have equal length")
        if any(w <= 0 for w in self.weights) or sum(self.weights) > 1:
            raise ValueError("weights must be positive and sum to at most 1")

    @property
    def alphabet(self) -> Alphabet:
        return self.models[0].alphabet


def joint_likelihoods(cc: ConditionalClass, inputs, outputs) -> List[Fraction]:
    """Per-model joint likelihood of the aligned (input, outcome) history."""
    if len(inputs) != len(outputs):
        raise ValueError("inputs and outputs must be aligned")
    values = []
    for m in cc.models:
        v = Fraction(1)
        for u, x in zip(inputs, outputs):
            v *= m.prob(x, u)
            if v == 0:
                break
        values.append(v)
    return values


def _map_index(cc: ConditionalClass, joints, tie_break: TieBreak, step: int) -> int:
    scored = [w * v for w, v in zip(cc.weights, joints)]
    best = max(scored)
    if best == 0:
        raise ZeroHistoryError("all joint likelihoods vanished")
    tied = tuple(i for i, s in enumerate(scored) if s == best)
    return tie_break.choose(tied, cc.weights, step)


def classify_static(
    cc: ConditionalClass,
    inputs,
    outputs,
    next_input,
    tie_break: TieBreak = LARGEST_WEIGHT,
) -> PredictiveDistribution:
    """Select once on the history, predict with nu^history(.|u_t)."""
    joints = joint_likelihoods(cc, inputs, outputs)
    chosen = _map_index(cc, joints, tie_break, len(outputs))
    values = cc.models[chosen].distribution(next_input)
    return PredictiveDistribution(tuple(values), normalized=True)


def classify_dynamic(
    cc: ConditionalClass,
    inputs,
    outputs,
    next_input,
    tie_break: TieBreak = LARGEST_WEIGHT,
) -> PredictiveDistribution:
    """Re-select per candidate outcome: rho(x_<t a|u_1:t) / rho(x_<t|u_<t)."""
    joints = joint_likelihoods(cc, inputs, outputs)
    parent = max(w * v for w, v in zip(cc.weights, joints))
    if parent == 0:
        raise ZeroHistoryError("all joint likelihoods vanished")
    values = []
    for a in cc.alphabet.symbols():
        child = max(
            w * v * m.prob(a, next_input)
            for w, v, m in zip(cc.weights, joints, cc.models)
        )
        values.append(child / parent)
    total = sum(values)
    return PredictiveDistribution(tuple(values), normalized=total == 1)


def conditional_to_sequence_class(cc: ConditionalClass, inputs) -> WeightedClass:
    """Freeze an input sequence: each model becomes a factorizable measure.

    Step t of the sequence model is nu(.|u_t); beyond the given inputs the
    last one repeats.  The reduction is exact, so every sequence-level
    bound check applies verbatim to classification with fixed inputs.
    """
    inputs = list(inputs)
    if not inputs:
        raise ValueError("need at least one input")

    def make(model: ConditionalModel) -> FactorizableModel:
        dists = [model.distribution(u) for u in inputs]

        def rule(i: int, _d=dists):
            return _d[min(i, len(_d)) - 1]

        nonzero = [p for d in dists for p in d if p > 0]
        return FactorizableModel(
            cc.alphabet, rule, infimum=min(nonzero), name=f"seq({model!r})"
        )

    return WeightedClass(
        [make(m) for m in cc.models], cc.weights, true_index=cc.true_index
    )


# ----------------------------------------------------------------------
# Regression: uniformly bounded densities on the line
# ----------------------------------------------------------------------


class BoundedDensityModel:
    """Conditional density on the reals, uniformly bounded by ``bound``."""

    bound: float
    input_space: str = "arbitrary"

    def density(self, x: float, u) -> float:
        raise NotImplementedError

    def log_density(self, x: float, u) -> float:
        d = self.density(x, u)
        return -math.inf if d == 0 else math.log(d)

    def support(self, u) -> Tuple[float, float]:
        """Interval carrying all but < 1e-8 of the mass (quadrature aid)."""
        raise NotImplementedError

    def breakpoints(self, u) -> Tuple[float, ...]:
        return ()


class GaussianModel(BoundedDensityModel):
    """Gaussian with affine input-dependent mean and fixed scale.

    sigma is floored at SIGMA_MIN so the uniform density bound
    1/(sigma sqrt(2 pi)) exists.
    """

    def __init__(self, intercept: float, slope: float = 0.0, sigma: float = 1.0):
        if sigma < SIGMA_MIN:
            raise ValueError(f"sigma must be at least {SIGMA_MIN}")
        self.intercept = float(intercept)
        self.slope = float(slope)
        self.sigma = float(sigma)
        self.bound = 1.0 / (self.sigma * math.sqrt(2.0 * math.pi))

    def mean(self, u) -> float:
        return self.intercept + self.slope * (0.0 if u is None else float(u))

    def density(self, x: float, u) -> float:
        z = (x - self.mean(u)) / self.sigma
        return self.bound * math.exp(-0.5 * z * z)

    def log_density(self, x: float, u) -> float:
        z = (x - self.mean(u)) / self.sigma
        return math.log(self.bound) - 0.5 * z * z

    def support(self, u) -> Tuple[float, float]:
        m = self.mean(u)
        return (m - 8.0 * self.sigma, m + 8.0 * self.sigma)

    def sample(self, u, rng: random.Random) -> float:
        return rng.gauss(self.mean(u), self.sigma)

    def __repr__(self) -> str:
        return f"gauss(m={self.intercept}+{self.slope}u, sigma={self.sigma})"


class PiecewiseConstantDensity(BoundedDensityModel):
    """Density constant on consecutive intervals; input-independent.

    ``breaks`` are the n+1 interval endpoints, ``values`` the n levels.
    Total mass must be exactly 1 (checked on construction).
    """

    def __init__(self, breaks: Sequence[float], values: Sequence[float]):
        if len(breaks) != len(values) + 1:
            raise ValueError("need one more breakpoint than level")
        self.breaks = tuple(float(b) for b in breaks)
        self.values = tuple(float(v) for v in values)
        if any(b >= c for b, c in zip(self.breaks, self.breaks[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if any(v < 0 for v in self.values):
            raise ValueError("density levels must be nonnegative")
        mass = sum(
            v * (c - b) for v, b, c in zip(self.values, self.breaks, self.breaks[1:])
        )
        if abs(mass - 1.0) > 1e-9:
            raise ValueError(f"total mass {mass} != 1")
        self.bound = max(self.values)

    def density(self, x: float, u=None) -> float:
        if x < self.breaks[0] or x >= self.breaks[-1]:
            return 0.0
        for level, lo, hi in zip(self.values, self.breaks, self.breaks[1:]):
            if lo <= x < hi:
                return level
        return 0.0

    def support(self, u=None) -> Tuple[float, float]:
        return (self.breaks[0], self.breaks[-1])

    def breakpoints(self, u=None) -> Tuple[float, ...]:
        return self.breaks

    def __repr__(self) -> str:
        return f"piecewise({self.breaks})"


def regression_map(
    models: Sequence[BoundedDensityModel],
    weights: Sequence[Fraction],
    inputs,
    xs: Sequence[float],
) -> int:
    """argmax of w * product of densities, computed in the log domain.

    Densities routinely exceed 1, so there is no exact-rational path
    here; ties (exact float ties) fall back to largest weight, then
    lowest index.
    """
    weights = [Fraction(w) for w in weights]
    if len(inputs) != len(xs):
        raise ValueError("inputs and observations must be aligned")
    scores = []
    for m, w in zip(models, weights):
        s = math.log(float(w))
        for u, x in zip(inputs, xs):
            s += m.log_density(x, u)
            if s == -math.inf:
                break
        scores.append(s)
    best = max(scores)
    if best == -math.inf:
        raise DegenerateLikelihoodError("all joint densities are zero")
    tied = [i for i, s in enumerate(scores) if s == best]
    return max(tied, key=lambda i: (weights[i], -i))


# ----------------------------------------------------------------------
# Continuous Hellinger distance
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class QuadratureSpec:
    """Domain and tolerances for density integrals.

    The domain must cover all but <= 1e-8 of both masses; interior
    breakpoints of piecewise densities keep the quadrature honest.
    """

    lo: float
    hi: float
    breakpoints: Tuple[float, ...] = ()
    tol: float = 1e-10


def quadrature_for(f: BoundedDensityModel, g: BoundedDensityModel, u=None) -> QuadratureSpec:
    flo, fhi = f.support(u)
    glo, ghi = g.support(u)
    inner = tuple(
        sorted(
            p
            for p in set(f.breakpoints(u)) | set(g.breakpoints(u))
            if min(flo, glo) < p < max(fhi, ghi)
        )
    )
    return QuadratureSpec(min(flo, glo), max(fhi, ghi), inner)


def hellinger_density(
    f: Callable[[float], float],
    g: Callable[[float], float],
    spec: QuadratureSpec,
) -> float:
    """integral of (sqrt f - sqrt g)^2 over the requested domain."""

    def integrand(x: float) -> float:
        return (math.sqrt(f(x)) - math.sqrt(g(x))) ** 2

    points = [p for p in spec.breakpoints if spec.lo < p < spec.hi]
    value, err = integrate.quad(
        integrand,
        spec.lo,
        spec.hi,
        points=points or None,
        epsabs=spec.tol,
        epsrel=spec.tol,
        limit=200,
    )
    if not math.isfinite(value) or err > 1e-6:
        raise RuntimeError(f"quadrature did not converge (err={err})")
    return value


def gaussian_hellinger(m1: float, s1: float, m2: float, s2: float) -> float:
    """Closed form 2 - 2 * BC for two Gaussians (Bhattacharyya coefficient)."""
    bc = math.sqrt(2.0 * s1 * s2 / (s1 * s1 + s2 * s2)) * math.exp(
        -((m1 - m2) ** 2) / (4.0 * (s1 * s1 + s2 * s2))
    )
    return 2.0 - 2.0 * bc


def model_hellinger(f: BoundedDensityModel, g: BoundedDensityModel, u=None) -> float:
    """Hellinger distance between two density models at one input.

    Gaussian pairs take the closed form and cross-check it against
    quadrature to 1e-6; everything else integrates numerically.
    """
    numeric = hellinger_density(
        lambda x: f.density(x, u), lambda x: g.density(x, u), quadrature_for(f, g, u)
    )
    if isinstance(f, GaussianModel) and isinstance(g, GaussianModel):
        closed = gaussian_hellinger(f.mean(u), f.sigma, g.mean(u), g.sigma)
        if abs(closed - numeric) > 1e-6:
            raise RuntimeError(
                f"closed-form {closed} and quadrature {numeric} disagree"
            )
        return closed
    return numeric


def footnote_density_demo(n: int) -> Tuple[float, float]:
    """(square distance, KL) of the mirrored two-level density pair.

    f places density n/3 on [-1/n, 0] and 2n/3 on (0, 1/n]; its mirror
    swaps the levels.  The square distance grows as 2n/9 while the
    relative entropy stays at ln(2)/3: squared error is useless as a
    density gauge, which is why regression uses Hellinger distance.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    f = PiecewiseConstantDensity([-1.0 / n, 0.0, 1.0 / n], [n / 3.0, 2.0 * n / 3.0])
    g = PiecewiseConstantDensity([-1.0 / n, 0.0, 1.0 / n], [2.0 * n / 3.0, n / 3.0])
    spec = quadrature_for(f, g)
    points = [p for p in spec.breakpoints if spec.lo < p < spec.hi]

    def sq(x: float) -> float:
        return (f.density(x) - g.density(x)) ** 2

    def kl(x: float) -> float:
        fx, gx = f.density(x), g.density(x)
        if fx == 0.0:
            return 0.0
        return fx * math.log(fx / gx)

    square, _ = integrate.quad(sq, spec.lo, spec.hi, points=points, epsabs=1e-12)
    relent, _ = integrate.quad(kl, spec.lo, spec.hi, points=points, epsabs=1e-12)
    return square, relent


# ----------------------------------------------------------------------
# Monte-Carlo regression ledger
# ----------------------------------------------------------------------


@dataclass
class RegressionHellingerSummary:
    mean: float
    stderr: float
    bound: float
    samples: int
    horizon: int

    @property
    def within_bound(self) -> bool:
        return self.mean <= self.bound + 3.0 * self.stderr


def monte_carlo_regression_hellinger(
    models: Sequence[GaussianModel],
    weights: Sequence[Fraction],
    true_index: int,
    inputs,
    samples: int,
    seed: int,
) -> RegressionHellingerSummary:
    """Estimate the cumulative Hellinger ledger of static selection.

    Draws data from the true Gaussian along the input sequence, reselects
    the maximizer at every step, and accumulates the closed-form
    Hellinger distance between the true and selected densities; the
    static budget is 21 / w_mu.
    """
    weights = [Fraction(w) for w in weights]
    inputs = list(inputs)
    true = models[true_index]
    log_w = [math.log(float(w)) for w in weights]
    totals = []
    for i in range(samples):
        rng = derived_rng(seed, i)
        scores = list(log_w)
        total = 0.0
        for u in inputs:
            chosen = max(range(len(models)), key=lambda j: (scores[j], weights[j], -j))
            total += gaussian_hellinger(
                true.mean(u), true.sigma, models[chosen].mean(u), models[chosen].sigma
            )
            x = true.sample(u, rng)
            for j, m in enumerate(models):
                scores[j] += m.log_density(x, u)
        totals.append(total)
    n = samples
    mean = sum(totals) / n
    var = sum((t - mean) ** 2 for t in totals) / (n - 1) if n > 1 else 0.0
    return RegressionHellingerSummary(
        mean=mean,
        stderr=math.sqrt(var / n),
        bound=21.0 / float(weights[true_index]),
        samples=n,
        horizon=len(inputs),
    )

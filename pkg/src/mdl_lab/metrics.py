"""Distances between true and predicted distributions, and bound checks.

The per-step distances between the true conditionals and a prediction are

* square:    s_t = sum_a (mu(a|x) - phi(a|x))^2
* Hellinger: h_t = sum_a (sqrt(mu(a|x)) - sqrt(phi(a|x)))^2
* KL:        d_t = sum_a mu(a|x) ln(mu(a|x)/phi(a|x)),  extended to +inf
* absolute:  a_t = sum_a |mu(a|x) - phi(a|x)|

applied verbatim to raw prediction entries (no implicit normalization;
the unnormalized variants are bounded as-is).  Cumulative ledgers take
expectations over the true measure by exact enumeration of the sequence
tree, pruning zero-probability subtrees, or by seeded Monte Carlo.

In exact mode, square and absolute sums are exact rationals while
Hellinger and KL sums are certified rational enclosures, so every bound
comparison below is an exact statement, never a float one.

The bound table verified by :func:`check_bounds` against the inverse
prior weight W = 1/w_mu of the true model:

    mixture squared error         <= ln W
    normalized dynamic square/KL  <= W + ln W
    |ln sum_a rho(a|x)| summed    <= 2W     (dynamic, part i)
    |1 - sum_a rho(a|x)| summed   <= 2W     (dynamic, part ii)
    |1 - sum_a rho^x(a|x)| summed <= W      (static)
    square and Hellinger sums     <= {2, 8, 21, 32} * W
        for normalized dynamic / dynamic / static / normalized static.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Union

from .enclosure import (
    ZERO_INTERVAL,
    FracInterval,
    hellinger_term,
    kl_term,
    ln_interval,
)
from .errors import AllZeroError, TooLargeError, ZeroHistoryError
from .measures import Word, derived_rng
from .model_class import LARGEST_WEIGHT, TieBreak, WeightedClass
from .predictors import (
    ALL_KINDS,
    HYBRID,
    RHO,
    RHO_NORM,
    STATIC,
    STATIC_NORM,
    TRUE,
    XI,
)
from .values import EXACT, FLOAT, check_mode

DEFAULT_NODE_GUARD = 20_000_000

COROLLARY_CONSTANTS = {RHO_NORM: 2, RHO: 8, STATIC: 21, STATIC_NORM: 32}

METRICS = ("square", "hellinger", "kl", "absolute")

ExtendedInterval = Union[FracInterval, float]  # float only for math.inf


@dataclass(frozen=True)
class StepDistances:
    """Instantaneous distances of one prediction from the true conditionals."""

    square: Union[Fraction, float]
    hellinger: ExtendedInterval
    kl: ExtendedInterval
    absolute: Union[Fraction, float]


def step_distances(true_probs, predicted, mode: str = EXACT) -> StepDistances:
    """Distances between a true distribution and raw prediction entries."""
    check_mode(mode)
    if mode == EXACT:
        mu = [Fraction(p) for p in true_probs]
        phi = [Fraction(q) for q in predicted]
        return StepDistances(
            square=_sq_exact(mu, phi),
            hellinger=_hell_exact(mu, phi),
            kl=_kl_exact(mu, phi),
            absolute=_abs_exact(mu, phi),
        )
    mu_f = [float(p) for p in true_probs]
    phi_f = [float(q) for q in predicted]
    return StepDistances(
        square=sum((p - q) ** 2 for p, q in zip(mu_f, phi_f)),
        hellinger=sum((math.sqrt(p) - math.sqrt(q)) ** 2 for p, q in zip(mu_f, phi_f)),
        kl=_kl_float(mu_f, phi_f),
        absolute=sum(abs(p - q) for p, q in zip(mu_f, phi_f)),
    )


def _sq_exact(mu, phi) -> Fraction:
    return sum(((p - q) ** 2 for p, q in zip(mu, phi)), Fraction(0))


def _abs_exact(mu, phi) -> Fraction:
    return sum((abs(p - q) for p, q in zip(mu, phi)), Fraction(0))


def _hell_exact(mu, phi) -> FracInterval:
    total = ZERO_INTERVAL
    for p, q in zip(mu, phi):
        total = total + hellinger_term(p, q)
    return total


def _kl_exact(mu, phi) -> ExtendedInterval:
    total = ZERO_INTERVAL
    for p, q in zip(mu, phi):
        term = kl_term(p, q)
        if term == math.inf:
            return math.inf
        total = total + term
    return total


def _kl_float(mu, phi) -> float:
    total = 0.0
    for p, q in zip(mu, phi):
        if p == 0:
            continue
        if q == 0:
            return math.inf
        total += p * math.log(p / q)
    return total


# ----------------------------------------------------------------------
# Fused prediction node: every predictor's values at one prefix
# ----------------------------------------------------------------------


class PredictionNode:
    """All model and predictor values at one history prefix.

    Built from per-model cursors, so each node costs O(|C| * k) exact
    operations regardless of depth.  Everything here is exact; float-mode
    consumers convert at the edges.
    """

    __slots__ = (
        "cls",
        "tie_break",
        "prefix",
        "weight",
        "cursors",
        "values",
        "child_values",
        "_cache",
    )

    def __init__(self, cls: WeightedClass, tie_break: TieBreak, prefix: Word, cursors, weight: Fraction):
        self.cls = cls
        self.tie_break = tie_break
        self.prefix = prefix
        self.cursors = cursors
        self.weight = weight  # mu(prefix)
        self.values = [c.value for c in cursors]
        k = cls.alphabet.size
        self.child_values = [[c.child_value(a) for c in cursors] for a in range(k)]
        self._cache: dict = {}

    # -- raw aggregates --------------------------------------------------

    @property
    def t(self) -> int:
        return len(self.prefix)

    def rho(self) -> Fraction:
        out = self._cache.get("rho")
        if out is None:
            w = self.cls.weights
            out = max(w[i] * v for i, v in enumerate(self.values))
            self._cache["rho"] = out
        return out

    def rho_child(self, a: int) -> Fraction:
        key = ("rho_child", a)
        out = self._cache.get(key)
        if out is None:
            w = self.cls.weights
            out = max(w[i] * v for i, v in enumerate(self.child_values[a]))
            self._cache[key] = out
        return out

    def xi(self) -> Fraction:
        out = self._cache.get("xi")
        if out is None:
            out = sum(
                (w * v for w, v in zip(self.cls.weights, self.values)), Fraction(0)
            )
            self._cache["xi"] = out
        return out

    def xi_child(self, a: int) -> Fraction:
        key = ("xi_child", a)
        out = self._cache.get(key)
        if out is None:
            out = sum(
                (w * v for w, v in zip(self.cls.weights, self.child_values[a])),
                Fraction(0),
            )
            self._cache[key] = out
        return out

    def map_index(self) -> int:
        """Maximizer index at the prefix, under the node's tie-break."""
        out = self._cache.get("map_index")
        if out is None:
            out = self._argmax(self.values, len(self.prefix))
            self._cache["map_index"] = out
        return out

    def map_child_index(self, a: int) -> int:
        key = ("map_child", a)
        out = self._cache.get(key)
        if out is None:
            out = self._argmax(self.child_values[a], len(self.prefix) + 1)
            self._cache[key] = out
        return out

    def _argmax(self, values, x_len: int) -> int:
        w = self.cls.weights
        scored = [w[i] * v for i, v in enumerate(values)]
        best = max(scored)
        tied = tuple(i for i, s in enumerate(scored) if s == best)
        return self.tie_break.choose(tied, w, x_len)

    # -- predictions ------------------------------------------------------

    def true_conditionals(self) -> List[Fraction]:
        i = self.cls.true_index
        if i is None:
            raise ValueError("class has no designated true model")
        base = self.values[i]
        return [cv[i] / base for cv in self.child_values]

    def prediction(self, kind: str) -> List[Fraction]:
        out = self._cache.get(("pred", kind))
        if out is None:
            out = self._prediction(kind)
            self._cache[("pred", kind)] = out
        return out

    def _prediction(self, kind: str) -> List[Fraction]:
        k = self.cls.alphabet.size
        if kind == TRUE:
            return self.true_conditionals()
        if kind == XI:
            base = self.xi()
            if base == 0:
                raise ZeroHistoryError(f"xi = 0 at {self.prefix}")
            return [self.xi_child(a) / base for a in range(k)]
        if kind == RHO:
            base = self.rho()
            if base == 0:
                raise ZeroHistoryError(f"rho = 0 at {self.prefix}")
            return [self.rho_child(a) / base for a in range(k)]
        if kind == RHO_NORM:
            return _normalize_list(self.prediction(RHO))
        if kind == STATIC:
            i = self.map_index()
            base = self.values[i]
            if base == 0:
                raise ZeroHistoryError(f"nu^x = 0 at {self.prefix}")
            return [self.child_values[a][i] / base for a in range(k)]
        if kind == STATIC_NORM:
            return _normalize_list(self.prediction(STATIC))
        if kind == HYBRID:
            i = self.map_index()
            base = self.values[i]
            if base == 0:
                raise ZeroHistoryError(f"nu^x = 0 at {self.prefix}")
            return [
                self.child_values[a][self.map_child_index(a)] / base for a in range(k)
            ]
        raise ValueError(f"unknown predictor kind {kind!r}")

    def child_node(self, a: int) -> "PredictionNode":
        return PredictionNode(
            self.cls,
            self.tie_break,
            self.prefix + (a,),
            [c.advance(a) for c in self.cursors],
            self.weight * self.true_conditionals()[a],
        )


def _normalize_list(values: Sequence[Fraction]) -> List[Fraction]:
    total = sum(values)
    if total == 0:
        raise AllZeroError("prediction entries all zero; cannot normalize")
    return [v / total for v in values]


def walk_support(
    cls: WeightedClass,
    horizon: int,
    visit: Callable[[PredictionNode], None],
    tie_break: TieBreak = LARGEST_WEIGHT,
    guard: int = DEFAULT_NODE_GUARD,
) -> int:
    """Depth-first visit of every prefix of positive true probability.

    Visits prefixes of length 0 .. horizon-1 in lexicographic order
    (predictions at the visited prefix concern the next step).  Raises
    TooLargeError when more than ``guard`` nodes would be explored.
    """
    if cls.true_index is None:
        raise ValueError("walking the support needs a designated true model")
    root = PredictionNode(
        cls, tie_break, (), [m.cursor() for m in cls.models], Fraction(1)
    )
    nodes = 0
    stack = [root]
    k = cls.alphabet.size
    while stack:
        node = stack.pop()
        nodes += 1
        if nodes > guard:
            raise TooLargeError(f"enumeration exceeded {guard} nodes")
        visit(node)
        if node.t + 1 < horizon:
            mu_cond = node.true_conditionals()
            for a in reversed(range(k)):
                if mu_cond[a] > 0:
                    stack.append(node.child_node(a))
    return nodes


def expect(
    cls: WeightedClass,
    horizon: int,
    f: Callable[[Word], object],
    mode: str = EXACT,
    guard: int = DEFAULT_NODE_GUARD,
):
    """E f(x_{1:n}) = sum over length-n strings of mu(x) f(x).

    Enumerates the sequence tree depth-first, pruning subtrees of zero
    true probability; exact in exact mode.
    """
    check_mode(mode)
    if cls.true_index is None:
        raise ValueError("expectation needs a designated true model")
    mu = cls.true_model
    total = Fraction(0) if mode == EXACT else 0.0
    nodes = 0
    stack = [((), mu.cursor())]
    k = cls.alphabet.size
    while stack:
        prefix, cur = stack.pop()
        nodes += 1
        if nodes > guard:
            raise TooLargeError(f"enumeration exceeded {guard} nodes")
        if len(prefix) == horizon:
            contribution = cur.value * f(prefix) if mode == EXACT else float(
                cur.value
            ) * f(prefix)
            total = total + contribution
            continue
        for a in reversed(range(k)):
            if cur.child_value(a) > 0:
                stack.append((prefix + (a,), cur.advance(a)))
    return total


# ----------------------------------------------------------------------
# Cumulative ledgers
# ----------------------------------------------------------------------


@dataclass
class CumulativeLedger:
    """Per-step expected distances and their running sums."""

    mode: str
    horizon: int
    square: list
    hellinger: list
    kl: list
    absolute: list
    stderr: Optional[Dict[str, list]] = None

    def per_step(self, metric: str) -> list:
        return getattr(self, metric)

    def cumulative(self, metric: str, upto: Optional[int] = None):
        steps = self.per_step(metric)[: upto if upto is not None else self.horizon]
        return sum_extended(steps, self.mode)

    def series(self, metric: str) -> list:
        """Prefix sums S_{1:1}, S_{1:2}, ..., S_{1:n}."""
        out = []
        running = None
        for term in self.per_step(metric):
            running = term if running is None else add_extended(running, term)
            out.append(running)
        return out


def add_extended(a, b):
    if a == math.inf or b == math.inf:
        return math.inf
    return a + b


def sum_extended(terms, mode: str):
    """Sum a homogeneous list of Fractions, FracIntervals, or floats.

    A single +inf term makes the whole sum +inf (the KL convention).
    """
    if mode == EXACT:
        total = None
        for term in terms:
            if term == math.inf:
                return math.inf
            total = term if total is None else total + term
        return Fraction(0) if total is None else total
    total_f = 0.0
    for term in terms:
        if term == math.inf:
            return math.inf
        total_f += float(term)
    return total_f


def cumulative_distances(
    cls: WeightedClass,
    predictor,
    horizon: int,
    tie_break: TieBreak = LARGEST_WEIGHT,
    mode: str = EXACT,
    guard: int = DEFAULT_NODE_GUARD,
) -> CumulativeLedger:
    """Expected per-step distance ledgers against the true conditionals.

    ``predictor`` is a kind string (fused exact walk) or any object with
    a ``predict(word)`` method returning a PredictiveDistribution.
    """
    check_mode(mode)
    sq = [Fraction(0) if mode == EXACT else 0.0 for _ in range(horizon)]
    he = [ZERO_INTERVAL if mode == EXACT else 0.0 for _ in range(horizon)]
    kl: list = [ZERO_INTERVAL if mode == EXACT else 0.0 for _ in range(horizon)]
    ab = [Fraction(0) if mode == EXACT else 0.0 for _ in range(horizon)]

    kind = predictor if isinstance(predictor, str) else None
    if kind is not None and kind not in ALL_KINDS:
        raise ValueError(f"unknown predictor kind {kind!r}")

    def visit(node: PredictionNode):
        t = node.t
        mu_cond = node.true_conditionals()
        if kind is not None:
            phi = node.prediction(kind)
        else:
            phi = list(predictor.predict(node.prefix).values)
        d = step_distances(mu_cond, phi, mode)
        w = node.weight if mode == EXACT else float(node.weight)
        sq[t] = sq[t] + w * d.square
        he[t] = he[t] + w * d.hellinger
        kl[t] = add_extended(kl[t], math.inf if d.kl == math.inf else w * d.kl)
        ab[t] = ab[t] + w * d.absolute

    walk_support(cls, horizon, visit, tie_break, guard)
    return CumulativeLedger(mode, horizon, sq, he, kl, ab)


def monte_carlo_distances(
    cls: WeightedClass,
    predictor_kind: str,
    horizon: int,
    samples: int,
    seed: int,
    tie_break: TieBreak = LARGEST_WEIGHT,
    workers: int = 1,
) -> CumulativeLedger:
    """Unbiased float estimates of the distance ledgers from sampled paths.

    Each sample draws a path from the true model with an independently
    derived RNG, so the result is identical for any worker count; samples
    are reduced in index order.
    """

    def one_sample(i: int):
        rng = derived_rng(seed, i)
        node = PredictionNode(
            cls, tie_break, (), [m.cursor() for m in cls.models], Fraction(1)
        )
        rows = []
        for _ in range(horizon):
            mu_cond = node.true_conditionals()
            phi = node.prediction(predictor_kind)
            d = step_distances(mu_cond, phi, FLOAT)
            rows.append((d.square, d.hellinger, d.kl, d.absolute))
            symbol = draw_symbol(mu_cond, rng)
            node = node.child_node(symbol)
        return rows

    all_rows = ordered_parallel_map(one_sample, range(samples), workers)

    sq, he, kl, ab = ([0.0] * horizon for _ in range(4))
    sq2, he2, kl2, ab2 = ([0.0] * horizon for _ in range(4))
    for rows in all_rows:
        for t, (s, h, d, a) in enumerate(rows):
            sq[t] += s
            he[t] += h
            kl[t] = kl[t] + d if kl[t] != math.inf else math.inf
            ab[t] += a
            sq2[t] += s * s
            he2[t] += h * h
            if d != math.inf and kl2[t] != math.inf:
                kl2[t] += d * d
            else:
                kl2[t] = math.inf
            ab2[t] += a * a

    n = samples
    means = [[v / n for v in col] for col in (sq, he, kl, ab)]
    stderr = {
        name: [_stderr(m, s2, n) for m, s2 in zip(mcol, s2col)]
        for name, mcol, s2col in zip(
            METRICS, means, (sq2, he2, kl2, ab2)
        )
    }
    return CumulativeLedger(
        FLOAT, horizon, means[0], means[1], means[2], means[3], stderr=stderr
    )


def _stderr(mean: float, sumsq: float, n: int) -> float:
    if n < 2 or mean == math.inf or sumsq == math.inf:
        return math.inf if mean == math.inf else 0.0
    var = max(0.0, sumsq / n - mean * mean) * n / (n - 1)
    return math.sqrt(var / n)


def draw_symbol(probs: Sequence[Fraction], rng) -> int:
    """Exact inverse-CDF draw over a rational distribution."""
    den = math.lcm(*(p.denominator for p in probs))
    r = rng.randrange(den)
    acc = 0
    for a, p in enumerate(probs):
        acc += p.numerator * (den // p.denominator)
        if r < acc:
            return a
    raise AssertionError("true conditionals do not sum to 1")


def ordered_parallel_map(fn, items, workers: int):
    """Map preserving item order; results identical for any worker count."""
    if workers <= 1:
        return [fn(i) for i in items]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ----------------------------------------------------------------------
# Bound verification
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    """One verified bound: measured partial sum against its budget."""

    predictor: str
    metric: str
    bound_name: str
    bound: FracInterval
    measured: ExtendedInterval
    passed: bool

    @property
    def slack(self):
        """Certified lower bound on bound - measured (-inf when measured is)."""
        if self.measured == math.inf:
            return -math.inf
        return self.bound.lo - self.measured.hi

    def render(self) -> str:
        state = "pass" if self.passed else "FAIL"
        return (
            f"{self.bound_name:22s} {self.predictor:11s} {self.metric:14s} "
            f"measured={_to_float(self.measured):.6g} bound={_to_float(self.bound):.6g} [{state}]"
        )


def _to_float(x) -> float:
    if x == math.inf:
        return math.inf
    if isinstance(x, FracInterval):
        return x.midpoint_float()
    return float(x)


def _as_interval(x) -> ExtendedInterval:
    if x == math.inf:
        return math.inf
    if isinstance(x, FracInterval):
        return x
    return FracInterval.exact(x)


def _certified_le(measured: ExtendedInterval, bound: FracInterval) -> bool:
    if measured == math.inf:
        return False
    if measured.hi <= bound.lo:
        return True
    if measured.lo > bound.hi:
        return False
    raise RuntimeError(
        f"bound comparison inconclusive: measured in [{measured.lo}, {measured.hi}], "
        f"bound in [{bound.lo}, {bound.hi}]; raise enclosure precision"
    )


def inverse_weight(cls: WeightedClass) -> Fraction:
    """W = 1/w_mu, the factor scaling every MDL bound."""
    return 1 / cls.true_weight


def check_bounds(
    cls: WeightedClass,
    horizon: int,
    tie_break: TieBreak = LARGEST_WEIGHT,
    guard: int = DEFAULT_NODE_GUARD,
) -> List[BoundReport]:
    """Verify every convergence bound at the given horizon, exactly.

    Finite partial sums are valid checks because each bound holds
    uniformly in the horizon.  Requires a fully materialized class.
    """
    if cls.tail_bound is not None:
        raise ValueError("bound checks need a fully materialized class")
    winv = inverse_weight(cls)
    k = cls.alphabet.size

    sq = {kind: Fraction(0) for kind in (XI, RHO_NORM, RHO, STATIC, STATIC_NORM)}
    hell = {kind: ZERO_INTERVAL for kind in (RHO_NORM, RHO, STATIC, STATIC_NORM)}
    kl_rho_norm: ExtendedInterval = ZERO_INTERVAL
    abs_log_sum: ExtendedInterval = ZERO_INTERVAL
    one_minus_rho = Fraction(0)
    one_minus_static = Fraction(0)

    def visit(node: PredictionNode):
        nonlocal kl_rho_norm, abs_log_sum, one_minus_rho, one_minus_static
        w = node.weight
        mu_cond = node.true_conditionals()
        for kind in sq:
            phi = node.prediction(kind)
            sq[kind] += w * _sq_exact(mu_cond, phi)
            if kind in hell:
                hell[kind] = hell[kind] + w * _hell_exact(mu_cond, phi)
        d = _kl_exact(mu_cond, node.prediction(RHO_NORM))
        kl_rho_norm = (
            math.inf
            if (d == math.inf or kl_rho_norm == math.inf)
            else kl_rho_norm + w * d
        )
        rho_sum = sum(node.prediction(RHO))
        one_minus_rho += w * abs(1 - rho_sum)
        if abs_log_sum != math.inf:
            if rho_sum == 0:
                abs_log_sum = math.inf
            else:
                abs_log_sum = abs_log_sum + w * abs(ln_interval(rho_sum))
        one_minus_static += w * abs(1 - sum(node.prediction(STATIC)))

    walk_support(cls, horizon, visit, tie_break, guard)

    ln_winv = ln_interval(winv) if winv != 1 else ZERO_INTERVAL
    w_plus_ln = FracInterval.exact(winv) + ln_winv
    reports = [
        _report("mixture_square", XI, "square", sq[XI], ln_winv),
        _report("dynamic_norm_square", RHO_NORM, "square", sq[RHO_NORM], w_plus_ln),
        _report("dynamic_norm_kl", RHO_NORM, "kl", kl_rho_norm, w_plus_ln),
        _report(
            "dynamic_log_sum", RHO, "abs_log_sum", abs_log_sum,
            FracInterval.exact(2 * winv),
        ),
        _report(
            "dynamic_sum_defect", RHO, "one_minus_sum", one_minus_rho,
            FracInterval.exact(2 * winv),
        ),
        _report(
            "static_sum_defect", STATIC, "one_minus_sum", one_minus_static,
            FracInterval.exact(winv),
        ),
    ]
    for kind, c in COROLLARY_CONSTANTS.items():
        budget = FracInterval.exact(c * winv)
        reports.append(_report(f"summary_square_{c}x", kind, "square", sq[kind], budget))
        reports.append(
            _report(f"summary_hellinger_{c}x", kind, "hellinger", hell[kind], budget)
        )
    return reports


def _report(name: str, kind: str, metric: str, measured, bound: FracInterval) -> BoundReport:
    measured_iv = _as_interval(measured)
    return BoundReport(
        predictor=kind,
        metric=metric,
        bound_name=name,
        bound=bound,
        measured=measured_iv,
        passed=_certified_le(measured_iv, bound),
    )

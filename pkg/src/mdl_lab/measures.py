"""Semimeasures on finite strings and the built-in model families.

A semimeasure assigns each finite string x over a finite alphabet a value
nu(x) in [0, 1] with nu(empty) <= 1 and sum_a nu(xa) <= nu(x); equality in
both makes it a proper measure.  Strings are tuples of symbols 0..k-1;
helpers accept ASCII digit strings like "110" as well.

All built-in families evaluate to exact rationals.  Each family also
provides a cursor, an O(1)-per-step incremental evaluator used by tree
walks, samplers and Monte-Carlo traces.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, Optional, Sequence

from .errors import AlphabetMismatchError, SamplingError
from .values import EXACT, LogFloat, Value, check_mode

Word = tuple  # tuple of int symbols

EMPTY: Word = ()


@dataclass(frozen=True)
class Alphabet:
    """Finite symbol set {0, ..., size-1}."""

    size: int

    def __post_init__(self):
        if self.size < 2:
            raise ValueError("alphabet size must be at least 2")

    def symbols(self) -> range:
        return range(self.size)

    def word(self, x) -> Word:
        """Normalize a string spec ("110", iterable of ints) to a Word."""
        if isinstance(x, tuple) and all(isinstance(s, int) for s in x):
            w = x
        elif isinstance(x, str):
            w = tuple(int(c) for c in x)
        else:
            w = tuple(int(s) for s in x)
        for s in w:
            if not 0 <= s < self.size:
                raise AlphabetMismatchError(
                    f"symbol {s} outside alphabet of size {self.size}"
                )
        return w

    def format(self, w: Word) -> str:
        return "".join(str(s) for s in w)


BINARY = Alphabet(2)


class SemimeasureCursor:
    """Incremental evaluator positioned at some prefix.

    ``value`` is nu(prefix); ``child_value(a)`` is nu(prefix + (a,));
    ``advance(a)`` returns a new cursor one symbol deeper.  Cursors are
    immutable, so tree walks may branch by advancing one cursor twice.
    """

    __slots__ = ()

    @property
    def value(self) -> Fraction:
        raise NotImplementedError

    def child_value(self, a: int) -> Fraction:
        raise NotImplementedError

    def advance(self, a: int) -> "SemimeasureCursor":
        raise NotImplementedError


class Semimeasure:
    """Abstract evaluatable semimeasure."""

    alphabet: Alphabet
    is_proper_measure: bool = False

    # -- evaluation ----------------------------------------------------

    def evaluate_exact(self, x: Word) -> Fraction:
        raise NotImplementedError

    def log_evaluate(self, x: Word) -> LogFloat:
        return LogFloat.from_fraction(self.evaluate_exact(x))

    def evaluate(self, x, mode: str = EXACT) -> Value:
        check_mode(mode)
        w = self.alphabet.word(x)
        if mode == EXACT:
            return self.evaluate_exact(w)
        return self.log_evaluate(w)

    def conditional_exact(self, a: int, x: Word) -> Fraction:
        """nu(xa)/nu(x), defined as 0 when nu(x) = 0."""
        vx = self.evaluate_exact(x)
        if vx == 0:
            return Fraction(0)
        return self.evaluate_exact(x + (a,)) / vx

    def conditional(self, a: int, x, mode: str = EXACT) -> Value:
        check_mode(mode)
        w = self.alphabet.word(x)
        if mode == EXACT:
            return self.conditional_exact(a, w)
        vx = self.log_evaluate(w)
        if vx.is_zero:
            return LogFloat.zero()
        return self.log_evaluate(w + (a,)) / vx

    # -- structure -----------------------------------------------------

    def cursor(self) -> SemimeasureCursor:
        return _GenericCursor(self, EMPTY)

    def step_distribution(self, i: int) -> Optional[Sequence[Fraction]]:
        """Per-step symbol distribution at step i (1-based) if factorizable."""
        return None

    @property
    def is_factorizable(self) -> bool:
        return self.step_distribution(1) is not None

    @property
    def step_prob_infimum(self) -> Optional[Fraction]:
        """Positive lower bound on all nonzero per-step probabilities, if any.

        None means "not factorizable" or "no positive bound exists".
        """
        return None

    def describe(self) -> str:
        return repr(self)


class _GenericCursor(SemimeasureCursor):
    __slots__ = ("_model", "_prefix", "_value")

    def __init__(self, model: Semimeasure, prefix: Word, value: Fraction = None):
        self._model = model
        self._prefix = prefix
        self._value = model.evaluate_exact(prefix) if value is None else value

    @property
    def value(self) -> Fraction:
        return self._value

    def child_value(self, a: int) -> Fraction:
        return self._model.evaluate_exact(self._prefix + (a,))

    def advance(self, a: int) -> "_GenericCursor":
        return _GenericCursor(self._model, self._prefix + (a,), self.child_value(a))


# ----------------------------------------------------------------------
# i.i.d. models
# ----------------------------------------------------------------------


class IidModel(Semimeasure):
    """Product measure of a fixed rational symbol distribution."""

    is_proper_measure = True

    def __init__(self, theta: Iterable, alphabet: Alphabet | None = None):
        theta = tuple(Fraction(t) for t in theta)
        if alphabet is None:
            alphabet = Alphabet(len(theta))
        if len(theta) != alphabet.size:
            raise ValueError("theta length must match alphabet size")
        if any(t < 0 for t in theta):
            raise ValueError("theta components must be nonnegative")
        if sum(theta) != 1:
            raise ValueError("theta must sum to exactly 1")
        self.alphabet = alphabet
        self.theta = theta

    def evaluate_exact(self, x: Word) -> Fraction:
        out = Fraction(1)
        counts = [0] * self.alphabet.size
        for s in x:
            counts[s] += 1
        for a, c in enumerate(counts):
            if c:
                if self.theta[a] == 0:
                    return Fraction(0)
                out *= self.theta[a] ** c
        return out

    def log_evaluate(self, x: Word) -> LogFloat:
        counts = [0] * self.alphabet.size
        for s in x:
            counts[s] += 1
        ln = 0.0
        for a, c in enumerate(counts):
            if c:
                if self.theta[a] == 0:
                    return LogFloat.zero()
                ln += c * LogFloat.from_fraction(self.theta[a]).ln
        return LogFloat(ln)

    def conditional_exact(self, a: int, x: Word) -> Fraction:
        if self.evaluate_exact(x) == 0:
            return Fraction(0)
        return self.theta[a]

    def cursor(self) -> SemimeasureCursor:
        return _IidCursor(self, Fraction(1))

    def step_distribution(self, i: int) -> Sequence[Fraction]:
        return self.theta

    @property
    def step_prob_infimum(self) -> Optional[Fraction]:
        nonzero = [t for t in self.theta if t > 0]
        return min(nonzero)

    def __repr__(self) -> str:
        return f"iid({','.join(str(t) for t in self.theta)})"


class _IidCursor(SemimeasureCursor):
    __slots__ = ("_model", "_value")

    def __init__(self, model: IidModel, value: Fraction):
        self._model = model
        self._value = value

    @property
    def value(self) -> Fraction:
        return self._value

    def child_value(self, a: int) -> Fraction:
        return self._value * self._model.theta[a]

    def advance(self, a: int) -> "_IidCursor":
        return _IidCursor(self._model, self.child_value(a))


# ----------------------------------------------------------------------
# Deterministic (eventually periodic) models
# ----------------------------------------------------------------------


class DeterministicModel(Semimeasure):
    """Point mass on an eventually periodic infinite sequence.

    nu(x) = 1 if x is a prefix of preperiod + period^infinity, else 0.
    """

    is_proper_measure = True

    def __init__(self, preperiod, period, alphabet: Alphabet = BINARY):
        self.alphabet = alphabet
        self.preperiod = alphabet.word(preperiod)
        self.period = alphabet.word(period)
        if not self.period:
            raise ValueError("period must be nonempty")

    def target_symbol(self, i: int) -> int:
        """Symbol at position i (0-based) of the target sequence."""
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def evaluate_exact(self, x: Word) -> Fraction:
        for i, s in enumerate(x):
            if s != self.target_symbol(i):
                return Fraction(0)
        return Fraction(1)

    def conditional_exact(self, a: int, x: Word) -> Fraction:
        if self.evaluate_exact(x) == 0:
            return Fraction(0)
        return Fraction(1 if a == self.target_symbol(len(x)) else 0)

    def cursor(self) -> SemimeasureCursor:
        return _DeterministicCursor(self, 0, True)

    def step_distribution(self, i: int) -> Sequence[Fraction]:
        target = self.target_symbol(i - 1)
        return tuple(
            Fraction(1 if a == target else 0) for a in self.alphabet.symbols()
        )

    @property
    def step_prob_infimum(self) -> Fraction:
        return Fraction(1)

    def __repr__(self) -> str:
        pre = self.alphabet.format(self.preperiod)
        per = self.alphabet.format(self.period)
        return f"det({pre}({per})^inf)"


class _DeterministicCursor(SemimeasureCursor):
    __slots__ = ("_model", "_pos", "_alive")

    def __init__(self, model: DeterministicModel, pos: int, alive: bool):
        self._model = model
        self._pos = pos
        self._alive = alive

    @property
    def value(self) -> Fraction:
        return Fraction(1 if self._alive else 0)

    def child_value(self, a: int) -> Fraction:
        ok = self._alive and a == self._model.target_symbol(self._pos)
        return Fraction(1 if ok else 0)

    def advance(self, a: int) -> "_DeterministicCursor":
        ok = self._alive and a == self._model.target_symbol(self._pos)
        return _DeterministicCursor(self._model, self._pos + 1, ok)


# ----------------------------------------------------------------------
# Factorizable models (independent, non-identical steps)
# ----------------------------------------------------------------------


class FactorizableModel(Semimeasure):
    """Product of per-step symbol distributions mu_1, mu_2, ...

    The per-step rule is a callable i -> distribution (1-based).  Use
    :meth:`from_steps` for an explicit finite table with an i.i.d. tail.
    ``infimum`` is an optional declared positive lower bound on all
    nonzero per-step probabilities; leave it None when no positive bound
    exists (the probabilities may approach zero).
    """

    is_proper_measure = True

    def __init__(
        self,
        alphabet: Alphabet,
        rule: Callable[[int], Sequence[Fraction]],
        infimum: Optional[Fraction] = None,
        name: str = "factorizable",
    ):
        self.alphabet = alphabet
        self._rule = rule
        self._infimum = Fraction(infimum) if infimum is not None else None
        self._name = name

    @classmethod
    def from_steps(
        cls,
        alphabet: Alphabet,
        steps: Sequence[Sequence],
        tail: Sequence,
        name: str = "factorizable",
    ) -> "FactorizableModel":
        table = [tuple(Fraction(p) for p in dist) for dist in steps]
        tail_dist = tuple(Fraction(p) for p in tail)
        for dist in table + [tail_dist]:
            if len(dist) != alphabet.size or sum(dist) != 1 or any(p < 0 for p in dist):
                raise ValueError(f"invalid per-step distribution {dist}")

        def rule(i: int, _table=table, _tail=tail_dist):
            return _table[i - 1] if i <= len(_table) else _tail

        nonzero = [p for dist in table + [tail_dist] for p in dist if p > 0]
        return cls(alphabet, rule, infimum=min(nonzero), name=name)

    def step_distribution(self, i: int) -> Sequence[Fraction]:
        dist = tuple(Fraction(p) for p in self._rule(i))
        if len(dist) != self.alphabet.size:
            raise ValueError("per-step rule returned wrong arity")
        return dist

    def evaluate_exact(self, x: Word) -> Fraction:
        out = Fraction(1)
        for i, s in enumerate(x, start=1):
            p = self.step_distribution(i)[s]
            if p == 0:
                return Fraction(0)
            out *= p
        return out

    def conditional_exact(self, a: int, x: Word) -> Fraction:
        if self.evaluate_exact(x) == 0:
            return Fraction(0)
        return self.step_distribution(len(x) + 1)[a]

    def cursor(self) -> SemimeasureCursor:
        return _FactorizableCursor(self, 0, Fraction(1))

    @property
    def step_prob_infimum(self) -> Optional[Fraction]:
        return self._infimum

    def __repr__(self) -> str:
        return self._name


class _FactorizableCursor(SemimeasureCursor):
    __slots__ = ("_model", "_step", "_value")

    def __init__(self, model: FactorizableModel, step: int, value: Fraction):
        self._model = model
        self._step = step
        self._value = value

    @property
    def value(self) -> Fraction:
        return self._value

    def child_value(self, a: int) -> Fraction:
        if self._value == 0:
            return Fraction(0)
        return self._value * self._model.step_distribution(self._step + 1)[a]

    def advance(self, a: int) -> "_FactorizableCursor":
        return _FactorizableCursor(self._model, self._step + 1, self.child_value(a))


# ----------------------------------------------------------------------
# Oscillating-martingale measure
# ----------------------------------------------------------------------

_THREE_QUARTERS = Fraction(3, 4)
_THREE_EIGHTHS = Fraction(3, 8)


def _dead_at(f: Fraction, length: int) -> bool:
    """Death condition for a node of the given length.

    A node of length m dies when f(x) <= 3/4 falls below the floor
    3/8 + 2^-(m+4) required to extend it to length m+1.
    """
    if f > _THREE_QUARTERS:
        return False
    return f < _THREE_EIGHTHS + Fraction(1, 2 ** (length + 4))


def _martingale_children(f: Fraction, dead: bool, parent_len: int):
    """(f(x0), f(x1), dead(x0), dead(x1)) for a node x of length parent_len.

    ``dead`` is the parent's own status; dead subtrees freeze the value.
    """
    n = parent_len + 1  # length of the children being defined
    if dead:
        return f, f, True, True
    if f > _THREE_QUARTERS:
        f0 = _THREE_QUARTERS - Fraction(1, 2 ** (n + 2))
        f1 = 2 * f - f0
    else:
        f1 = _THREE_QUARTERS + Fraction(1, 2 ** (n + 2))
        f0 = 2 * f - f1
    return f0, f1, _dead_at(f0, n), _dead_at(f1, n)


class OscillatingMartingaleMeasure(Semimeasure):
    """Binary measure nu(x) = f(x) * 2^-len(x) for a martingale f.

    f(empty) = 1 and f(x) = (f(x0) + f(x1)) / 2 exactly at every node;
    along alive paths f converges to 3/4 while crossing it at every step,
    so the ratio of nu to the uniform measure oscillates forever.  Nodes
    whose value falls below the per-depth floor are "dead": their value
    freezes on the whole subtree.  All values are dyadic rationals.
    """

    is_proper_measure = True

    def __init__(self):
        self.alphabet = BINARY
        # Write-once cache of (f, dead) per node; entries are pure values,
        # so racing recomputations are benign.
        self._nodes: dict = {EMPTY: (Fraction(1), False)}

    def _node(self, x: Word):
        cached = self._nodes.get(x)
        if cached is not None:
            return cached
        # Walk forward from the deepest cached prefix (iterative: paths may
        # be far longer than the interpreter recursion limit).
        depth = len(x) - 1
        while depth > 0 and x[:depth] not in self._nodes:
            depth -= 1
        f, dead = self._nodes[x[:depth]]
        while depth < len(x):
            f0, f1, d0, d1 = _martingale_children(f, dead, depth)
            prefix = x[:depth]
            self._nodes[prefix + (0,)] = (f0, d0)
            self._nodes[prefix + (1,)] = (f1, d1)
            f, dead = self._nodes[x[: depth + 1]]
            depth += 1
        return f, dead

    def f_value(self, x) -> Fraction:
        return self._node(self.alphabet.word(x))[0]

    def is_dead(self, x) -> bool:
        return self._node(self.alphabet.word(x))[1]

    def evaluate_exact(self, x: Word) -> Fraction:
        f, _ = self._node(x)
        return f / 2 ** len(x)

    def cursor(self) -> SemimeasureCursor:
        return _MartingaleCursor(Fraction(1), False, 0)

    def dead_mass_by_depth(self, depth: int) -> list:
        """Uniform-measure mass of dead nodes at each length 0..depth.

        Aggregates nodes by (f value, dead flag); the construction admits
        only O(depth) distinct values per level, so this runs in
        O(depth^2) independent of the 2^depth node count.
        """
        level = {(Fraction(1), False): Fraction(1)}
        masses = [Fraction(0)]
        for length in range(1, depth + 1):
            nxt: dict = {}
            for (f, dead), mass in level.items():
                f0, f1, d0, d1 = _martingale_children(f, dead, length - 1)
                half = mass / 2
                for fc, dc in ((f0, d0), (f1, d1)):
                    key = (fc, dc)
                    nxt[key] = nxt.get(key, Fraction(0)) + half
            level = nxt
            masses.append(sum(m for (f, d), m in level.items() if d))
        return masses

    def __repr__(self) -> str:
        return "martingale_measure"


class _MartingaleCursor(SemimeasureCursor):
    __slots__ = ("_f", "_dead", "_len")

    def __init__(self, f: Fraction, dead: bool, length: int):
        self._f = f
        self._dead = dead
        self._len = length

    @property
    def value(self) -> Fraction:
        return self._f / 2**self._len

    @property
    def f_value(self) -> Fraction:
        return self._f

    @property
    def dead(self) -> bool:
        return self._dead

    def child_value(self, a: int) -> Fraction:
        f0, f1, _, _ = _martingale_children(self._f, self._dead, self._len)
        return (f0 if a == 0 else f1) / 2 ** (self._len + 1)

    def advance(self, a: int) -> "_MartingaleCursor":
        f0, f1, d0, d1 = _martingale_children(self._f, self._dead, self._len)
        if a == 0:
            return _MartingaleCursor(f0, d0, self._len + 1)
        return _MartingaleCursor(f1, d1, self._len + 1)


# ----------------------------------------------------------------------
# Leaky wrapper
# ----------------------------------------------------------------------


class LeakySemimeasure(Semimeasure):
    """Strict semimeasure: a per-step multiplicative leak over a base model.

    nu(x) = base(x) * (1 - gamma)^len(x), so sum_a nu(xa) =
    (1 - gamma) * nu(x) at every node with base a measure.
    """

    is_proper_measure = False

    def __init__(self, base: Semimeasure, leak: Fraction):
        leak = Fraction(leak)
        if not 0 < leak < 1:
            raise ValueError("leak must lie strictly between 0 and 1")
        self.alphabet = base.alphabet
        self.base = base
        self.leak = leak

    @property
    def _keep(self) -> Fraction:
        return 1 - self.leak

    def evaluate_exact(self, x: Word) -> Fraction:
        return self.base.evaluate_exact(x) * self._keep ** len(x)

    def conditional_exact(self, a: int, x: Word) -> Fraction:
        return self.base.conditional_exact(a, x) * self._keep

    def cursor(self) -> SemimeasureCursor:
        return _LeakyCursor(self, self.base.cursor(), Fraction(1))

    def step_distribution(self, i: int):
        return None  # leaks make the per-step view sub-stochastic

    def __repr__(self) -> str:
        return f"leaky({self.base!r},gamma={self.leak})"


class _LeakyCursor(SemimeasureCursor):
    __slots__ = ("_model", "_base", "_scale")

    def __init__(self, model: LeakySemimeasure, base: SemimeasureCursor, scale):
        self._model = model
        self._base = base
        self._scale = scale

    @property
    def value(self) -> Fraction:
        return self._base.value * self._scale

    def child_value(self, a: int) -> Fraction:
        return self._base.child_value(a) * self._scale * self._model._keep

    def advance(self, a: int) -> "_LeakyCursor":
        return _LeakyCursor(
            self._model, self._base.advance(a), self._scale * self._model._keep
        )


# ----------------------------------------------------------------------
# Structural checks and sampling
# ----------------------------------------------------------------------


@dataclass
class SemimeasureCheck:
    """Result of a finite-depth semimeasure verification."""

    passed: bool
    all_equalities: bool
    nodes_checked: int
    violation_at: Optional[Word] = None
    detail: str = ""


def check_semimeasure(model: Semimeasure, depth: int) -> SemimeasureCheck:
    """Verify nu(empty) <= 1 and sum_a nu(xa) <= nu(x) for all len(x) < depth.

    Proper measures must satisfy both with equality.  Runs in exact
    arithmetic and reports the first violating node.  Zero-valued nodes
    are verified to have all-zero children, then not descended further.
    """
    k = model.alphabet.size
    root = model.cursor()
    if root.value > 1:
        return SemimeasureCheck(False, False, 1, EMPTY, f"nu(empty)={root.value} > 1")
    if model.is_proper_measure and root.value != 1:
        return SemimeasureCheck(
            False, False, 1, EMPTY, f"measure with nu(empty)={root.value} != 1"
        )
    all_eq = True
    nodes = 0
    stack = [(EMPTY, root)]
    while stack:
        x, cur = stack.pop()
        nodes += 1
        children = [cur.child_value(a) for a in range(k)]
        total = sum(children)
        if total > cur.value:
            return SemimeasureCheck(
                False, False, nodes, x, f"sum of children {total} > nu(x)={cur.value}"
            )
        if total < cur.value:
            all_eq = False
            if model.is_proper_measure:
                return SemimeasureCheck(
                    False,
                    False,
                    nodes,
                    x,
                    f"measure with children sum {total} < nu(x)={cur.value}",
                )
        if len(x) + 1 < depth:
            for a in range(k):
                if children[a] > 0:
                    stack.append((x + (a,), cur.advance(a)))
    return SemimeasureCheck(True, all_eq, nodes)


def derived_rng(seed: int, index: int) -> random.Random:
    """Stream-stable RNG for sample `index` of a seeded run.

    String seeding hashes with SHA-512 internally, so the stream does not
    depend on PYTHONHASHSEED, the process, or the thread executing it.
    """
    return random.Random(f"mdl-lab:{seed}:{index}")


def sample_sequence(model: Semimeasure, n: int, seed: int) -> Word:
    """Draw x_{1:n} with probability exactly nu(x_{1:n}); seed-reproducible."""
    if not model.is_proper_measure:
        raise SamplingError("sampling requires a proper measure")
    rng = derived_rng(seed, 0)
    return sample_path(model, n, rng)


def _draw_exact(probs, rng: random.Random) -> int:
    """Inverse-CDF draw with one integer uniform on a common denominator."""
    den = lcm(*(p.denominator for p in probs))
    r = rng.randrange(den)
    acc = 0
    for a, p in enumerate(probs):
        acc += p.numerator * (den // p.denominator)
        if r < acc:
            return a
    raise SamplingError("conditional probabilities sum to less than 1")


def sample_path(model: Semimeasure, n: int, rng: random.Random) -> Word:
    if isinstance(model, IidModel):
        # Same draws as the generic walk (identical probs per step), one
        # integer uniform per symbol without cursor arithmetic.
        return tuple(_draw_exact(model.theta, rng) for _ in range(n))
    cur = model.cursor()
    out = []
    k = model.alphabet.size
    for _ in range(n):
        v = cur.value
        if v == 0:
            raise SamplingError("cannot sample beyond a zero-probability prefix")
        symbol = _draw_exact([cur.child_value(a) / v for a in range(k)], rng)
        out.append(symbol)
        cur = cur.advance(symbol)
    return tuple(out)


# ----------------------------------------------------------------------
# Named constructions
# ----------------------------------------------------------------------


def make_example4_pair() -> tuple:
    """Factorizable pair (mu, nu) whose likelihood ratio oscillates forever.

    mu_i(1) = 1 - 2^(-2*ceil(i/2)) and nu_i(1) = 1 - 2^(-2*ceil((i+1)/2)+1).
    Both put positive mass on the all-ones sequence, the per-step
    probabilities of symbol 0 tend to zero (so no positive uniform
    stochasticity bound exists), and nu/mu along 1^t rises at even t and
    falls at odd t.
    """

    def mu_rule(i: int):
        p1 = 1 - Fraction(1, 2 ** (2 * ((i + 1) // 2)))
        return (1 - p1, p1)

    def nu_rule(i: int):
        p1 = 1 - Fraction(1, 2 ** (2 * ((i + 2) // 2) - 1))
        return (1 - p1, p1)

    mu = FactorizableModel(BINARY, mu_rule, infimum=None, name="osc_mu")
    nu = FactorizableModel(BINARY, nu_rule, infimum=None, name="osc_nu")
    return mu, nu


def example3_pair() -> tuple:
    """(lambda, nu, w_lambda, w_nu): the tie construction.

    lambda is uniform; nu forces a leading 1 and is uniform afterwards.
    With weights 2/3 and 1/3 every string starting with 1 is an exact tie.
    """
    lam = IidModel((Fraction(1, 2), Fraction(1, 2)))
    nu = FactorizableModel.from_steps(
        BINARY,
        steps=[(Fraction(0), Fraction(1))],
        tail=(Fraction(1, 2), Fraction(1, 2)),
        name="one_then_uniform",
    )
    return lam, nu, Fraction(2, 3), Fraction(1, 3)


def example5_pair() -> tuple:
    """(lambda, martingale measure, w_lambda=3/7, w_nu=4/7)."""
    lam = IidModel((Fraction(1, 2), Fraction(1, 2)))
    nu = OscillatingMartingaleMeasure()
    return lam, nu, Fraction(3, 7), Fraction(4, 7)

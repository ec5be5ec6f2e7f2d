"""Numeric value representation: exact rationals and log-domain floats.

Every probability-like quantity in the library is either an exact
``fractions.Fraction`` in [0, 1] or a :class:`LogFloat`, a nonnegative
real stored as its natural logarithm with an explicit zero.  Exact mode
is the verification default; log-float mode is meant for horizons where
exact denominators become unwieldy (roughly beyond 10^3 steps).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Mode = str  # "exact" | "float"
EXACT = "exact"
FLOAT = "float"


def check_mode(mode: str) -> str:
    if mode not in (EXACT, FLOAT):
        raise ValueError(f"unknown mode {mode!r}; expected 'exact' or 'float'")
    return mode


class LogFloat:
    """A nonnegative real number stored in the natural-log domain.

    The payload ``ln`` is ``-inf`` for the distinguished zero and is
    otherwise an ordinary float (values above 1 are permitted; predictive
    quotients stay in [0, 1] but intermediate sums may not).
    """

    __slots__ = ("ln",)

    def __init__(self, ln: float):
        self.ln = ln

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "LogFloat":
        return cls(-math.inf)

    @classmethod
    def one(cls) -> "LogFloat":
        return cls(0.0)

    @classmethod
    def from_fraction(cls, q: Fraction) -> "LogFloat":
        if q < 0:
            raise ValueError("LogFloat represents nonnegative reals")
        if q == 0:
            return cls.zero()
        # math.log accepts arbitrarily large ints, so huge exact
        # numerators/denominators convert without overflow.
        return cls(math.log(q.numerator) - math.log(q.denominator))

    @classmethod
    def from_float(cls, v: float) -> "LogFloat":
        if v < 0:
            raise ValueError("LogFloat represents nonnegative reals")
        return cls.zero() if v == 0 else cls(math.log(v))

    # -- predicates ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.ln == -math.inf

    # -- arithmetic ----------------------------------------------------

    def __mul__(self, other: "LogFloat") -> "LogFloat":
        if self.is_zero or other.is_zero:
            return LogFloat.zero()
        return LogFloat(self.ln + other.ln)

    def __truediv__(self, other: "LogFloat") -> "LogFloat":
        if other.is_zero:
            raise ZeroDivisionError("division by LogFloat zero")
        if self.is_zero:
            return LogFloat.zero()
        return LogFloat(self.ln - other.ln)

    def __add__(self, other: "LogFloat") -> "LogFloat":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        hi, lo = (self.ln, other.ln) if self.ln >= other.ln else (other.ln, self.ln)
        return LogFloat(hi + math.log1p(math.exp(lo - hi)))

    # -- comparisons (by log payload) -----------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LogFloat) and self.ln == other.ln

    def __lt__(self, other: "LogFloat") -> bool:
        return self.ln < other.ln

    def __le__(self, other: "LogFloat") -> bool:
        return self.ln <= other.ln

    def __gt__(self, other: "LogFloat") -> bool:
        return self.ln > other.ln

    def __ge__(self, other: "LogFloat") -> bool:
        return self.ln >= other.ln

    def __hash__(self) -> int:
        return hash(("LogFloat", self.ln))

    def __float__(self) -> float:
        return 0.0 if self.is_zero else math.exp(self.ln)

    def __repr__(self) -> str:
        return f"LogFloat(ln={self.ln!r})"


Value = Union[Fraction, LogFloat]


def value_to_float(v: Value) -> float:
    return float(v)


def as_value(q: Fraction, mode: str) -> Value:
    """Represent an exact rational in the requested numeric mode."""
    return q if mode == EXACT else LogFloat.from_fraction(q)


def zero_value(mode: str) -> Value:
    return Fraction(0) if mode == EXACT else LogFloat.zero()


def relative_close(a: float, b: float, rel: float = 1e-9) -> bool:
    """Relative agreement with sensible zero handling."""
    if a == b:
        return True
    return abs(a - b) <= rel * max(abs(a), abs(b))


# -- rational parsing / formatting (wire format "p/q") ------------------


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", an integer literal, or a decimal literal exactly."""
    s = text.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    if any(c in s for c in ".eE"):
        # Decimal literals are converted via string, not binary float.
        return Fraction(s)
    return Fraction(int(s))


def format_rational(q: Fraction, digit_cap: int = 120) -> str:
    """Exact "p/q" when compact; else a ~flagged 27-digit decimal.

    Deep-tree exact sums can carry denominators with tens of thousands
    of digits; serializing those verbatim helps nobody.  Comparisons are
    always done on the exact in-memory values, never on renderings.
    """
    digits = (q.numerator.bit_length() + q.denominator.bit_length()) * 10 // 33
    if digits > digit_cap:
        return "~" + decimal_string(q)
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def decimal_string(q: Fraction, places: int = 27) -> str:
    """Deterministic truncated decimal rendering of a rational."""
    sign = "-" if q < 0 else ""
    q = abs(q)
    scaled = q.numerator * 10**places // q.denominator
    text = str(scaled).rjust(places + 1, "0")
    whole, frac = text[:-places], text[-places:]
    return f"{sign}{whole}.{frac.rstrip('0') or '0'}"


# -- exact integer log2 helpers ------------------------------------------


def ceil_log2_frac(q: Fraction) -> int:
    """Smallest integer m with 2**m >= q, for positive rational q."""
    if q <= 0:
        raise ValueError("ceil_log2_frac needs a positive argument")
    num, den = q.numerator, q.denominator
    m = num.bit_length() - den.bit_length()
    # 2**m is within a factor of 2 of q; fix up exactly.
    while _pow2_cmp(m, num, den) < 0:  # 2**m < q
        m += 1
    while m - 1 >= -(10**9) and _pow2_cmp(m - 1, num, den) >= 0:  # 2**(m-1) >= q
        m -= 1
    return m


def _pow2_cmp(m: int, num: int, den: int) -> int:
    """Sign of 2**m - num/den using integers only."""
    if m >= 0:
        lhs, rhs = den << m, num
    else:
        lhs, rhs = den, num << (-m)
    return (lhs > rhs) - (lhs < rhs)


def neg_log2_ceil(q: Fraction) -> int:
    """ceil(-lb q) for q in (0, 1]; the exact code length of probability q."""
    return ceil_log2_frac(1 / q)


def log2_frac(q: Fraction) -> float:
    """-- lb of a positive rational as a double (big ints welcome)."""
    if q <= 0:
        raise ValueError("log2_frac needs a positive argument")
    return math.log2(q.numerator) - math.log2(q.denominator)

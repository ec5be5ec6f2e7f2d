import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mdl_lab.values import (
    LogFloat,
    ceil_log2_frac,
    decimal_string,
    format_rational,
    log2_frac,
    neg_log2_ceil,
    parse_rational,
    relative_close,
)


class TestLogFloat:
    def test_zero_and_one(self):
        assert LogFloat.zero().is_zero
        assert float(LogFloat.zero()) == 0.0
        assert float(LogFloat.one()) == 1.0

    def test_mul_div(self):
        a = LogFloat.from_fraction(F(1, 4))
        b = LogFloat.from_fraction(F(1, 2))
        assert math.isclose(float(a * b), 1 / 8)
        assert math.isclose(float(a / b), 1 / 2)
        assert (a * LogFloat.zero()).is_zero

    def test_add_is_logsumexp(self):
        a = LogFloat.from_fraction(F(3, 8))
        b = LogFloat.from_fraction(F(1, 8))
        assert math.isclose(float(a + b), 0.5)
        assert float(LogFloat.zero() + a) == float(a)

    def test_division_by_zero_rejected(self):
        with pytest.raises(ZeroDivisionError):
            LogFloat.one() / LogFloat.zero()

    def test_huge_fraction_converts(self):
        q = F(3**400, 7**500)
        lf = LogFloat.from_fraction(q)
        assert math.isclose(lf.ln, 400 * math.log(3) - 500 * math.log(7))

    def test_ordering(self):
        values = [F(0), F(1, 3), F(1, 2), F(9, 10)]
        logs = [LogFloat.from_fraction(v) for v in values]
        assert logs == sorted(logs)


class TestRationalWire:
    @pytest.mark.parametrize(
        "text,expected",
        [("1/3", F(1, 3)), ("-2/8", F(-1, 4)), ("7", F(7)), ("0.25", F(1, 4))],
    )
    def test_parse(self, text, expected):
        assert parse_rational(text) == expected

    def test_format_roundtrip(self):
        for q in (F(0), F(1), F(-3, 7), F(22, 7)):
            assert parse_rational(format_rational(q)) == q

    def test_huge_rational_falls_back_to_decimal(self):
        q = F(3**3000 + 1, 3**3000 * 2)
        text = format_rational(q)
        assert text.startswith("~0.5")

    def test_decimal_string(self):
        assert decimal_string(F(1, 4), 6) == "0.25"
        assert decimal_string(F(-22, 7), 6) == "-3.142857"


class TestIntegerLog2:
    @given(st.integers(1, 400), st.integers(1, 400))
    def test_ceil_log2_definition(self, num, den):
        q = F(num, den)
        m = ceil_log2_frac(q)
        assert F(2) ** m >= q
        assert F(2) ** (m - 1) < q

    @pytest.mark.parametrize(
        "p,bits", [(F(1, 2), 1), (F(1), 0), (F(9, 256), 5), (F(9, 16), 1)]
    )
    def test_neg_log2_ceil(self, p, bits):
        assert neg_log2_ceil(p) == bits

    def test_log2_frac(self):
        assert math.isclose(log2_frac(F(1, 5)), -math.log2(5))


def test_relative_close():
    assert relative_close(1.0, 1.0 + 1e-12)
    assert not relative_close(1.0, 1.01)
    assert relative_close(0.0, 0.0)

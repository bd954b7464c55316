"""Exact ring arithmetic and truncated-series bookkeeping."""

import pytest
from hypothesis import given, strategies as st

from asymhecke.coeffring import (
    GAUSS, Laurent, ONE, PrecisionError, TruncSeries, V, ZERO,
    expand_rational, q_power, v_power,
)

laurents = st.dictionaries(st.integers(-8, 8), st.integers(-9, 9), max_size=6) \
    .map(Laurent)


def naive_product(a: dict, b: dict) -> dict:
    """Independent convolution oracle for multiplication."""
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def test_difference_of_squares():
    assert (V + V ** -1) * (V - V ** -1) == Laurent({2: 1, -2: -1})


def test_zero_absorbs():
    assert (V + ONE) * ZERO == ZERO


def test_gauss_square_expands():
    # (q^(1/2) + q^(-1/2))^2 against the convolution oracle
    square = GAUSS * GAUSS
    assert square.terms == naive_product({1: 1, -1: 1}, {1: 1, -1: 1})
    assert square == q_power(1) + 2 * ONE + q_power(-1)


@given(laurents, laurents)
def test_mul_matches_oracle(a, b):
    assert (a * b).terms == naive_product(a.terms, b.terms)


@given(laurents, laurents, laurents)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(laurents)
def test_zero_terms_never_stored(a):
    assert all(c != 0 for c in a.terms.values())


def test_bar_examples():
    assert v_power(3).bar() == v_power(-3)
    assert (q_power(1) + 2 * ONE).bar() == q_power(-1) + 2 * ONE


@given(laurents)
def test_bar_is_involution(a):
    assert a.bar().bar() == a


@given(laurents, laurents)
def test_bar_is_ring_map(a, b):
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a + b).bar() == a.bar() + b.bar()


class TestExpandRational:
    def test_alternating_expansion(self):
        # q/(1+q) descending is 1 - q^-1 + q^-2 - ...
        s = expand_rational(q_power(1), ONE + q_power(1), "desc", -16)
        want = {-2 * n: (-1) ** n for n in range(9)}
        assert s.terms == want

    def test_doubling_unit(self):
        # (1+q^-1)/(1-q^-1) descending is 1 + 2q^-1 + 2q^-2 + ...
        s = expand_rational(ONE + q_power(-1), ONE - q_power(-1), "desc", -12)
        assert s.terms == {0: 1, -2: 2, -4: 2, -6: 2, -8: 2, -10: 2, -12: 2}

    def test_trivial_quotient(self):
        for direction in ("asc", "desc"):
            s = expand_rational(ONE, ONE, direction, 0)
            assert s.known_part() == ONE

    def test_multiplying_back(self):
        num, den = ONE + q_power(-1), ONE - q_power(-1)
        s = expand_rational(num, den, "desc", -20)
        back = s * den
        assert back.agrees_with(num, through=back.prec)

    def test_rejects_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            expand_rational(ONE, ZERO, "desc", -4)

    def test_rejects_non_unit_lead(self):
        with pytest.raises(ValueError):
            expand_rational(ONE, 2 * ONE, "desc", -4)


class TestSeriesPrecision:
    def test_sum_takes_weaker_range(self):
        a = TruncSeries("desc", -4, {0: 1})
        b = TruncSeries("desc", -2, {-2: 5})
        assert (a + b).prec == -2

    def test_product_range_shifts_by_valuation(self):
        a = TruncSeries("desc", -6, {-1: 1})
        b = TruncSeries("desc", -6, {-2: 3})
        assert (a * b).prec == -7  # -6 + max-exponent of the other factor

    def test_exact_multiplier_shifts_range(self):
        a = TruncSeries("desc", -6, {0: 1})
        assert (a * v_power(-3)).prec == -9

    def test_interrogation_beyond_range_raises(self):
        a = TruncSeries("desc", -4, {0: 1})
        with pytest.raises(PrecisionError):
            a.coeff(-5)
        with pytest.raises(PrecisionError):
            a.agrees_with(ZERO, through=-6)

    def test_beyond_range_terms_dropped(self):
        a = TruncSeries("desc", -2, {0: 1, -4: 7})
        assert a.terms == {0: 1}

    def test_direction_mixing_rejected(self):
        a = TruncSeries("desc", -2, {0: 1})
        b = TruncSeries("asc", 2, {0: 1})
        with pytest.raises(ValueError):
            a + b

    def test_bar_flips_direction(self):
        a = TruncSeries("desc", -3, {-1: 4})
        flipped = a.bar()
        assert flipped.direction == "asc"
        assert flipped.prec == 3
        assert flipped.terms == {1: 4}

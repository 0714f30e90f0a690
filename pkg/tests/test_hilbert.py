from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from awskein.hilbert import (
    N4_DENOMINATOR,
    N4_NUMERATOR,
    DenominatorVanishesAtZero,
    Series1,
    central_ring_series,
    character_route,
    closed_form_h,
    displayed_n4_forms,
    enumerated_series,
    expand_rational,
    multichoose,
    poly_mul,
)
from math import comb


def test_expand_rational_examples():
    assert expand_rational([1], [1, -1], 3).as_ints() == [1, 1, 1, 1]
    assert expand_rational([1, 1], [1, -1], 2).as_ints() == [1, 2, 2]
    assert expand_rational(N4_NUMERATOR, N4_DENOMINATOR, 3).as_ints() == [1, 4, 16, 48]
    with pytest.raises(DenominatorVanishesAtZero):
        expand_rational([1], [0, 1], 3)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5), st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_expansion_inverts_multiplication(num, den):
    if den[0] == 0:
        den[0] = 1
    N = 8
    s = expand_rational(num, den, N)
    back = s * Series1.from_poly(den, N)
    assert back.coeffs == Series1.from_poly(num, N).coeffs


@given(st.integers(1, 6), st.integers(0, 6))
def test_multichoose(n, k):
    assert multichoose(n, k) == comb(n + k - 1, k)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_routes_agree(n):
    closed = closed_form_h(n, 10)
    assert character_route(n, 10, "bivariate") == closed
    assert character_route(n, 10, "convolution") == closed


def test_one_factor_is_polynomial_in_the_casimir():
    assert closed_form_h(1, 6).as_ints() == [1] * 7


def test_n4_series_and_forms():
    assert closed_form_h(4, 0)[0] == 1
    assert closed_form_h(4, 12) == expand_rational(N4_NUMERATOR, N4_DENOMINATOR, 12)
    forms = displayed_n4_forms()
    assert forms["first_from_theorem"] == forms["second"]
    assert poly_mul([1, 2, 1], [1, -2, 4, -2, 1]) == [1, 0, 1, 4, 1, 0, 1]


def test_central_ring_series_counts():
    # degree 2: s_i s_j with i <= j among four, degree 4 adds s1234
    assert central_ring_series(4).as_ints()[:5] == [1, 4, 10, 20, 36]


def test_enumerated_series_matches_closed_form(system):
    s = enumerated_series(system, 12)
    assert s.as_ints()[:4] == [1, 4, 16, 48]
    assert s == closed_form_h(4, 12)


def test_series_arithmetic_respects_truncation():
    a = Series1((1, 2, 3))
    b = Series1((1, 1))
    assert (a * b).N == 1
    assert (a + b).coeffs == (Fraction(2), Fraction(3))

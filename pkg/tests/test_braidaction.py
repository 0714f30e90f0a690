import pytest

from awskein.braidaction import (
    SIMPLE_LOOPS,
    InvalidBraidGenerator,
    beta_endomorphism,
    beta_inverse_on_generator,
    beta_on_generator,
    beta_word,
    verify_braid_action,
    verify_inverse,
)
from awskein.freealg import NCPoly, parse_expr


def s(name):
    return parse_expr(name)


def test_case_formulas():
    assert beta_on_generator(1, frozenset({1})) == s("S2")
    assert beta_on_generator(2, frozenset({2, 3})) == s("S23")
    assert beta_on_generator(2, frozenset({1, 2, 3, 4})) == s("S1234")
    assert beta_on_generator(1, frozenset({3})) == s("S3")


def test_case_three_example(system):
    image = beta_on_generator(2, frozenset({1, 3, 4}))
    assert image == system.normal_form(s("q*S23*S134 - q*S3*S1234 - q^2*S124 - q*S2*S14"))


def test_central_monomial_is_invariant():
    x = s("S1*S2*S3*S4*S1234")
    assert beta_endomorphism(1, x) == x
    assert beta_endomorphism(1, NCPoly.one()) == NCPoly.one()


def test_multiplicative(system):
    x, y = s("S13"), s("S234")
    for i in (1, 2, 3):
        assert beta_endomorphism(i, x * y) == system.normal_form(beta_endomorphism(i, x) * beta_endomorphism(i, y))


def test_degree_grows_by_at_most_one_double_point():
    # a half twist can drag a loop across a puncture, creating one double point
    grown = []
    for A in SIMPLE_LOOPS:
        for i in (1, 2, 3):
            d = beta_on_generator(i, A).total_degree()
            assert d <= len(A) + 2
            if d > len(A):
                grown.append((i, tuple(sorted(A))))
                assert (i in A) != (i + 1 in A)
    assert (1, (2, 3)) in grown and beta_on_generator(1, frozenset({2, 3})) == s("D123")


def test_inverse_twist():
    assert beta_inverse_on_generator(1, frozenset({2})) == s("S1")
    assert beta_word((2, -2), s("S134")) == s("S134")


def test_invalid_generator():
    with pytest.raises(InvalidBraidGenerator):
        beta_on_generator(4, frozenset({1}))
    with pytest.raises(ValueError):
        beta_on_generator(1, frozenset())


def test_full_verification():
    r = verify_braid_action()
    assert r["ok"], r["failures"][:3]
    assert (r["well_defined_checked"], r["braid_checked"], r["far_checked"]) == (207, 30, 15)
    assert verify_inverse()["ok"]

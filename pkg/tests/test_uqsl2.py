import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from awskein.coeff import ONE, Q, QINV, rf_div
from awskein.tensor import TensorElem, generator_coaction_images, verify_hopf
from awskein.uqsl2 import (
    LAMBDA,
    QQI,
    UNIT,
    E,
    F,
    K,
    KINV,
    TruncationExceeded,
    UqElem,
    adjoint,
    antipode,
    casimir,
    casimir_ef,
    coproduct,
    counit,
    grade_decompose,
    tau_L,
)

gens = st.sampled_from([E, F, K, KINV, LAMBDA, F * K])


@st.composite
def elems(draw):
    out = UqElem()
    for _ in range(draw(st.integers(1, 3))):
        t = UqElem.scalar(draw(st.sampled_from([ONE, Q, QINV, Q + QINV])))
        for g in draw(st.lists(gens, max_size=3)):
            t = t * g
        out = out + t
    return out


def pure(a, b):
    return TensorElem.pure((a, b))


def test_defining_relations():
    assert E * F - F * E == (K - KINV) * rf_div(ONE, QQI)
    assert K * E == Q * Q * (E * K)
    assert K * F == QINV * QINV * (F * K)


def test_casimir_two_ways_and_central():
    assert casimir() == casimir_ef()
    for h in (E, F, K):
        assert h * LAMBDA == LAMBDA * h


def test_coproduct_examples():
    assert TensorElem(2, coproduct(KINV)) == pure(KINV, KINV)
    dl, de = TensorElem(2, coproduct(LAMBDA)), TensorElem(2, coproduct(E))
    assert dl * de == de * dl


def test_antipode_and_counit_examples():
    assert antipode(E * F) == antipode(F) * antipode(E) == K * F * E * KINV
    assert antipode(KINV) == K
    assert counit(LAMBDA) == Q + QINV


@settings(max_examples=40, deadline=None)
@given(elems(), elems())
def test_antipode_is_antihomomorphism(x, y):
    assert antipode(x * y) == antipode(y) * antipode(x)


@settings(max_examples=40, deadline=None)
@given(elems(), elems())
def test_coproduct_is_homomorphism(x, y):
    assert TensorElem(2, coproduct(x * y)) == TensorElem(2, coproduct(x)) * TensorElem(2, coproduct(y))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([E, F, K]), elems(), elems())
def test_adjoint_is_module_algebra_action(h, x, y):
    total = UqElem()
    for (m1, m2), c in coproduct(h).items():
        total = total + c * (adjoint(UqElem({m1: ONE}), x) * adjoint(UqElem({m2: ONE}), y))
    assert adjoint(h, x * y) == total


def test_grading():
    assert [g for g, _ in grade_decompose(F * K)] == [-1]
    assert [g for g, _ in grade_decompose(LAMBDA)] == [0]
    for g, comp in grade_decompose(E + F * K + E * E * F):
        assert K * comp == Q ** (2 * g) * (comp * K)


def test_adjoint_examples():
    assert adjoint(K, E) == Q * Q * E
    assert adjoint(E, LAMBDA) == UqElem()
    x = E * F + K
    assert adjoint(UNIT, x) == x


def test_coaction_images():
    images = generator_coaction_images()
    assert TensorElem(2, tau_L(E)) == images["E"] == pure(K, E)
    assert TensorElem(2, tau_L(LAMBDA)) == pure(UNIT, LAMBDA)
    assert TensorElem(2, tau_L(K)) == pure(UNIT, K) - QINV * QQI * QQI * pure(F * K, E)
    assert TensorElem(2, tau_L(F * K)) == images["FK"]


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from([E, F * K, K, LAMBDA]), min_size=2, max_size=4))
def test_coaction_multiplicative(xs):
    prod, img = UNIT, TensorElem.unit(2)
    for x in xs:
        prod = prod * x
        img = img * TensorElem(2, tau_L(x))
    assert TensorElem(2, tau_L(prod)) == img


def test_coaction_needs_local_finiteness():
    with pytest.raises(TruncationExceeded):
        tau_L(KINV, truncation_bound=8)


def test_hopf_suite():
    r = verify_hopf(samples=10)
    assert r["ok"], r["failures"]
    assert r["checked"] == 39

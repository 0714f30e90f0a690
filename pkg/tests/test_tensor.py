import itertools
import random

import pytest

from awskein import tensor
from awskein.coeff import Q, QINV
from awskein.skein import load_appendix_corpus
from awskein.tensor import (
    SkeinImage,
    TensorElem,
    admissible_commutator_pairs,
    bar_coproduct,
    bar_coproduct_formulas,
    bar_coproduct_iterated_at,
    braided_mul,
    build_lambda,
    iterated_coproduct,
    solve_relation_coefficients,
    unbraid,
    unbraid_inverse,
    verify_aw_commutators,
    verify_centralizer,
    verify_iso_corpus,
    verify_iso_n3,
    verify_quasiR,
    verify_unbraiding,
)
from awskein.uqsl2 import LAMBDA, QQI, UNIT, E, F, K, UqElem, coproduct, tau_L


def one(n):
    return TensorElem.unit(n)


def test_iterated_coproduct():
    assert iterated_coproduct(K, 1) == TensorElem(2, coproduct(K))
    assert iterated_coproduct(K, 2) == TensorElem.pure((K, K, K))


def test_lambda_examples():
    assert build_lambda((1,), 3) == TensorElem.pure((LAMBDA, UNIT, UNIT))
    assert build_lambda((1, 2, 3), 3) == iterated_coproduct(LAMBDA, 2)
    # (1 (x) tau_L) Delta(Lambda), grouping by the first factor so that each
    # second-factor piece is locally finite
    expected = TensorElem(3)
    for m1, rest in TensorElem(2, coproduct(LAMBDA)).split_first().items():
        second = UqElem({k[0]: c for k, c in rest.terms.items()})
        expected = expected + TensorElem(1, {(m1,): Q / Q}).tensor(TensorElem(2, tau_L(second)))
    assert build_lambda((1, 3), 3) == expected.simplify()


def test_braided_product_examples():
    x = TensorElem.pure((E, F * K))
    assert braided_mul(one(2), x) == x
    assert braided_mul(TensorElem.pure((LAMBDA, UNIT)), TensorElem.pure((UNIT, LAMBDA))) == TensorElem.pure(
        (LAMBDA, LAMBDA)
    )


def _random_pure(rng, n):
    pool = [E, F * K, K, LAMBDA, UNIT]
    return TensorElem.pure([rng.choice(pool) * rng.choice(pool) for _ in range(n)])


def test_braided_product_associative():
    rng = random.Random(3)
    for _ in range(15):
        n = rng.choice((2, 3))
        x, y, z = (_random_pure(rng, n) for _ in range(3))
        assert braided_mul(braided_mul(x, y), z) == braided_mul(x, braided_mul(y, z))


def test_bar_coproduct_formulas():
    f = bar_coproduct_formulas()
    assert bar_coproduct(K) == f["K"] == TensorElem.pure((K, K)) + QINV * QQI * QQI * TensorElem.pure((K * F, E))
    assert bar_coproduct(E) == f["E"]
    assert bar_coproduct(LAMBDA) == f["Lambda"]


def test_bar_coproduct_multiplicative():
    rng = random.Random(5)
    pool = [E, K * F, K, LAMBDA]
    for _ in range(10):
        x, y = rng.choice(pool), rng.choice(pool)
        assert bar_coproduct(x * y) == braided_mul(bar_coproduct(x), bar_coproduct(y))


def test_iterated_at_and_unbraid():
    assert bar_coproduct_iterated_at(E, (2,), 3) == TensorElem.pure((UNIT, E, UNIT))
    assert unbraid(bar_coproduct_iterated_at(LAMBDA, (1, 3), 3)) == build_lambda((1, 3), 3)
    x = TensorElem.from_uq(E * K)
    assert unbraid(x) == x


def test_unbraid_left_inverse():
    rng = random.Random(11)
    for _ in range(20):
        x = _random_pure(rng, rng.choice((2, 3)))
        assert unbraid_inverse(unbraid(x)) == x


@pytest.mark.parametrize("A", [A for r in range(1, 5) for A in itertools.combinations(range(1, 5), r)])
def test_gamma4_sends_bar_coproduct_to_lambda(A):
    assert unbraid(bar_coproduct_iterated_at(LAMBDA, A, 4)) == build_lambda(A, 4)


def test_quasiR_components():
    r = verify_quasiR(6)
    assert r["ok"], r["failures"]
    assert tensor.theta(1) == TensorElem(2, {((1, 0, 0), (0, 1, 0)): Q / Q})


@pytest.mark.slow
def test_unbraiding_suite():
    r = verify_unbraiding(pairs=200, order=6)
    assert r["ok"], r["failures"][:3]
    assert r["pairs_checked"] == 200 and r["lambda_checked"] == 15


def test_commutators_reversed_orientation_hold():
    for n in (3, 4):
        r = verify_aw_commutators(n, "reversed")
        assert r["ok"], r["failures"][:3]
    assert len(admissible_commutator_pairs(3)) == 3
    assert len(admissible_commutator_pairs(4)) == 24


def test_commutators_literal_orientation_fails_everywhere():
    r = verify_aw_commutators(3, "literal")
    assert r["checked"] == 3
    assert len([f for f in r["failures"] if f["case"] != "commute"]) == 3


def test_centralizer():
    for n in (3, 4):
        assert verify_centralizer(n)["ok"]


def test_iso_oracle_on_corpus():
    r = verify_iso_corpus()
    assert r["checked"] == 81 and r["ok"], r["failures"]
    assert verify_iso_n3()["ok"]


def test_iso_forward_order_is_not_the_isomorphism():
    r = verify_iso_corpus(order="forward")
    assert not r["ok"]


def test_iso_detects_a_perturbed_relation():
    corpus = load_appendix_corpus()
    rel = corpus.section("crossing")[0]
    bad = type(rel)(rel.name, rel.lhs, rel.rhs * Q, rel.cls, rel.section)
    assert not verify_iso_corpus([bad])["ok"]


def test_coefficient_solver_recovers_a_corpus_coefficient():
    from awskein.freealg import parse_expr

    img = SkeinImage()
    lhs = parse_expr("S23*S12")
    cands = [parse_expr(w) for w in ("D123", "S2*S123", "S13", "S1*S3")]
    coeffs, nullity = solve_relation_coefficients(lhs, cands, qrange=2, image=img)
    assert nullity == 0
    assert coeffs == [Q, Q / Q, QINV, Q / Q]

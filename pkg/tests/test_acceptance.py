"""One test per acceptance criterion, each recording a single PASS/FAIL line.

Three literal statements do not hold and are strict expected failures; each
sits next to a passing line for the form that does hold.
"""

import time

import pytest

from awskein.braidaction import beta_on_generator, verify_braid_action
from awskein.freealg import parse_expr
from awskein.hilbert import (
    N4_DENOMINATOR,
    N4_NUMERATOR,
    character_route,
    closed_form_h,
    displayed_n4_forms,
    enumerated_series,
    expand_rational,
)
from awskein.rewrite import check_compatibility, check_confluence, check_strategy_independence
from awskein.skein import build_skein_system, load_appendix_corpus
from awskein.tensor import (
    verify_aw_commutators,
    verify_centralizer,
    verify_hopf,
    verify_iso_corpus,
    verify_iso_n3,
    verify_unbraiding,
)
from awskein.uqsl2 import verify_rea_image

EXPECTED_RULES = 241


@pytest.fixture(scope="module")
def completed():
    t = time.perf_counter()
    sys_ = build_skein_system()
    return sys_, time.perf_counter() - t


def test_criterion_1_confluence(completed, record):
    sys_, build_s = completed
    t = time.perf_counter()
    r = check_confluence(sys_)
    elapsed = build_s + time.perf_counter() - t
    ok = r["ok"] and elapsed < 120
    record(
        "1 confluence",
        ok,
        f"{r['resolved']}/{r['ambiguities']} ambiguities resolved, {len(sys_)} rules "
        f"(stated {EXPECTED_RULES}, deviation logged), {elapsed:.1f} s",
    )
    assert ok, r["failures"][:3]


def test_criterion_2_hilbert_pbw_match(completed, record):
    sys_, _ = completed
    t = time.perf_counter()
    got = enumerated_series(sys_, 12).as_ints()
    want = expand_rational(N4_NUMERATOR, N4_DENOMINATOR, 12).as_ints()
    elapsed = time.perf_counter() - t
    ok = got == want and got[:4] == [1, 4, 16, 48] and elapsed < 300
    record("2 hilbert/PBW", ok, f"degrees 0..12 = {got}, {elapsed:.1f} s")
    assert ok


def test_criterion_3_series_routes(record):
    bad = []
    for n in range(1, 6):
        closed = closed_form_h(n, 10)
        for method in ("bivariate", "convolution"):
            if character_route(n, 10, method) != closed:
                bad.append((n, method))
    forms = displayed_n4_forms()
    ok = not bad and forms["first_from_theorem"] == forms["second"]
    record("3 series routes", ok, "closed = bivariate = convolution for n=1..5 to t^10; theorem-derived n=4 form agrees")
    assert ok, bad


@pytest.mark.xfail(strict=True, reason="the first printed n=4 form expands to 1 - t^2 - t^4 + t^6, not the second form")
def test_criterion_3_literal_n4_displays(record):
    forms = displayed_n4_forms()
    ok = forms["first"] == forms["second"]
    record("3 literal n=4 displays agree", ok, f"first {forms['first']} vs second {forms['second']}")
    assert ok


def test_criterion_4_isomorphism_oracle(record):
    t = time.perf_counter()
    r4 = verify_iso_corpus()
    r3 = verify_iso_n3()
    elapsed = time.perf_counter() - t
    ok = r4["ok"] and r3["ok"] and r4["checked"] == len(load_appendix_corpus()) + 12 and elapsed < 600
    record(
        "4 isomorphism oracle",
        ok,
        f"{r4['checked']} relations in U^(x)4 and {r3['checked']} in U^(x)3 vanish, "
        f"11 documented corrections, {elapsed:.1f} s",
    )
    assert ok, r4["failures"] + r3["failures"]


@pytest.mark.xfail(strict=True, reason="with the stated Hopf conventions the bracket holds as q L_B L_A - q^-1 L_A L_B")
def test_criterion_5_literal_orientation(record):
    reports = [verify_aw_commutators(n, "literal") for n in (3, 4)]
    bad = sum(len([f for f in r["failures"] if f["case"] != "commute"]) for r in reports)
    ok = all(r["ok"] for r in reports)
    record("5 commutators, literal orientation", ok, f"{bad} of 27 admissible pairs leave a residual")
    assert ok


def test_criterion_5_reversed_orientation_and_commuting(record):
    reports = [verify_aw_commutators(n, "reversed") for n in (3, 4)]
    pairs = sum(r["checked"] for r in reports)
    commuting = sum(r["commuting_checked"] for r in reports)
    ok = all(r["ok"] for r in reports) and pairs == 27
    record("5 commutators, reversed orientation", ok, f"{pairs} pairs exact, {commuting} commuting pairs commute")
    assert ok


def test_criterion_6_hopf_coaction_bar_coproduct(record):
    h = verify_hopf(samples=20)
    cz = [verify_centralizer(n) for n in (3, 4)]
    trace = verify_rea_image()["trace"]
    ok = h["ok"] and all(c["ok"] for c in cz) and trace
    record("6 quantum group axioms", ok, f"{h['checked']} identities, centralizer, tr_q = Lambda")
    assert ok, h["failures"]


@pytest.mark.xfail(strict=True, reason="the image matrix satisfies the q^2 determinant and the R <-> R21 reflection equation")
def test_criterion_6_rea_literal(record):
    r = verify_rea_image()
    ok = r["determinant"] and r["reflection_equation"]
    record(
        "6 reflection equation algebra",
        ok,
        f"determinant {r['determinant']}, reflection equation {r['reflection_equation']} "
        f"({len(r['reflection_failures'])} of 16 entries differ)",
    )
    assert ok


def test_criterion_7_unbraiding(record):
    r = verify_unbraiding(pairs=200, order=6)
    record(
        "7 unbraiding",
        r["ok"],
        f"gamma_4 on {r['lambda_checked']} subsets, {r['pairs_checked']} braided pairs, quasi-R to order {r['quasiR_order']}",
    )
    assert r["ok"], r["failures"][:3]


def test_criterion_8_braid_action(record):
    r = verify_braid_action()
    spot = (
        beta_on_generator(1, frozenset({1})) == parse_expr("S2")
        and beta_on_generator(2, frozenset({2, 3})) == parse_expr("S23")
        and beta_on_generator(2, frozenset({1, 2, 3, 4})) == parse_expr("S1234")
    )
    ok = r["ok"] and spot
    record(
        "8 braid action",
        ok,
        f"{r['well_defined_checked']} well-definedness, {r['braid_checked']} braid, {r['far_checked']} far checks",
    )
    assert ok, r["failures"][:3]


def test_criterion_9_order_compatibility(completed, record):
    sys_, _ = completed
    c = check_compatibility(sys_)
    s = check_strategy_independence(sys_, samples=1000, max_degree=8)
    ok = c["ok"] and s["ok"]
    record("9 order compatibility", ok, f"{c['rules']} rules, {len(c['violations'])} violations, 1000 strategy samples")
    assert ok

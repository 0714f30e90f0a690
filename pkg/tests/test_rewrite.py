import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from awskein.coeff import Q, QINV
from awskein.freealg import SIGMA05, Generator, GeneratorTable, NCPoly, parse_expr
from awskein.rewrite import (
    NonPairwiseRule,
    Order,
    Rule,
    RuleSystem,
    StepBudgetExceeded,
    check_compatibility,
    check_confluence,
    check_strategy_independence,
    compare,
    complete_system,
    enumerate_ambiguities,
    irreducible_monomials,
    normal_form,
    random_word,
    rules_from_json,
    rules_to_json,
)
from awskein.skein import load_appendix_corpus

TOY = GeneratorTable([Generator("a", 1, "simple", (1,)), Generator("b", 1, "simple", (2,))])


def toy_word(text):
    return NCPoly.word(list(text), TOY)


def toy_system():
    a, b = TOY.id("a"), TOY.id("b")
    return RuleSystem([Rule((a, b), toy_word("ba"), "seed-appendix"), Rule((b, a), toy_word("a"), "seed-appendix")], TOY)


def test_toy_system_is_confluent():
    sys_ = toy_system()
    amb = enumerate_ambiguities(sys_)
    assert sorted(TOY.word_names(w) for _, _, w in amb) == [["a", "b", "a"], ["b", "a", "b"]]
    assert check_confluence(sys_)["ok"]
    assert sys_.normal_form(toy_word("aba")) == toy_word("aa")


def test_disjoint_rules_have_no_ambiguity():
    a, b = TOY.id("a"), TOY.id("b")
    sys_ = RuleSystem([Rule((a, a), NCPoly({}, TOY), "seed-appendix"), Rule((b, b), NCPoly({}, TOY), "seed-appendix")], TOY)
    assert [w for _, _, w in enumerate_ambiguities(sys_)] == [(a, a, a), (b, b, b)]
    sys2 = RuleSystem([Rule((a, b), NCPoly({}, TOY), "seed-appendix")], TOY)
    assert enumerate_ambiguities(sys2) == []


def test_non_pairwise_rule_rejected():
    a = TOY.id("a")
    with pytest.raises(NonPairwiseRule):
        enumerate_ambiguities(RuleSystem([Rule((a, a, a), NCPoly({}, TOY), "seed-appendix")], TOY))


def test_step_budget():
    a = TOY.id("a")
    loop = RuleSystem([Rule((a, a), toy_word("aa"), "seed-appendix")], TOY, budget=50)
    with pytest.raises(StepBudgetExceeded):
        loop.normal_form(toy_word("aa"))


def test_empty_seed_completes_to_empty_system():
    sys_ = complete_system([], table=TOY)
    assert len(sys_) == 0 and check_confluence(sys_)["ok"]


def test_compare_examples():
    s12s23, s23s12 = parse_expr("S12*S23"), parse_expr("S23*S12")
    assert compare(s12s23, s23s12) is Order.LESS
    assert compare(parse_expr("D123"), s12s23) is Order.LESS
    assert compare(s12s23, s12s23) is Order.EQUAL


def test_self_rule_is_a_violation():
    w = SIGMA05.word(["S12", "S23"])
    r = check_compatibility(RuleSystem([Rule(w, NCPoly.word(["S12", "S23"]), "seed-appendix")]))
    assert not r["ok"]


monomials = st.lists(st.sampled_from(SIGMA05.names), min_size=1, max_size=4).map(NCPoly.word)


@settings(max_examples=300)
@given(monomials, monomials, monomials)
def test_compare_is_a_strict_partial_order(a, b, c):
    assert compare(a, a) is Order.EQUAL
    ab, ba = compare(a, b), compare(b, a)
    flip = {Order.LESS: Order.GREATER, Order.GREATER: Order.LESS}
    assert ba is flip.get(ab, ab)
    if ab is Order.LESS and compare(b, c) is Order.LESS:
        assert compare(a, c) is Order.LESS


def test_normal_form_examples(system):
    paper_form = parse_expr("(1 - q^2)*S1*S3 + (q^-1 - q^3)*S13 + (1 - q^2)*S2*S123 + q^2*S12*S23")
    assert normal_form(parse_expr("S23*S12"), system) == normal_form(paper_form, system)
    # the commuting pair is itself the pair generator P2314
    assert normal_form(parse_expr("S14*S23"), system) == normal_form(parse_expr("S23*S14"), system)
    assert normal_form(parse_expr("S14*S23"), system) == parse_expr("P2314")
    w = next(w for w in ((i, j) for i in range(20) for j in range(20)) if system.is_irreducible(w))
    irreducible = NCPoly.word(SIGMA05.word_names(w))
    assert normal_form(irreducible, system) == irreducible


@st.composite
def sigma_polys(draw):
    rng = random.Random(draw(st.integers(0, 10**6)))
    out = NCPoly({})
    for _ in range(draw(st.integers(1, 3))):
        w = random_word(SIGMA05, rng, 8)
        out = out + draw(st.sampled_from([Q, QINV, Q + QINV, -1])) * NCPoly.word(SIGMA05.word_names(w))
    return out


@settings(max_examples=100, deadline=None)
@given(sigma_polys(), sigma_polys(), st.sampled_from(["S1", "S4", "S1234", "S2*S3"]))
def test_normal_form_idempotent_and_linear(system, x, y, c):
    nx = normal_form(x, system)
    assert normal_form(nx, system) == nx
    assert not any(not system.is_irreducible(w) for w in nx.words())
    cp = parse_expr(c)
    assert normal_form(x + cp * y, system) == nx + cp * normal_form(y, system)


def test_strategy_independence(system):
    r = check_strategy_independence(system, samples=1000, max_degree=8)
    assert r["ok"], r["failures"][:2]


def test_every_corpus_relation_reduces_to_zero(system):
    for rel in load_appendix_corpus():
        assert not normal_form(rel.residual, system), rel.name


def test_golden_system_is_confluent_and_compatible(system):
    assert len(system) == 280
    assert all(len(r.lhs) == 2 for r in system)
    assert check_confluence(system)["ok"]
    assert check_compatibility(system)["ok"]


@pytest.mark.parametrize("seed", range(4))
def test_perturbed_coefficient_breaks_confluence(system, seed):
    rng = random.Random(seed)
    idx = rng.randrange(len(system))
    rules = list(system.rules)
    r = rules[idx]
    key = sorted(r.rhs.terms, key=repr)[0]
    terms = dict(r.rhs.terms)
    terms[key] = terms[key] * Q
    rules[idx] = Rule(r.lhs, NCPoly._raw(terms, r.rhs.table), r.origin)
    mutant = RuleSystem(rules)
    touching = [a for a in enumerate_ambiguities(mutant) if idx in a[:2]]
    report = check_confluence(mutant, touching)
    assert not report["ok"]
    assert report["failures"][0]["nf_via_A"] != report["failures"][0]["nf_via_B"]


def test_irreducible_counts(system):
    counts = irreducible_monomials(system, 3)
    assert counts[0] == 1 and counts[1] == 0 and counts[2] == 6


def test_json_round_trip(system, tmp_path):
    data = rules_to_json(system)
    path = tmp_path / "rules.json"
    path.write_text(json.dumps(data))
    back = rules_from_json(path.read_text())
    assert rules_to_json(back) == data
    with pytest.raises(ValueError):
        rules_from_json({**data, "format": "other"})


@pytest.mark.slow
def test_fresh_completion_matches_golden_file(system):
    from awskein.skein import build_skein_system

    assert rules_to_json(build_skein_system()) == rules_to_json(system)

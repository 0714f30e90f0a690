import json
from importlib import resources

import pytest
from hypothesis import given
from hypothesis import strategies as st

from awskein.coeff import Q, QINV
from awskein.freealg import SIGMA05, parse_expr
from awskein.skein import (
    NotApplicable,
    bullock_przytycki_relations,
    commutator_relation,
    commutator_relations,
    commuting_relations,
    eliminate_extended,
    extended_definitions,
    generator_generating_relations,
    load_appendix_corpus,
    main_text_variants,
    rotate,
    rotate_name,
)


def test_corpus_size_and_sections():
    corpus = load_appendix_corpus()
    assert len(corpus) == 69
    assert len(corpus.section("extended_cubic", "extended_quartic")) == 4
    assert len(corpus.section("commutators")) == 20
    assert len(generator_generating_relations()) == 12


def test_recorded_corrections_are_applied():
    raw = json.loads(resources.files("awskein").joinpath("data/appendix_corpus.json").read_text())
    assert len(raw["corrections"]) == 11
    rhs_text = {(r["lhs"], r["rhs"]) for sec, items in raw.items() if sec != "corrections" for r in items}
    for c in raw["corrections"]:
        entry = [rhs for lhs, rhs in rhs_text if lhs == c["lhs"]]
        assert entry, c["lhs"]
        assert any(c["corrected"] in rhs for rhs in entry)
        assert not any(c["transcribed"] in rhs.replace(c["corrected"], "") for rhs in entry)


@given(st.sampled_from(SIGMA05.names), st.integers(0, 7))
def test_rotation_is_a_permutation_of_order_four(name, k):
    assert rotate_name(rotate_name(name, k), 4 - k % 4) == name
    assert SIGMA05[SIGMA05.id(rotate_name(name, k))].degree == SIGMA05[SIGMA05.id(name)].degree


def test_rotation_symmetry_of_the_corpus(system):
    # every rotated relation still holds in the completed system
    for rel in list(load_appendix_corpus()) + list(generator_generating_relations()):
        for k in (1, 2, 3):
            assert not system.normal_form(rotate(rel.residual, k)), (rel.name, k)


def test_main_text_variant_agrees(system):
    for rel in main_text_variants():
        assert not system.normal_form(rel.residual)


def test_extended_definitions_use_simple_loops_only():
    defs = extended_definitions()
    assert sorted(defs) == sorted(n for n in SIGMA05.names if SIGMA05[SIGMA05.id(n)].kind != "simple")
    for p in defs.values():
        assert all(SIGMA05[i].kind == "simple" for w in p.words() for i in w)
    assert eliminate_extended(parse_expr("D123")) == defs["D123"]


def test_commutator_relation_form():
    lhs, rhs = commutator_relation({1, 2}, {2, 3}, 3)
    assert lhs == {(frozenset({1, 2}), frozenset({2, 3})): Q, (frozenset({2, 3}), frozenset({1, 2})): -QINV}
    assert rhs[(frozenset({1, 3}),)] == Q * Q - QINV * QINV
    with pytest.raises(NotApplicable):
        commutator_relation({1}, {2, 3}, 4)


def test_theorem_relations_hold_in_the_skein_system(system):
    for rel in commutator_relations(4) + commuting_relations(4):
        assert not system.normal_form(rel.residual), rel.name


def test_four_punctured_sphere_relations_are_well_formed():
    rels = bullock_przytycki_relations()
    assert [name for name, _, _ in rels] == ["[x1, x2]_q", "[x2, x3]_q", "[x3, x1]_q", "Omega"]

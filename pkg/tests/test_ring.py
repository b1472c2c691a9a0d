import pytest
from hypothesis import given, settings

from conftest import trees
from fraisse.dyadic import Dyadic
from fraisse.measures import enumerate_measures, evaluate
from fraisse.ring import (
    A,
    B,
    C,
    D,
    E,
    all_generators,
    derive_linear_relations,
    evaluate_relation,
    generator_tree,
    linear_family_instances,
    marked_generator,
    reduce_marked,
    relation_span_report,
    verify_quadratic_relations,
)


def test_generator_count():
    for n in (1, 2, 3):
        assert len(all_generators(n)) == 1 + n + 2 * n * n + n**3


@given(trees(max_leaves=7))
@settings(max_examples=150)
def test_local_rule_agrees_with_literal_reduction(t):
    for a in t.leaves:
        assert marked_generator(t, a) == reduce_marked(t, a)
        assert marked_generator(t, a) == reduce_marked(t, a, choose=max)


def test_templates_round_trip():
    for g in all_generators(2):
        tree, leaf = generator_tree(g)
        assert marked_generator(tree, leaf) == g


def test_one_color_relations():
    derived = derive_linear_relations(1)
    assert len(derived) == 3
    rep = relation_span_report(derived, linear_family_instances(1))
    assert rep["same_span"]


@pytest.mark.parametrize("n, rank", [(2, 13), (3, 37)])
def test_derived_relations_span_the_families(n, rank):
    rep = relation_span_report(derive_linear_relations(n), linear_family_instances(n))
    assert rep["same_span"] and rep["rank_families"] == rank
    assert rep["families_found_literally"] == rep["family_instances"]


@pytest.mark.parametrize("n", [1, 2])
def test_every_measure_satisfies_all_families(n):
    for mu in enumerate_measures(n):
        assert all(row["pass"] for row in verify_quadratic_relations(n, mu))
        for rel in linear_family_instances(n) + derive_linear_relations(n):
            lhs, rhs = evaluate_relation(rel, mu)
            assert lhs == rhs, rel


def test_generator_values_match_small_trees():
    for mu in enumerate_measures(2):
        assert mu.value(A()) == evaluate(mu, "*")
        assert mu.value(B(1)) * mu.A == evaluate(mu, "(1 * *)")
        assert mu.value(C(1, 2)) * mu.value(B(2)) * mu.A == evaluate(mu, "(1 * (2 * *))")
        assert mu.value(E(1, 2, 1)) == Dyadic(0)

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import trees
from fraisse.trees import (
    ColoredTree,
    TreeSyntaxError,
    automorphism_count,
    canonical_form,
    canonicalize,
    enumerate_structures,
    is_isomorphic,
    labeled_count,
    labeled_key,
    meet_color,
    parse_tree,
    relabel,
    relation_S,
    remove_leaf,
    restrict,
    structure_of,
    to_string,
    tree_from_structure,
)
from oracles import isomorphic_by_bijection, labeled_trees


def test_parse_examples():
    t = parse_tree("(1 * (2 * *))")
    assert t.leaf_count == 3
    assert meet_color(t, 1, 2) == 2 and meet_color(t, 0, 2) == 1
    assert relation_S(t, 0, 1, 2)
    assert parse_tree("()").leaf_count == 0
    assert parse_tree("*").leaf_count == 1


@pytest.mark.parametrize(
    "text, position",
    [("(1 * *", 6), ("(1 *)", 4), ("(x * *)", 1), ("(1 * * *)", 7), ("", 0), ("(0 * *)", 1)],
)
def test_parse_errors_report_position(text, position):
    with pytest.raises(TreeSyntaxError) as info:
        parse_tree(text)
    assert info.value.position == position


def test_color_bound():
    with pytest.raises(TreeSyntaxError):
        parse_tree("(3 * *)", n=2)


@given(trees())
def test_string_round_trip(t):
    assert canonicalize(parse_tree(to_string(t))) == canonicalize(t)


@given(trees(), st.randoms(use_true_random=False))
def test_canonical_form_is_invariant(t, rnd):
    perm = list(t.leaves)
    rnd.shuffle(perm)
    moved = relabel(t, dict(zip(t.leaves, perm)))
    assert canonicalize(moved) == canonicalize(t)
    canon, mapping = canonical_form(t)
    assert labeled_key(relabel(t, mapping).shape) == labeled_key(canon.shape)


@given(trees(max_leaves=6), st.randoms(use_true_random=False))
def test_restriction_is_functorial(t, rnd):
    outer = [a for a in t.leaves if rnd.random() < 0.7]
    inner = [a for a in outer if rnd.random() < 0.7]
    assert restrict(restrict(t, outer), inner) == restrict(t, inner)
    for a in t.leaves:
        assert remove_leaf(t, a) == restrict(t, set(t.leaves) - {a})


@given(trees(max_leaves=6))
def test_structure_round_trip(t):
    assert labeled_key(tree_from_structure(structure_of(t)).shape) == labeled_key(t.shape)


@pytest.mark.parametrize("n, m", [(1, 4), (2, 4), (2, 5), (3, 3)])
def test_enumeration_matches_labelled_oracle(n, m):
    classes = enumerate_structures(n, m)
    assert len({labeled_key(t.shape) for t in classes}) == len(classes)
    brute = labeled_trees(m, n)
    assert labeled_count(n, m) == len(brute)
    buckets = {}
    for t in brute:
        buckets.setdefault(to_string(canonicalize(t)), 0)
    assert set(buckets) == {to_string(t) for t in classes}


def test_isomorphism_agrees_with_bijection_search():
    pool = enumerate_structures(2, 4) + [relabel(t, {a: 3 - a for a in t.leaves}) for t in enumerate_structures(2, 4)]
    for a, b in itertools.product(pool[:10], pool):
        assert is_isomorphic(a, b) == isomorphic_by_bijection(a, b)


@given(trees(max_leaves=6, max_colors=2))
@settings(max_examples=60)
def test_automorphisms_by_brute_force(t):
    ref = labeled_key(t.shape)
    brute = sum(
        1 for p in itertools.permutations(t.leaves) if labeled_key(relabel(t, dict(zip(t.leaves, p))).shape) == ref
    )
    assert automorphism_count(t) == brute
    assert brute & (brute - 1) == 0

import pytest

from fraisse.amalgam import (
    AmalgamationDiagram,
    EmbeddingError,
    SizeBoundError,
    amalgamations_over_empty,
    are_separated,
    diagonal,
    diagrams_up_to,
    embeddings,
    enumerate_amalgamations,
    enumerate_triple,
    is_embedding,
)
from fraisse.subclass import enumerate_subclasses, subclass_membership
from fraisse.trees import enumerate_structures, labeled_key, parse_tree, relabel
from oracles import brute_amalgamations, injections


def keys(found):
    return {a.key() for a in found}


@pytest.mark.parametrize("n, total, expected", [(1, 4, 19), (1, 5, 117), (2, 4, 117)])
def test_matches_brute_force_on_every_small_diagram(n, total, expected):
    checked = 0
    for d in diagrams_up_to(n, total):
        assert keys(enumerate_amalgamations(d, n=n)) == brute_amalgamations(d, n)
        checked += 1
    assert checked == expected


def test_point_self_amalgamations_count():
    c11 = parse_tree("(1 * *)")
    for n in (1, 2, 3):
        assert len(amalgamations_over_empty(c11, c11, n=n)) >= 1
    point = parse_tree("*")
    assert len(amalgamations_over_empty(point, point, n=1)) == 2
    assert len(amalgamations_over_empty(point, point, n=3)) == 4


def test_embeddings_match_injection_search():
    for sub in enumerate_structures(2, 2) + enumerate_structures(2, 3):
        for sup in enumerate_structures(2, 4):
            fast = {tuple(sorted(e.items())) for e in embeddings(sub, sup)}
            slow = {tuple(sorted(m.items())) for m in injections(sub.leaves, sup.leaves) if is_embedding(sub, sup, m)}
            assert fast == slow


def test_subclass_pruning_equals_filtering():
    for s in enumerate_subclasses(2):
        for d in diagrams_up_to(2, 4):
            if not (subclass_membership(s, d.left) and subclass_membership(s, d.right)):
                continue
            pruned = keys(enumerate_amalgamations(d, n=2, restrict_to=s))
            filtered = {a.key() for a in enumerate_amalgamations(d, n=2) if subclass_membership(s, a.total)}
            assert pruned == filtered


def test_invalid_diagram_and_bound():
    x = parse_tree("(1 * (2 * *))")
    with pytest.raises(EmbeddingError):
        AmalgamationDiagram.build(parse_tree("(2 * *)"), x, x, {0: 0, 1: 1}, {0: 1, 1: 2})
    with pytest.raises(SizeBoundError):
        enumerate_amalgamations(AmalgamationDiagram.disjoint(x, x), max_leaves=5)


def test_hom_symmetry_and_diagonal():
    for x in enumerate_structures(2, 2):
        for y in enumerate_structures(2, 3):
            forward = amalgamations_over_empty(x, y, n=2, max_leaves=None)
            backward = amalgamations_over_empty(y, x, n=2, max_leaves=None)
            assert len(forward) == len(backward)
            assert {a.swapped().key() for a in forward} == keys(backward)
        assert diagonal(x) in amalgamations_over_empty(x, x, n=2)


def test_triples_induce_their_factors():
    x = parse_tree("(1 * *)")
    y = parse_tree("*")
    for y12 in amalgamations_over_empty(x, y, n=2):
        for y23 in amalgamations_over_empty(y, x, n=2):
            for triple, y13 in enumerate_triple(y12, y23, n=2):
                assert triple.induced(0, 1) == y12
                assert triple.induced(1, 2) == y23
                assert triple.induced(0, 2) == y13


def test_separation():
    t = parse_tree("(1 (1 * *) (1 * (1 * *)))")
    assert not are_separated(t, 0, 1)  # same parent
    assert not are_separated(t, 2, 3)  # adjacent parents
    assert are_separated(t, 0, 2)
    assert are_separated(t, 0, 3)
    with pytest.raises(ValueError):
        are_separated(t, 1, 1)

import itertools
import random
from fractions import Fraction

import pytest

from fraisse.amalgam import diagonal
from fraisse.category import (
    HomElement,
    PermObject,
    compose,
    double_factorial,
    end_dimension,
    end_dimension_by_orbits,
    gram_entries,
    gram_matrix_by_composition,
    gram_semisimplicity,
    hom_basis,
    render_large_fraction,
    stirling2,
    tensor_objects,
    tensor_power,
    trace,
)
from fraisse.dyadic import Dyadic
from fraisse.linalg import determinant
from fraisse.measures import Measure, enumerate_measures, evaluate
from fraisse.subclass import enumerate_induced
from fraisse.trees import enumerate_structures, parse_tree

ONE = enumerate_measures(1)
TWO = enumerate_measures(2)


def objects(n, m):
    return [t for k in range(m + 1) for t in enumerate_structures(n, k)]


def basis(x, y, n):
    return [HomElement.basis(a) for a in hom_basis(x, y, n, None, 10**9)]


def associative(mu, objs, n):
    for x, y, z, w in itertools.product(objs, repeat=4):
        for f, g, h in itertools.product(basis(x, y, n), basis(y, z, n), basis(z, w, n)):
            if compose(mu, h, compose(mu, g, f)) != compose(mu, compose(mu, h, g), f):
                return False
    return True


@pytest.mark.parametrize("index", range(4))
def test_associativity_one_color_up_to_two_leaves(index):
    assert associative(ONE[index], objects(1, 2), 1)


def test_associativity_detects_a_fake_measure():
    real = ONE[3]
    fake = Measure(1, {1: Dyadic(1)}, {(1, 1): Dyadic(1)}, {1: Dyadic(3)}, real.code)
    assert not associative(fake, objects(1, 2), 1)


def test_identity_and_trace_two_colors():
    for x in objects(2, 2):
        ident = HomElement.identity(x)
        for mu in TWO:
            assert trace(mu, ident) == evaluate(mu, x)
        for y in objects(2, 2):
            for f in basis(x, y, 2):
                for mu in TWO[::5]:
                    assert compose(mu, f, ident) == f
                    assert compose(mu, HomElement.identity(y), f) == f


def test_hom_dimensions_are_symmetric():
    for x, y in itertools.combinations(objects(2, 3), 2):
        assert len(hom_basis(x, y, 2, None, 10**9)) == len(hom_basis(y, x, 2, None, 10**9))


def test_trace_form_is_symmetric(rng):
    xs = objects(2, 2)
    for _ in range(40):
        x, y = rng.choice(xs), rng.choice(xs)
        mu = rng.choice(TWO)
        f = rng.choice(basis(x, y, 2))
        g = rng.choice(basis(y, x, 2))
        assert trace(mu, compose(mu, g, f)) == trace(mu, compose(mu, f, g))


@pytest.mark.parametrize("text", ["*", "(1 * *)"])
def test_sparse_gram_matches_composition(text):
    x = parse_tree(text)
    for mu in ONE:
        basis_list, entries = gram_entries(mu, x)
        dense = gram_matrix_by_composition(mu, x)
        for p, q in itertools.product(range(len(basis_list)), repeat=2):
            assert entries.get((p, q), Dyadic(0)) == dense[p][q]


def test_gram_on_regular_point():
    res = gram_semisimplicity(ONE[3], parse_tree("*"))
    assert res["dimension"] == 2 and res["nondegenerate"]
    assert res["determinant"] == "-2^-3"
    dense = gram_matrix_by_composition(ONE[3], parse_tree("*"))
    assert determinant([[v.to_fraction() for v in row] for row in dense]) == Fraction(-1, 8)


def test_gram_degenerates_outside_support():
    zero = next(mu for mu in ONE if mu.A == 1 and mu.B[1] == 0)
    assert not gram_semisimplicity(zero, parse_tree("(1 * *)"))["nondegenerate"]


def test_gram_in_subclass_two_colors():
    spec = enumerate_induced(2)[3]
    res = gram_semisimplicity(spec.measure(), parse_tree("(1 * *)"), spec.subclass())
    assert res["nondegenerate"]


def test_tensor_powers_and_orbit_count():
    point = PermObject.of("*")
    for m in range(1, 5):
        power = tensor_power(point, m, n=1)
        top = sum(k for t, k in power.summands() if t.leaf_count == m)
        assert top == double_factorial(2 * m - 3)
        assert end_dimension(power, n=1) == end_dimension_by_orbits(m)
    assert tensor_objects(PermObject.unit(), point) == point


def test_helpers():
    assert [stirling2(4, k) for k in range(5)] == [0, 1, 7, 6, 1]
    assert double_factorial(-1) == 1 and double_factorial(7) == 105
    assert render_large_fraction(Fraction(-1, 8)) == "-2^-3"
    assert render_large_fraction(Fraction(3, 4)) == "3/4"
    assert render_large_fraction(Fraction(0)) == "0"


def test_hom_element_json():
    x = parse_tree("(1 * *)")
    data = HomElement.identity(x).to_json()
    assert data["source"] == data["target"] == "(1 * *)"
    assert data["terms"] == [{"amalgamation": diagonal(x).describe(), "coeff": {"m": "1", "e": 0}}]

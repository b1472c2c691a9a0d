import random
from array import array

import pytest

from conftest import random_shape
from fraisse import _kernels
from fraisse.amalgam import _to_arrays
from fraisse.trees import ColoredTree

BACKENDS = _kernels.backends()
needs_both = pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernel not built")


def sample_trees(count, seed=7):
    rng = random.Random(seed)
    for _ in range(count):
        m = rng.randint(2, 9)
        yield rng, ColoredTree(random_shape(rng, list(range(m)), 3))


def test_backend_selection_reports_a_known_name():
    assert _kernels.BACKEND in BACKENDS


@needs_both
def test_meet_and_outlier_agree():
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    for rng, t in sample_trees(200):
        par, col, leaf, count = _to_arrays(t, 2 * t.leaf_count)
        nodes = list(leaf.values())
        for _ in range(20):
            p, q, r = (rng.choice(nodes) for _ in range(3))
            assert py.meet(par, p, q) == cy.meet(par, p, q)
            assert py.depth(par, p) == cy.depth(par, p)
            if len({p, q, r}) == 3:
                assert py.outlier(par, p, q, r) == cy.outlier(par, p, q, r)


@needs_both
def test_checks_agree():
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    for rng, t in sample_trees(200, seed=11):
        par, col, leaf, count = _to_arrays(t, 2 * t.leaf_count)
        nodes = list(leaf.values())
        node = nodes[0]
        others = array("i", nodes[1:])
        k = len(others)
        exp_col = array("i", [py.meet(par, node, o) and col[py.meet(par, node, o)] for o in others])
        exp_out = array("i", [0] * (k * k))
        for a in range(k):
            for b in range(a + 1, k):
                exp_out[a * k + b] = py.outlier(par, node, others[a], others[b])
        if rng.random() < 0.5 and k:
            exp_col[rng.randrange(k)] += 1
        args = (par, col, node, others, exp_col, exp_out, k)
        assert bool(py.check_extension(*args)) == bool(cy.check_extension(*args))
        eps = array("i", [rng.randint(0, 1) for _ in range(16)])
        leaves = array("i", nodes)
        assert bool(py.triples_allowed(par, col, node, leaves, len(nodes), eps, 4)) == bool(
            cy.triples_allowed(par, col, node, leaves, len(nodes), eps, 4)
        )

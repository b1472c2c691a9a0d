"""Amalgamations of tree structures over a common substructure.

An amalgamation of ``X`` and ``Y`` over ``Z`` is a tree ``Z'`` with embeddings
of ``X`` and ``Y`` that agree on ``Z`` and jointly cover ``Z'``.  Two of them
are the same when an isomorphism of the totals commutes with both legs.  Since
the legs cover the total, such an isomorphism is forced, so a class is the
same thing as the total tree with every leaf labelled by its (x, y)
preimages.

The search grows ``Z'`` from ``X`` by placing the right-only leaves of ``Y``
one at a time: each one is either glued onto an unused left-only leaf or
inserted as a new leaf on some edge.  After each step only the pairs and
triples through the new leaf need checking, which the kernels do.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from itertools import combinations

from . import _kernels as kernels
from .trees import (
    EMPTY,
    ColoredTree,
    labeled_key,
    relabel,
    restrict,
)

DEFAULT_MAX_LEAVES = 8
UNMATCHED = -1


class SizeBoundError(ValueError):
    pass


class EmbeddingError(ValueError):
    pass


def is_embedding(sub: ColoredTree, sup: ColoredTree, leaf_map: dict) -> bool:
    """Does ``leaf_map`` (sub leaf -> sup leaf) preserve S and meet colors?"""
    if set(leaf_map) != set(sub.leaf_paths):
        return False
    image = list(leaf_map.values())
    if len(set(image)) != len(image) or not set(image) <= set(sup.leaf_paths):
        return False
    inverse = {v: k for k, v in leaf_map.items()}
    return labeled_key(restrict(sup, image).shape, inverse) == labeled_key(sub.shape)


@dataclass(frozen=True)
class AmalgamationDiagram:
    base: ColoredTree
    left: ColoredTree
    right: ColoredTree
    left_emb: tuple  # sorted (base leaf, left leaf) pairs
    right_emb: tuple

    @classmethod
    def build(cls, base, left, right, left_emb=None, right_emb=None) -> "AmalgamationDiagram":
        left_emb = dict(left_emb or {})
        right_emb = dict(right_emb or {})
        diagram = cls(base, left, right, tuple(sorted(left_emb.items())), tuple(sorted(right_emb.items())))
        diagram.validate()
        return diagram

    @classmethod
    def disjoint(cls, left, right) -> "AmalgamationDiagram":
        return cls(EMPTY, left, right, (), ())

    def validate(self) -> None:
        if not is_embedding(self.base, self.left, dict(self.left_emb)):
            raise EmbeddingError("left map is not an embedding of the base")
        if not is_embedding(self.base, self.right, dict(self.right_emb)):
            raise EmbeddingError("right map is not an embedding of the base")

    def total_leaves(self) -> int:
        return self.left.leaf_count + self.right.leaf_count - self.base.leaf_count


@dataclass(frozen=True)
class Amalgamation:
    """A total tree with leaves ``0..k-1`` plus the two legs."""

    left: ColoredTree
    right: ColoredTree
    total: ColoredTree
    from_left: tuple  # sorted (left leaf, total leaf)
    from_right: tuple

    @property
    def left_map(self) -> dict:
        return dict(self.from_left)

    @property
    def right_map(self) -> dict:
        return dict(self.from_right)

    def key(self):
        return (str(self.total), self.from_left, self.from_right)

    def is_diagonal(self) -> bool:
        """True when both legs are the same identification of equal factors."""
        return (
            self.left_map.keys() == self.right_map.keys()
            and self.from_left == self.from_right
            and self.total.leaf_count == self.left.leaf_count
        )

    def swapped(self) -> "Amalgamation":
        return make_amalgamation(self.right, self.left, self.total, self.right_map, self.left_map)

    def describe(self) -> str:
        """Total tree with each leaf written as ``x/y`` (``-`` if absent)."""
        left = {v: k for k, v in self.from_left}
        right = {v: k for k, v in self.from_right}

        def go(node):
            if isinstance(node, int):
                a = left.get(node)
                b = right.get(node)
                return f"{'-' if a is None else a}/{'-' if b is None else b}"
            return f"({node[0]} {go(node[1])} {go(node[2])})"

        return "()" if self.total.shape is None else go(self.total.shape)


def make_amalgamation(left, right, total, from_left: dict, from_right: dict) -> Amalgamation:
    """Normalize an amalgamation given with arbitrary total leaf ids."""
    inv_left = {v: k for k, v in from_left.items()}
    inv_right = {v: k for k, v in from_right.items()}
    tags = {leaf: (inv_left.get(leaf, UNMATCHED), inv_right.get(leaf, UNMATCHED)) for leaf in total.leaf_paths}

    def order(node):
        if isinstance(node, int):
            return node, (0, tags[node])
        a, ka = order(node[1])
        b, kb = order(node[2])
        if kb < ka:
            a, b, ka, kb = b, a, kb, ka
        return (node[0], a, b), (1, node[0], ka, kb)

    if total.shape is None:
        return Amalgamation(left, right, EMPTY, (), ())
    shape, _ = order(total.shape)
    renumber = {}

    def number(node):
        if isinstance(node, int):
            renumber[node] = len(renumber)
            return renumber[node]
        return (node[0], number(node[1]), number(node[2]))

    canon = ColoredTree(number(shape))
    return Amalgamation(
        left,
        right,
        canon,
        tuple(sorted((k, renumber[v]) for k, v in from_left.items())),
        tuple(sorted((k, renumber[v]) for k, v in from_right.items())),
    )


def diagonal(x: ColoredTree) -> Amalgamation:
    ident = {leaf: leaf for leaf in x.leaf_paths}
    return make_amalgamation(x, x, x, ident, ident)


# ------------------------------------------------------------ array state


def _to_arrays(t: ColoredTree, capacity: int):
    par = array("i", [-1] * capacity)
    col = array("i", [0] * capacity)
    leaf_node = {}
    count = 0

    def go(node, parent):
        nonlocal count
        me = count
        count += 1
        par[me] = parent
        if isinstance(node, int):
            leaf_node[node] = me
        else:
            col[me] = node[0]
            go(node[1], me)
            go(node[2], me)

    if t.shape is not None:
        go(t.shape, -1)
    return par, col, leaf_node, count


def _from_arrays(par, col, count):
    """Nested-tuple tree whose leaf ids are the node indices."""
    children = {}
    root = None
    for v in range(count):
        if par[v] < 0:
            root = v
        else:
            children.setdefault(par[v], []).append(v)

    def go(v):
        kids = children.get(v)
        if not kids:
            return v
        return (col[v], go(kids[0]), go(kids[1]))

    return ColoredTree(None if root is None else go(root))


class _Expectations:
    """Meet colors and outlier codes of the right factor, by leaf."""

    def __init__(self, t: ColoredTree):
        self.par, self.col, self.node, _ = _to_arrays(t, 2 * max(t.leaf_count, 1))

    def color(self, a, b):
        return self.col[kernels.meet(self.par, self.node[a], self.node[b])]

    def outlier(self, a, b, c):
        return kernels.outlier(self.par, self.node[a], self.node[b], self.node[c])


def _eps_table(allowed_triples, colors, n):
    stride = n + 1
    eps = array("i", [0] * (stride * stride))
    for i, j in allowed_triples:
        eps[i * stride + j] = 1
    return eps, stride


def enumerate_amalgamations(
    d: AmalgamationDiagram,
    max_leaves: int | None = DEFAULT_MAX_LEAVES,
    n: int | None = None,
    restrict_to=None,
) -> list:
    """All amalgamations of ``d.left`` and ``d.right`` over ``d.base``.

    ``n`` is the number of colors available for new nodes (defaults to the
    largest color in the diagram).  ``restrict_to`` may be a subclass-like
    object with ``allowed_triples`` and ``colors``; the search then keeps only
    totals inside it (valid because such classes are closed under
    substructures).
    """
    left, right = d.left, d.right
    if max_leaves is not None and d.total_leaves() > max_leaves:
        raise SizeBoundError(f"{d.total_leaves()} total leaves exceeds bound {max_leaves}")
    if n is None:
        n = max(left.max_color(), right.max_color(), d.base.max_color(), 1)
    left_emb, right_emb = dict(d.left_emb), dict(d.right_emb)

    capacity = 2 * (left.leaf_count + right.leaf_count) + 2
    par, col, x_node, count = _to_arrays(left, capacity)
    expect = _Expectations(right)

    placed = {right_emb[z]: x_node[left_emb[z]] for z in left_emb}
    used_x = {left_emb[z] for z in left_emb}
    free_x = [x for x in sorted(left.leaf_paths) if x not in used_x]
    pending = [y for y in sorted(right.leaf_paths) if y not in placed]

    colors = range(1, n + 1)
    eps = stride = None
    if restrict_to is not None:
        colors = [c for c in colors if c in restrict_to.colors]
        eps, stride = _eps_table(restrict_to.allowed_triples(), restrict_to.colors, n)

    results = []
    order = list(placed)  # right leaves in placement order

    leaves = sorted(x_node.values())

    def emit():
        total = _from_arrays(par, col, count)
        results.append(make_amalgamation(left, right, total, x_node, dict(placed)))

    def place(idx):
        nonlocal count
        if idx == len(pending):
            emit()
            return
        y = pending[idx]
        k = len(order)
        others = array("i", [placed[u] for u in order])
        exp_col = array("i", [expect.color(y, u) for u in order])
        exp_out = array("i", [0] * (k * k))
        for t, s in combinations(range(k), 2):
            exp_out[t * k + s] = expect.outlier(y, order[t], order[s])

        # glue onto an unused left-only leaf
        for x in free_x:
            if x in used_x:
                continue
            node = x_node[x]
            if kernels.check_extension(par, col, node, others, exp_col, exp_out, k):
                used_x.add(x)
                placed[y] = node
                order.append(y)
                place(idx + 1)
                order.pop()
                del placed[y]
                used_x.discard(x)

        # new leaf
        if count == 0:
            par[0] = -1
            col[0] = 0
            count = 1
            leaves.append(0)
            placed[y] = 0
            order.append(y)
            place(idx + 1)
            order.pop()
            del placed[y]
            leaves.pop()
            count = 0
            return

        forced = {}
        for t, u in enumerate(order):
            v = placed[u]
            while v >= 0 and v not in forced:
                forced[v] = exp_col[t]
                v = par[v]
        for v in range(count):
            choices = (forced[v],) if v in forced else colors
            for c in choices:
                if eps is not None and c not in colors:
                    continue
                w, leaf = count, count + 1
                par[w] = par[v]
                par[v] = w
                par[leaf] = w
                col[w] = c
                col[leaf] = 0
                count += 2
                leaves.append(leaf)
                ok = kernels.check_extension(par, col, leaf, others, exp_col, exp_out, k)
                if ok and eps is not None:
                    nodes = array("i", leaves)
                    ok = kernels.triples_allowed(par, col, leaf, nodes, len(nodes), eps, stride)
                if ok:
                    placed[y] = leaf
                    order.append(y)
                    place(idx + 1)
                    order.pop()
                    del placed[y]
                leaves.pop()
                count -= 2
                par[v] = par[w]

    if eps is not None and left.shape is not None:
        # the starting tree must itself lie in the class
        nodes = array("i", sorted(x_node.values()))
        for node in nodes:
            if not kernels.triples_allowed(par, col, node, nodes, len(nodes), eps, stride):
                return []
        if any(c not in colors for c in left.color_counts()):
            return []

    place(0)
    results.sort(key=Amalgamation.key)
    return results


def amalgamations_over_empty(x: ColoredTree, y: ColoredTree, **kwargs) -> list:
    return enumerate_amalgamations(AmalgamationDiagram.disjoint(x, y), **kwargs)


# ------------------------------------------------------------ separation


def neighbor_path(t: ColoredTree, a: int) -> tuple:
    return t.leaf_paths[a][:-1]


def are_separated(t: ColoredTree, a: int, b: int) -> bool:
    """True iff the parent nodes of ``a`` and ``b`` are neither equal nor adjacent."""
    if a == b:
        raise ValueError("need two distinct leaves")
    pa, pb = neighbor_path(t, a), neighbor_path(t, b)
    if pa == pb:
        return False
    if len(pa) > len(pb):
        pa, pb = pb, pa
    return not (len(pb) == len(pa) + 1 and pb[: len(pa)] == pa)


# ------------------------------------------------------------ triples


@dataclass(frozen=True)
class TripleAmalgamation:
    """A total tree with embeddings of three factors."""

    factors: tuple  # (x1, x2, x3)
    total: ColoredTree
    legs: tuple  # three sorted tuples of (factor leaf, total leaf)

    def induced(self, i: int, j: int) -> Amalgamation:
        """The amalgamation of factors ``i`` and ``j`` sitting inside the total."""
        li, lj = dict(self.legs[i]), dict(self.legs[j])
        image = set(li.values()) | set(lj.values())
        return make_amalgamation(self.factors[i], self.factors[j], restrict(self.total, image), li, lj)

    def image(self, i: int, j: int) -> set:
        return set(dict(self.legs[i]).values()) | set(dict(self.legs[j]).values())


def _glue(first: Amalgamation, first_side: int, second: Amalgamation, second_side: int, **kwargs):
    """Amalgamate two amalgamations along a shared factor."""
    shared = (first.left, first.right)[first_side]
    emb1 = (first.left_map, first.right_map)[first_side]
    emb2 = (second.left_map, second.right_map)[second_side]
    diagram = AmalgamationDiagram(shared, first.total, second.total, tuple(sorted(emb1.items())), tuple(sorted(emb2.items())))
    return enumerate_amalgamations(diagram, **kwargs)


def enumerate_triple(y12: Amalgamation, y23: Amalgamation, **kwargs) -> list:
    """Totals receiving x1, x2, x3 that induce ``y12`` and ``y23``.

    Returns pairs ``(triple, y13)`` with ``y13`` the induced amalgamation of
    x1 and x3.
    """
    if y12.right != y23.left:
        raise ValueError("middle factors differ")
    kwargs.setdefault("max_leaves", None)
    out = []
    for z in _glue(y12, 1, y23, 0, **kwargs):
        into_a, into_b = z.left_map, z.right_map
        legs = (
            {x: into_a[t] for x, t in y12.left_map.items()},
            {x: into_a[t] for x, t in y12.right_map.items()},
            {x: into_b[t] for x, t in y23.right_map.items()},
        )
        triple = TripleAmalgamation(
            (y12.left, y12.right, y23.right), z.total, tuple(tuple(sorted(leg.items())) for leg in legs)
        )
        out.append((triple, triple.induced(0, 2)))
    return out


def enumerate_triple_with_outer(y12: Amalgamation, y13: Amalgamation, **kwargs) -> list:
    """Totals inducing ``y12`` and ``y13``; returns ``(triple, y23)`` pairs."""
    if y12.left != y13.left:
        raise ValueError("first factors differ")
    kwargs.setdefault("max_leaves", None)
    out = []
    for z in _glue(y12, 0, y13, 0, **kwargs):
        into_a, into_b = z.left_map, z.right_map
        legs = (
            {x: into_a[t] for x, t in y12.left_map.items()},
            {x: into_a[t] for x, t in y12.right_map.items()},
            {x: into_b[t] for x, t in y13.right_map.items()},
        )
        triple = TripleAmalgamation(
            (y12.left, y12.right, y13.right), z.total, tuple(tuple(sorted(leg.items())) for leg in legs)
        )
        out.append((triple, triple.induced(1, 2)))
    return out


def _relation_tables(t: ColoredTree):
    """Meet colors of leaf pairs and, per triple, the leaf split off first."""
    paths = t.leaf_paths
    depth = {}
    color = {}
    for a, b in combinations(t.leaves, 2):
        shared = 0
        for x, y in zip(paths[a], paths[b]):
            if x != y:
                break
            shared += 1
        depth[a, b] = depth[b, a] = shared
        color[a, b] = color[b, a] = t.node_at(paths[a][:shared])[0]
    return depth, color


def _outlier(depth, a, b, c):
    ab, ac, bc = depth[a, b], depth[a, c], depth[b, c]
    if ab > ac:
        return c
    if ac > ab:
        return b
    return a if bc > ab else None


def embeddings(sub: ColoredTree, sup: ColoredTree):
    """Every embedding of ``sub`` into ``sup`` as a dict of leaves."""
    src = sub.leaves
    sub_depth, sub_color = _relation_tables(sub)
    sup_depth, sup_color = _relation_tables(sup)
    image: list = []

    def fits(k, y):
        a = src[k]
        for j in range(k):
            if sub_color[src[j], a] != sup_color[image[j], y]:
                return False
        for j in range(k):
            for l in range(j + 1, k):
                out_sub = _outlier(sub_depth, src[j], src[l], a)
                out_sup = _outlier(sup_depth, image[j], image[l], y)
                if out_sup != {src[j]: image[j], src[l]: image[l], a: y}.get(out_sub):
                    return False
        return True

    def grow():
        k = len(image)
        if k == len(src):
            yield dict(zip(src, image))
            return
        for y in sup.leaves:
            if y not in image and fits(k, y):
                image.append(y)
                yield from grow()
                image.pop()

    yield from grow()


def _subsets_up_to_symmetry(t: ColoredTree, size: int):
    seen = set()
    for subset in combinations(t.leaves, size):
        chosen = set(subset)
        key = labeled_key(t.shape, {a: a in chosen for a in t.leaves}) if t.leaves else None
        if key not in seen:
            seen.add(key)
            yield subset


def diagrams_up_to(n: int, max_total: int, proper: bool = True):
    """Amalgamation diagrams with at most ``max_total`` leaves in the union.

    The left factor runs over canonical trees and the base over its leaf
    subsets up to automorphism (the left leg is the inclusion).  The right
    leg runs over image subsets of each canonical right factor, again up to
    automorphism, and every isomorphism of the base onto that image.
    Each isomorphism class of diagrams appears at least once.
    """
    from .trees import enumerate_structures

    classes = {m: enumerate_structures(n, m) for m in range(max_total + 1)}
    step = int(proper)
    for xsize in range(step, max_total + 1):
        for left in classes[xsize]:
            for zsize in range(0, xsize - step + 1):
                for subset in _subsets_up_to_symmetry(left, zsize):
                    base = restrict(left, subset)
                    left_emb = tuple((a, a) for a in subset)
                    for ysize in range(zsize + step, max_total - xsize + zsize + 1):
                        for right in classes[ysize]:
                            for image in _subsets_up_to_symmetry(right, zsize):
                                for leg in embeddings(base, restrict(right, image)):
                                    yield AmalgamationDiagram(base, left, right, left_emb, tuple(sorted(leg.items())))

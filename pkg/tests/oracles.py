"""Slow, obviously-correct reference implementations used only by the tests."""

from __future__ import annotations

import itertools

from fraisse.amalgam import AmalgamationDiagram, enumerate_amalgamations, is_embedding, make_amalgamation
from fraisse.trees import ColoredTree, labeled_key, relabel, restrict


def set_partitions_in_two(items):
    """Unordered splits of ``items`` into two nonempty blocks."""
    items = list(items)
    first, rest = items[0], items[1:]
    for r in range(len(rest)):
        for chosen in itertools.combinations(rest, r):
            left = (first, *chosen)
            right = tuple(x for x in rest if x not in chosen)
            yield left, right


def labeled_shapes(leaves, n):
    """Every colored binary tree whose leaves are exactly ``leaves``."""
    leaves = tuple(leaves)
    if len(leaves) == 1:
        yield leaves[0]
        return
    for left, right in set_partitions_in_two(leaves):
        for a in labeled_shapes(left, n):
            for b in labeled_shapes(right, n):
                for c in range(1, n + 1):
                    yield (c, a, b)


def labeled_trees(m, n):
    if m == 0:
        return [ColoredTree(None)]
    return [ColoredTree(s) for s in labeled_shapes(range(m), n)]


def isomorphic_by_bijection(t1: ColoredTree, t2: ColoredTree) -> bool:
    if t1.leaf_count != t2.leaf_count:
        return False
    target = labeled_key(t2.shape)
    src = t1.leaves
    for perm in itertools.permutations(t2.leaves):
        if labeled_key(relabel(t1, dict(zip(src, perm))).shape) == target:
            return True
    return False


def injections(src, dst):
    for image in itertools.permutations(dst, len(src)):
        yield dict(zip(src, image))


def brute_amalgamations(d: AmalgamationDiagram, n: int) -> set:
    """Keys of all amalgamations, found by trying every labelled total and every pair of legs."""
    left, right, base = d.left, d.right, d.base
    le, re_ = dict(d.left_emb), dict(d.right_emb)
    lo = max(left.leaf_count, right.leaf_count)
    hi = left.leaf_count + right.leaf_count - base.leaf_count
    found = set()
    for k in range(lo, hi + 1):
        for total in labeled_trees(k, n):
            for fl in injections(left.leaves, total.leaves):
                if not is_embedding(left, total, fl):
                    continue
                for fr in injections(right.leaves, total.leaves):
                    if any(fl[le[z]] != fr[re_[z]] for z in base.leaves):
                        continue
                    if set(fl.values()) | set(fr.values()) != set(total.leaves):
                        continue
                    if not is_embedding(right, total, fr):
                        continue
                    found.add(make_amalgamation(left, right, total, fl, fr).key())
    return found


def has_amalgamation_property(member, trees, n: int) -> bool:
    """Every diagram among ``trees`` (with all leg choices) has an amalgamation inside ``member``."""
    from fraisse.amalgam import embeddings

    inside = [t for t in trees if member(t)]
    for x, y in itertools.product(inside, repeat=2):
        for size in range(0, min(x.leaf_count, y.leaf_count) + 1):
            for subset in itertools.combinations(x.leaves, size):
                base = restrict(x, subset)
                for leg in embeddings(base, y):
                    d = AmalgamationDiagram(base, x, y, tuple((a, a) for a in subset), tuple(sorted(leg.items())))
                    if not any(member(a.total) for a in enumerate_amalgamations(d, max_leaves=None, n=n)):
                        return False
    return True

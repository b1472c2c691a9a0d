"""Node-colored rooted binary trees with unordered children.

A tree is stored as a nested tuple: a leaf is its integer id and an internal
node is ``(color, child, child)``.  The empty structure has shape ``None``.
Leaf ids are arbitrary distinct integers; trees produced by :func:`parse_tree`
and :func:`canonicalize` number their leaves ``0..m-1`` left to right.

Two leaf-labelled trees describe the same structure when they agree on the
ternary relation ``S`` and on the color of every pairwise meet.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

Shape = "int | tuple | None"


class TreeSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class ColoredTree:
    shape: object = None
    _leaf_paths: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    @property
    def leaf_paths(self) -> dict:
        """Map leaf id -> tuple of 0/1 branch choices from the root."""
        if self._leaf_paths is None:
            paths = {}
            stack = [(self.shape, ())]
            while stack:
                node, path = stack.pop()
                if node is None:
                    continue
                if isinstance(node, int):
                    paths[node] = path
                else:
                    stack.append((node[1], path + (0,)))
                    stack.append((node[2], path + (1,)))
            object.__setattr__(self, "_leaf_paths", paths)
        return self._leaf_paths

    @property
    def leaves(self) -> tuple:
        return tuple(sorted(self.leaf_paths))

    @property
    def leaf_count(self) -> int:
        return len(self.leaf_paths)

    def is_empty(self) -> bool:
        return self.shape is None

    def node_at(self, path: tuple):
        node = self.shape
        for step in path:
            node = node[1 + step]
        return node

    def color_counts(self) -> dict:
        counts: dict = {}
        for color in iter_colors(self.shape):
            counts[color] = counts.get(color, 0) + 1
        return counts

    def max_color(self) -> int:
        return max(iter_colors(self.shape), default=0)

    def __str__(self) -> str:
        return to_string(self)


def iter_colors(node) -> Iterator[int]:
    stack = [node]
    while stack:
        node = stack.pop()
        if isinstance(node, tuple):
            yield node[0]
            stack.append(node[1])
            stack.append(node[2])


EMPTY = ColoredTree(None)

# ---------------------------------------------------------------- text form

_TOKEN = re.compile(r"\s*(\(|\)|\*|\d+)")


def parse_tree(text: str, n: int | None = None) -> ColoredTree:
    """Parse ``tree := "*" | "(" color tree tree ")"``; ``"()"`` is empty."""
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        match = _TOKEN.match(stripped, pos)
        if not match:
            raise TreeSyntaxError(f"unexpected character {stripped[pos]!r}", pos)
        tokens.append((match.group(1), match.start(1)))
        pos = match.end()
    if not tokens:
        raise TreeSyntaxError("empty input", 0)
    if [t for t, _ in tokens] == ["(", ")"]:
        return EMPTY

    counter = itertools.count()
    index = 0

    def parse_node():
        nonlocal index
        if index >= len(tokens):
            raise TreeSyntaxError("unexpected end of input", len(stripped))
        tok, at = tokens[index]
        index += 1
        if tok == "*":
            return next(counter)
        if tok != "(":
            raise TreeSyntaxError(f"expected '*' or '(' but found {tok!r}", at)
        if index >= len(tokens) or not tokens[index][0].isdigit():
            where = tokens[index][1] if index < len(tokens) else len(stripped)
            raise TreeSyntaxError("expected a color", where)
        color = int(tokens[index][0])
        if color < 1 or (n is not None and color > n):
            raise TreeSyntaxError(f"color {color} outside 1..{n if n else 'n'}", tokens[index][1])
        index += 1
        left = parse_node()
        right = parse_node()
        if index >= len(tokens) or tokens[index][0] != ")":
            where = tokens[index][1] if index < len(tokens) else len(stripped)
            raise TreeSyntaxError("expected ')'", where)
        index += 1
        return (color, left, right)

    shape = parse_node()
    if index != len(tokens):
        raise TreeSyntaxError("trailing input", tokens[index][1])
    return ColoredTree(shape)


def _render(node) -> str:
    if node is None:
        return "()"
    if isinstance(node, int):
        return "*"
    return f"({node[0]} {_render(node[1])} {_render(node[2])})"


def to_string(t: ColoredTree) -> str:
    return _render(t.shape)


def to_labeled_string(t: ColoredTree) -> str:
    """Like :func:`to_string` but leaves print as their ids."""

    def go(node):
        if node is None:
            return "()"
        if isinstance(node, int):
            return str(node)
        return f"({node[0]} {go(node[1])} {go(node[2])})"

    return go(t.shape)


# ----------------------------------------------------------- canonical forms


def encoding(node):
    """Isomorphism-invariant nested tuple; a leaf is ``()``."""
    if node is None:
        return None
    if isinstance(node, int):
        return ()
    a, b = encoding(node[1]), encoding(node[2])
    if b < a:
        a, b = b, a
    return (node[0], a, b)


def _ordered(node):
    """Reorder children by encoding; returns (ordered shape, encoding)."""
    if isinstance(node, int):
        return node, ()
    left, ea = _ordered(node[1])
    right, eb = _ordered(node[2])
    if eb < ea:
        left, right, ea, eb = right, left, eb, ea
    return (node[0], left, right), (node[0], ea, eb)


def _renumber(node, counter):
    if isinstance(node, int):
        return next(counter)
    return (node[0], _renumber(node[1], counter), _renumber(node[2], counter))


def canonicalize(t: ColoredTree) -> ColoredTree:
    if t.shape is None:
        return EMPTY
    ordered, _ = _ordered(t.shape)
    return ColoredTree(_renumber(ordered, itertools.count()))


def canonical_form(t: ColoredTree) -> tuple:
    """Canonicalized tree plus the old-id -> new-id leaf map."""
    if t.shape is None:
        return EMPTY, {}
    ordered, _ = _ordered(t.shape)
    mapping = {}

    def go(node):
        if isinstance(node, int):
            mapping[node] = len(mapping)
            return mapping[node]
        return (node[0], go(node[1]), go(node[2]))

    return ColoredTree(go(ordered)), mapping


def canonical_string(t: ColoredTree) -> str:
    return to_string(canonicalize(t))


def is_isomorphic(t1: ColoredTree, t2: ColoredTree) -> bool:
    return encoding(t1.shape) == encoding(t2.shape)


def labeled_key(node, label=None):
    """Key that identifies a leaf-labelled structure exactly.

    ``label`` maps leaf ids to comparable labels (default: the ids).
    """
    if node is None:
        return None
    if isinstance(node, int):
        return (0, node if label is None else label[node])
    a, b = labeled_key(node[1], label), labeled_key(node[2], label)
    if b < a:
        a, b = b, a
    return (1, node[0], a, b)


def from_encoding(enc) -> ColoredTree:
    if enc is None:
        return EMPTY
    counter = itertools.count()

    def go(e):
        if e == ():
            return next(counter)
        return (e[0], go(e[1]), go(e[2]))

    return ColoredTree(go(enc))


# ----------------------------------------------------------- relations


def _check_leaves(t: ColoredTree, ids: Iterable[int]) -> None:
    paths = t.leaf_paths
    for leaf in ids:
        if leaf not in paths:
            raise KeyError(f"leaf {leaf} not in tree")


def _common_prefix(p: tuple, q: tuple) -> tuple:
    k = 0
    for x, y in zip(p, q):
        if x != y:
            break
        k += 1
    return p[:k]


def meet_path(t: ColoredTree, a: int, b: int) -> tuple:
    paths = t.leaf_paths
    return _common_prefix(paths[a], paths[b])


def meet_color(t: ColoredTree, a: int, b: int) -> int:
    if a == b:
        raise ValueError("meet color needs two distinct leaves")
    return t.node_at(meet_path(t, a, b))[0]


def relation_S(t: ColoredTree, a: int, b: int, c: int) -> bool:
    """True iff a, b, c are distinct and the root-to-a path misses the b-c path."""
    _check_leaves(t, (a, b, c))
    if len({a, b, c}) < 3:
        return False
    top = meet_path(t, b, c)
    return t.leaf_paths[a][: len(top)] != top


def restrict(t: ColoredTree, subset: Iterable[int]) -> ColoredTree:
    """Induced substructure on ``subset``; leaf ids are preserved."""
    keep = set(subset)
    _check_leaves(t, keep)

    def go(node):
        if isinstance(node, int):
            return node if node in keep else None
        left, right = go(node[1]), go(node[2])
        if left is None:
            return right
        if right is None:
            return left
        return (node[0], left, right)

    if not keep:
        return EMPTY
    return ColoredTree(go(t.shape))


def remove_leaf(t: ColoredTree, a: int) -> ColoredTree:
    return restrict(t, set(t.leaf_paths) - {a})


def relabel(t: ColoredTree, mapping: dict) -> ColoredTree:
    def go(node):
        if node is None:
            return None
        if isinstance(node, int):
            return mapping[node]
        return (node[0], go(node[1]), go(node[2]))

    return ColoredTree(go(t.shape))


def recolor(t: ColoredTree, perm: dict) -> ColoredTree:
    def go(node):
        if node is None or isinstance(node, int):
            return node
        return (perm[node[0]], go(node[1]), go(node[2]))

    return ColoredTree(go(t.shape))


# ----------------------------------------------------------- structures


@dataclass(frozen=True)
class Structure:
    """Leaves, the set of triples satisfying S, and the meet color of each pair."""

    leaves: frozenset
    triples: frozenset
    meet_colors: dict = field(compare=False, hash=False)

    def __eq__(self, other):
        return (
            isinstance(other, Structure)
            and self.leaves == other.leaves
            and self.triples == other.triples
            and self.meet_colors == other.meet_colors
        )

    def __hash__(self):
        return hash((self.leaves, self.triples))


def structure_of(t: ColoredTree) -> Structure:
    leaves = t.leaves
    triples = frozenset(
        (a, b, c)
        for a, b, c in itertools.permutations(leaves, 3)
        if relation_S(t, a, b, c)
    )
    colors = {frozenset((a, b)): meet_color(t, a, b) for a, b in itertools.combinations(leaves, 2)}
    return Structure(frozenset(leaves), triples, colors)


def tree_from_structure(s: Structure) -> ColoredTree:
    """Rebuild the realizing tree from S and meet colors."""

    def build(block: frozenset):
        if len(block) == 1:
            return next(iter(block))
        # a ~ b when some c sees them meet strictly below the block's top
        parent = {x: x for x in block}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b, c in s.triples:
            if a in block and b in block and c in block:
                parent[find(b)] = find(c)
        groups: dict = {}
        for x in block:
            groups.setdefault(find(x), set()).add(x)
        if len(groups) != 2:
            raise ValueError("relation does not describe a binary tree")
        g1, g2 = (frozenset(g) for g in groups.values())
        color = s.meet_colors[frozenset((next(iter(g1)), next(iter(g2))))]
        return (color, build(g1), build(g2))

    if not s.leaves:
        return EMPTY
    return ColoredTree(build(s.leaves))


# ----------------------------------------------------------- automorphisms


def automorphism_count(t: ColoredTree) -> int:
    def go(node):
        if isinstance(node, int):
            return 1, ()
        ca, ea = go(node[1])
        cb, eb = go(node[2])
        count = ca * cb * (2 if ea == eb else 1)
        if eb < ea:
            ea, eb = eb, ea
        return count, (node[0], ea, eb)

    if t.shape is None:
        return 1
    return go(t.shape)[0]


# ----------------------------------------------------------- enumeration


@lru_cache(maxsize=None)
def _encodings(n: int, m: int) -> tuple:
    if m == 0:
        return (None,)
    if m == 1:
        return ((),)
    out = []
    for k in range(1, m // 2 + 1):
        small, large = _encodings(n, k), _encodings(n, m - k)
        for color in range(1, n + 1):
            if k == m - k:
                for i, a in enumerate(small):
                    for b in small[i:]:
                        out.append((color, a, b))
            else:
                for a in small:
                    for b in large:
                        out.append((color, a, b) if a <= b else (color, b, a))
    return tuple(sorted(out))


def enumerate_structures(n: int, m: int, limit: int | None = None) -> list:
    """All isomorphism classes of trees with exactly ``m`` leaves, canonical and sorted."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    if limit is not None and m > limit:
        raise ValueError(f"m = {m} exceeds the enumeration limit {limit}")
    return [from_encoding(e) for e in _encodings(n, m)]


def labeled_count(n: int, m: int) -> int:
    """Number of leaf-labelled structures on ``m`` labelled leaves."""
    from math import factorial

    return sum(factorial(m) // automorphism_count(t) for t in enumerate_structures(n, m))

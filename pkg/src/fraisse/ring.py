"""Generators of the measure ring and the relations among them.

Every one-point extension ``[T, a]`` (``T`` with marked leaf ``a``) reduces to
one of five irreducible shapes.  Colors are listed from the root downward::

    A            B(i)          C(i,j)            D(i,j)            E(i,j,k)

    a            i             i                 i                 i
                / \\           / \\               / \\               / \\
               a   *         a   j             *   j             *   j
                                / \\               / \\               / \\
                               *   *             a   *             a   k
                                                                      / \\
                                                                     *   *
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple

from .amalgam import AmalgamationDiagram, are_separated, enumerate_amalgamations
from .dyadic import Dyadic
from .linalg import rank
from .trees import ColoredTree, enumerate_structures, labeled_key, parse_tree, remove_leaf, restrict


class Generator(NamedTuple):
    kind: str
    colors: tuple = ()

    def __str__(self) -> str:
        if not self.colors:
            return self.kind
        return f"{self.kind}({','.join(map(str, self.colors))})"


def A():
    return Generator("A")


def B(i):
    return Generator("B", (i,))


def C(i, j):
    return Generator("C", (i, j))


def D(i, j):
    return Generator("D", (i, j))


def E(i, j, k):
    return Generator("E", (i, j, k))


def all_generators(n: int) -> list:
    gens = [A()]
    gens += [B(i) for i in range(1, n + 1)]
    pairs = list(itertools.product(range(1, n + 1), repeat=2))
    gens += [C(*p) for p in pairs] + [D(*p) for p in pairs]
    gens += [E(*t) for t in itertools.product(range(1, n + 1), repeat=3)]
    return gens


def generator_tree(g: Generator) -> tuple:
    """A tree realizing ``g`` and its marked leaf."""
    c = g.colors
    text = {
        "A": "*",
        "B": "({0} * *)",
        "C": "({0} * ({1} * *))",
        "D": "({0} * ({1} * *))",
        "E": "({0} * ({1} * ({2} * *)))",
    }[g.kind].format(*c)
    marked = {"A": 0, "B": 0, "C": 0, "D": 1, "E": 1}[g.kind]
    return parse_tree(text), marked


# ----------------------------------------------------------------- reduction


def marked_generator(t: ColoredTree, a: int) -> Generator:
    """Generator of ``[t, a]`` read off the neighbourhood of ``a``."""
    paths = t.leaf_paths
    if len(paths) == 1:
        return A()
    path = paths[a]
    hub_path = path[:-1]
    hub = t.node_at(hub_path)
    sibling = hub[2 - path[-1]]
    if not hub_path:
        return B(hub[0]) if isinstance(sibling, int) else C(hub[0], sibling[0])
    top = t.node_at(hub_path[:-1])[0]
    if isinstance(sibling, int):
        return D(top, hub[0])
    return E(top, hub[0], sibling[0])


def _template_keys(n: int) -> dict:
    keys = {}
    for g in all_generators(n):
        tree, marked = generator_tree(g)
        label = {leaf: int(leaf == marked) for leaf in tree.leaf_paths}
        keys[(tree.leaf_count, labeled_key(tree.shape, label))] = g
    return keys


_TEMPLATES: dict = {}


def reduce_marked(t: ColoredTree, a: int, choose=min) -> Generator:
    """Delete leaves separated from ``a`` until none is left, then match a template.

    ``choose`` picks which separated leaf goes next.
    """
    if t.is_empty() or a not in t.leaf_paths:
        raise ValueError("marked leaf must be present")
    while True:
        separated = [b for b in t.leaves if b != a and are_separated(t, a, b)]
        if not separated:
            break
        t = remove_leaf(t, choose(separated))
    n = max(t.max_color(), 1)
    if n not in _TEMPLATES:
        _TEMPLATES[n] = _template_keys(n)
    label = {leaf: int(leaf == a) for leaf in t.leaf_paths}
    return _TEMPLATES[n][(t.leaf_count, labeled_key(t.shape, label))]


# ----------------------------------------------------------------- values


def generator_value(g: Generator, mu) -> Dyadic:
    """Value of a generator under a measure given by its B and C tables."""
    n = mu.n
    b, c = mu.B, mu.C
    kind, cs = g

    def d(i, j):
        if i != j:
            return b[j] - c[j, i]
        rest = sum((d(i, p) for p in range(1, n + 1) if p != i), Dyadic(0))
        return (b[i] - 1 - c[i, i] - rest).half()

    if kind == "A":
        return 1 + sum(b.values(), Dyadic(0))
    if kind == "B":
        return b[cs[0]]
    if kind == "C":
        return c[cs]
    if kind == "D":
        return d(*cs)
    i, j, k = cs
    if i == j == k:
        return -1 - sum((d(i, p) for p in range(1, n + 1)), Dyadic(0))
    if i == k:
        return Dyadic(0)
    if j == k:
        return c[j, j] - c[j, i]
    if i == j:
        return d(i, i) - d(k, i)
    return c[j, k] - c[j, i]


# ----------------------------------------------------------------- relations

ONE = ()  # the empty monomial


@dataclass
class RelationRecord:
    """``lhs = rhs`` with both sides mapping monomials (sorted generator tuples) to integers."""

    kind: str
    lhs: Counter
    rhs: Counter
    provenance: str = ""
    colors: tuple = ()

    def vector(self) -> dict:
        out = Counter(self.lhs)
        out.subtract(self.rhs)
        return {m: v for m, v in out.items() if v}

    def normalized(self) -> tuple:
        vec = self.vector()
        if not vec:
            return ()
        items = sorted(vec.items())
        if items[0][1] < 0:
            items = [(m, -v) for m, v in items]
        from math import gcd

        g = 0
        for _, v in items:
            g = gcd(g, v)
        return tuple((m, v // g) for m, v in items)

    def is_trivial(self) -> bool:
        return not self.vector()

    def __str__(self) -> str:
        return f"{format_side(self.lhs)} = {format_side(self.rhs)}"


def format_side(side) -> str:
    terms = []
    for mono, coeff in sorted(side.items()):
        if not coeff:
            continue
        body = "*".join(map(str, mono))
        if not mono:
            terms.append(str(coeff))
        else:
            terms.append(body if coeff == 1 else f"{coeff}*{body}")
    return " + ".join(terms) or "0"


def _side(*terms) -> Counter:
    out = Counter()
    for t in terms:
        if t == 1:
            out[ONE] += 1
        elif isinstance(t, Generator):
            out[(t,)] += 1
        else:
            out[tuple(sorted(t))] += 1
    return out


def linear_family_instances(n: int) -> list:
    """Instances of the eight generating families of linear relations."""
    colors = range(1, n + 1)
    out = []

    def add(name, lhs, rhs, cs):
        out.append(RelationRecord("linear", lhs, rhs, name, cs))

    add("A=1+sum B", _side(A()), _side(1, *[B(i) for i in colors]), ())
    for i in colors:
        add("B(i)=1+C(i,i)+D(i,i)+sum D(i,p)", _side(B(i)), _side(1, C(i, i), D(i, i), *[D(i, p) for p in colors]), (i,))
        add("0=1+sum D(i,p)+E(i,i,i)", Counter(), _side(1, E(i, i, i), *[D(i, p) for p in colors]), (i,))
    for i, j in itertools.permutations(colors, 2):
        add("B(i)=C(i,j)+D(j,i)", _side(B(i)), _side(C(i, j), D(j, i)), (i, j))
        add("C(i,i)=C(i,j)+E(j,i,i)", _side(C(i, i)), _side(C(i, j), E(j, i, i)), (i, j))
        add("D(i,i)=D(j,i)+E(i,i,j)", _side(D(i, i)), _side(D(j, i), E(i, i, j)), (i, j))
        add("E(i,j,i)=0", _side(E(i, j, i)), Counter(), (i, j))
    for i, j, k in itertools.permutations(colors, 3):
        add("C(i,j)=C(i,k)+E(k,i,j)", _side(C(i, j)), _side(C(i, k), E(k, i, j)), (i, j, k))
    return out


def linear_relation_for(t: ColoredTree, a: int, b: int, n: int) -> RelationRecord:
    """The relation coming from removing ``a`` and ``b`` from ``t`` separately."""
    leaves = set(t.leaf_paths)
    base = restrict(t, leaves - {a, b})
    with_a = restrict(t, leaves - {b})
    with_b = restrict(t, leaves - {a})
    shared = {x: x for x in base.leaf_paths}
    diagram = AmalgamationDiagram.build(base, with_a, with_b, shared, shared)
    rhs = Counter()
    for amalg in enumerate_amalgamations(diagram, n=n, max_leaves=None):
        image = amalg.left_map[a]
        if image in amalg.right_map.values():
            rhs[ONE] += 1
        else:
            rhs[(marked_generator(amalg.total, image),)] += 1
    lhs = Counter({(marked_generator(with_a, a),): 1})
    from .trees import to_labeled_string

    return RelationRecord("linear", lhs, rhs, f"{to_labeled_string(t)} a={a} b={b}")


def _irreducible(t: ColoredTree, a: int) -> bool:
    return not any(are_separated(t, a, x) for x in t.leaf_paths if x != a)


def derive_linear_relations(n: int, max_leaves: int = 5, bound: int = 3) -> list:
    """Relations from every tree with two non-separated leaves whose removals are irreducible."""
    if n > bound:
        raise ValueError(f"n = {n} exceeds bound {bound}")
    seen = {}
    for m in range(2, max_leaves + 1):
        for t in enumerate_structures(n, m):
            for a, b in itertools.permutations(t.leaves, 2):
                if are_separated(t, a, b):
                    continue
                if not _irreducible(remove_leaf(t, b), a):
                    continue
                rel = linear_relation_for(t, a, b, n)
                key = rel.normalized()
                if key and key not in seen:
                    seen[key] = rel
    return [seen[k] for k in sorted(seen)]


def relation_span_report(derived: list, families: list) -> dict:
    """Compare spans of two relation lists (as vectors over monomials)."""
    columns = {}

    def row(rel):
        return {columns.setdefault(m, len(columns)): v for m, v in rel.vector().items()}

    rows_d = [row(r) for r in derived]
    rows_f = [row(r) for r in families]
    rd, rf, both = rank(rows_d), rank(rows_f), rank(rows_d + rows_f)
    derived_keys = {r.normalized() for r in derived}
    literal = sum(1 for r in families if r.is_trivial() or r.normalized() in derived_keys)
    return {
        "derived": len(derived),
        "family_instances": len(families),
        "rank_derived": rd,
        "rank_families": rf,
        "rank_union": both,
        "same_span": rd == rf == both,
        "families_found_literally": literal,
    }


# ----------------------------------------------------------------- quadratic


def _check(report, name, colors, lhs, rhs):
    report.append({"relation": name, "colors": list(colors), "lhs": str(lhs), "rhs": str(rhs), "pass": lhs == rhs})


def verify_quadratic_relations(n: int, mu) -> list:
    if n != mu.n:
        raise ValueError("color count does not match the measure")
    v = mu.value
    colors = range(1, n + 1)
    report: list = []
    for i, j in itertools.product(colors, repeat=2):
        _check(report, "C(i,j)B(j)=D(i,j)B(i)", (i, j), v(C(i, j)) * v(B(j)), v(D(i, j)) * v(B(i)))
    for i, j, k in itertools.product(colors, repeat=3):
        _check(report, "C(i,j)C(j,k)=E(i,j,k)C(i,k)", (i, j, k), v(C(i, j)) * v(C(j, k)), v(E(i, j, k)) * v(C(i, k)))
        _check(report, "D(j,k)D(i,j)=E(i,j,k)D(i,k)", (i, j, k), v(D(j, k)) * v(D(i, j)), v(E(i, j, k)) * v(D(i, k)))
    for i, j, k, l in itertools.product(colors, repeat=4):
        _check(
            report,
            "E(i,j,k)E(i,k,l)=E(j,k,l)E(i,j,l)",
            (i, j, k, l),
            v(E(i, j, k)) * v(E(i, k, l)),
            v(E(j, k, l)) * v(E(i, j, l)),
        )
    S = {i: v(B(i)) + v(C(i, i)) - v(D(i, i)) for i in colors}
    for i in colors:
        _check(report, "S(i)=B(i)+C(i,i)-D(i,i)", (i,), S[i], mu.S[i])
        _check(report, "B(i)(B(i)-S(i))=0", (i,), v(B(i)) * (v(B(i)) - S[i]), Dyadic(0))
        _check(report, "C(i,i)(C(i,i)-S(i))=0", (i,), v(C(i, i)) * (v(C(i, i)) - S[i]), Dyadic(0))
    for i, j in itertools.permutations(colors, 2):
        _check(report, "C(i,j)C(j,i)=0", (i, j), v(C(i, j)) * v(C(j, i)), Dyadic(0))
        _check(report, "C(i,j)(C(i,j)-S(i))=0", (i, j), v(C(i, j)) * (v(C(i, j)) - S[i]), Dyadic(0))
        _check(report, "C(i,j)B(j)=(B(j)-C(j,i))B(i)", (i, j), v(C(i, j)) * v(B(j)), (v(B(j)) - v(C(j, i))) * v(B(i)))
    for i, j, k in itertools.permutations(colors, 3):
        _check(
            report,
            "C(i,j)C(j,k)=(C(j,k)-C(j,i))C(i,k)",
            (i, j, k),
            v(C(i, j)) * v(C(j, k)),
            (v(C(j, k)) - v(C(j, i))) * v(C(i, k)),
        )
    return report


def evaluate_relation(rel: RelationRecord, mu) -> tuple:
    def side(s):
        total = Dyadic(0)
        for mono, coeff in s.items():
            term = Dyadic(coeff)
            for g in mono:
                term = term * mu.value(g)
            total = total + term
        return total

    return side(rel.lhs), side(rel.rhs)

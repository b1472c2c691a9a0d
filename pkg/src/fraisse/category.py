"""A small engine for the permutation-module category attached to a measure.

Objects are formal sums of trees.  ``Hom(X, Y)`` has a basis of amalgamations
of ``X`` and ``Y`` over the empty tree; composing two basis elements sums over
the three-way amalgamations that induce them, weighting each induced
``(X1, X3)`` part by the measure of its embedding into the three-way total.

Composition of basis elements is computed once as a polynomial in the ring
generators (``Counter`` of sorted generator tuples) and then evaluated under
any measure.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .amalgam import (
    Amalgamation,
    amalgamations_over_empty,
    diagonal,
    enumerate_triple,
    enumerate_triple_with_outer,
)
from .dyadic import Dyadic
from .linalg import sparse_determinant
from .measures import Measure, chain_generators, evaluate
from .trees import (
    ColoredTree,
    automorphism_count,
    canonicalize,
    enumerate_structures,
    parse_tree,
    to_string,
)

DEFAULT_MAX_LEAVES = 8


def _ambient(*trees, n=None) -> int:
    return n or max([t.max_color() for t in trees] + [1])


@lru_cache(maxsize=None)
def hom_basis(x: ColoredTree, y: ColoredTree, n: int | None = None, member=None, max_leaves: int = DEFAULT_MAX_LEAVES):
    """Amalgamations of ``x`` and ``y`` over the empty tree, optionally inside a subclass."""
    if x.leaf_count + y.leaf_count > max_leaves:
        raise ValueError(f"{x.leaf_count + y.leaf_count} leaves exceeds bound {max_leaves}")
    return tuple(
        amalgamations_over_empty(x, y, n=_ambient(x, y, n=n), restrict_to=member, max_leaves=None)
    )


@dataclass
class HomElement:
    source: ColoredTree
    target: ColoredTree
    terms: dict = field(default_factory=dict)  # Amalgamation -> Dyadic

    @classmethod
    def basis(cls, a: Amalgamation) -> "HomElement":
        return cls(a.left, a.right, {a: Dyadic(1)})

    @classmethod
    def identity(cls, x: ColoredTree) -> "HomElement":
        return cls.basis(diagonal(x))

    def cleaned(self) -> "HomElement":
        return HomElement(self.source, self.target, {k: v for k, v in self.terms.items() if v})

    def __add__(self, other: "HomElement") -> "HomElement":
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, Dyadic(0)) + v
        return HomElement(self.source, self.target, terms).cleaned()

    def scaled(self, c) -> "HomElement":
        return HomElement(self.source, self.target, {k: v * c for k, v in self.terms.items()}).cleaned()

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomElement):
            return NotImplemented
        a, b = self.cleaned(), other.cleaned()
        return a.source == b.source and a.target == b.target and a.terms == b.terms

    def to_json(self) -> dict:
        return {
            "source": to_string(self.source),
            "target": to_string(self.target),
            "terms": [
                {"amalgamation": k.describe(), "coeff": v.to_json()}
                for k, v in sorted(self.cleaned().terms.items(), key=lambda kv: kv[0].key())
            ],
        }


def _monomial_value(mu: Measure, mono: tuple) -> Dyadic:
    value = Dyadic(1)
    for g in mono:
        value = value * mu.value(g)
    return value


def polynomial_value(mu: Measure, poly: Counter) -> Dyadic:
    total = Dyadic(0)
    for mono, count in poly.items():
        total = total + _monomial_value(mu, mono) * count
    return total


@lru_cache(maxsize=None)
def compose_basis(y12: Amalgamation, y23: Amalgamation, n: int, member=None) -> tuple:
    """``y23 o y12`` as ``((y13, polynomial), ...)``."""
    out: dict = {}
    for triple, y13 in enumerate_triple(y12, y23, n=n, restrict_to=member):
        mono = tuple(sorted(chain_generators(triple.total, triple.image(0, 2))))
        out.setdefault(y13, Counter())[mono] += 1
    return tuple(sorted(out.items(), key=lambda kv: kv[0].key()))


def compose(mu: Measure, g: HomElement, f: HomElement, member=None) -> HomElement:
    """``g o f`` for ``f: X -> Y`` and ``g: Y -> Z``."""
    if f.target != g.source:
        raise ValueError("target of f differs from source of g")
    n = mu.n
    terms: dict = {}
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            for y13, poly in compose_basis(a, b, n, member):
                terms[y13] = terms.get(y13, Dyadic(0)) + ca * cb * polynomial_value(mu, poly)
    return HomElement(f.source, g.target, terms).cleaned()


def trace(mu: Measure, e: HomElement) -> Dyadic:
    if e.source != e.target:
        raise ValueError("trace needs an endomorphism")
    coeff = e.terms.get(diagonal(e.source), Dyadic(0))
    return coeff * evaluate(mu, e.source)


# ------------------------------------------------------------------ objects


class PermObject(Counter):
    """Formal direct sum: canonical tree string -> multiplicity."""

    @classmethod
    def of(cls, *trees) -> "PermObject":
        return cls(to_string(canonicalize(parse_tree(t) if isinstance(t, str) else t)) for t in trees)

    @classmethod
    def unit(cls) -> "PermObject":
        return cls.of("()")

    def summands(self) -> list:
        return [(parse_tree(s), k) for s, k in sorted(self.items())]

    def to_json(self) -> dict:
        return dict(sorted(self.items()))


def tensor_objects(x: PermObject, y: PermObject, n: int | None = None) -> PermObject:
    out = PermObject()
    for tx, kx in x.summands():
        for ty, ky in y.summands():
            for a in amalgamations_over_empty(tx, ty, n=_ambient(tx, ty, n=n), max_leaves=None):
                out[to_string(canonicalize(a.total))] += kx * ky
    return out


def tensor_power(x: PermObject, m: int, n: int | None = None) -> PermObject:
    out = PermObject.unit()
    for _ in range(m):
        out = tensor_objects(out, x, n=n)
    return out


def end_dimension(obj: PermObject, n: int | None = None) -> int:
    """dim End of a formal sum: sum of multiplicity products times amalgamation counts."""
    items = obj.summands()
    total = 0
    for tx, kx in items:
        for ty, ky in items:
            total += kx * ky * len(hom_basis(tx, ty, _ambient(tx, ty, n=n), None, 10**9))
    return total


# ------------------------------------------------------------------ Gram form


def gram_entries(mu: Measure, x: ColoredTree, member=None) -> tuple:
    """Basis of End(x) and the sparse trace form ``{(p, q): trace(e_p o e_q)}``.

    Only the diagonal coefficient of ``e_p o e_q`` matters, so for each ``q``
    the three-way totals are enumerated with the outer pair fixed to the
    diagonal; each total then names the ``p`` it belongs to.
    """
    basis = hom_basis(x, x, mu.n, member, 10**9)
    index = {a: i for i, a in enumerate(basis)}
    diag = diagonal(x)
    size_x = evaluate(mu, x)
    entries: dict = {}
    for q, yq in enumerate(basis):
        for triple, y23 in enumerate_triple_with_outer(yq, diag, n=mu.n, restrict_to=member):
            coeff = _monomial_value(mu, chain_generators(triple.total, triple.image(0, 2)))
            if not coeff:
                continue
            p = index.get(y23)
            if p is None:
                raise AssertionError("nonzero contribution from outside the basis")
            entries[p, q] = entries.get((p, q), Dyadic(0)) + coeff * size_x
    return basis, {k: v for k, v in entries.items() if v}


def gram_matrix_by_composition(mu: Measure, x: ColoredTree, member=None) -> list:
    """Dense Gram matrix using full compositions (for cross-checks on small objects)."""
    basis = hom_basis(x, x, mu.n, member, 10**9)
    elems = [HomElement.basis(a) for a in basis]
    return [[trace(mu, compose(mu, ep, eq, member)) for eq in elems] for ep in elems]


def render_large_fraction(q: Fraction) -> str:
    """``±2^k`` when possible, otherwise sign and bit lengths of numerator and denominator."""
    num, den = abs(q.numerator), q.denominator
    sign = "-" if q < 0 else ""
    if num == 0:
        return "0"
    if num & (num - 1) == 0 and den & (den - 1) == 0:
        return f"{sign}2^{num.bit_length() - den.bit_length()}"
    if num.bit_length() < 64 and den.bit_length() < 64:
        return str(q)
    return f"{sign}<{num.bit_length()}-bit>/<{den.bit_length()}-bit>"


def gram_semisimplicity(mu: Measure, x: ColoredTree, member=None) -> dict:
    basis, entries = gram_entries(mu, x, member)
    size = len(basis)
    rows: dict = {}
    for (p, q), v in entries.items():
        rows.setdefault(p, {})[q] = v.to_fraction()
    det = sparse_determinant(rows, size)
    return {
        "object": to_string(x),
        "dimension": size,
        "nonzero_entries": len(entries),
        "determinant": render_large_fraction(det),
        "nondegenerate": det != 0,
    }


# ------------------------------------------------------------------ automorphisms


def aut_power_check(n: int, max_leaves: int) -> dict:
    violations = []
    checked = 0
    for m in range(max_leaves + 1):
        for t in enumerate_structures(n, m):
            checked += 1
            k = automorphism_count(t)
            if k & (k - 1):
                violations.append({"tree": to_string(t), "count": k})
    return {"checked": checked, "violations": violations, "pass": not violations}


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def stirling2(n: int, k: int) -> int:
    return sum((-1) ** (k - j) * _binom(k, j) * j**n for j in range(k + 1)) // factorial(k)


def _binom(a, b):
    from math import comb

    return comb(a, b)


def end_dimension_by_orbits(m: int) -> int:
    """Independent count for one color: surjectively labelled trees on ``2m`` labels."""
    if m == 0:
        return 1
    return sum(stirling2(2 * m, k) * double_factorial(2 * k - 3) for k in range(1, 2 * m + 1))

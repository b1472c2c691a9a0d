"""Subclasses cut out by which three-leaf trees they contain.

``X(i, j)`` is the tree ``(i * (j * *))``.  A subclass is recorded by the
table ``epsilon[i][j] = 1`` iff ``X(i, j)`` belongs to it, together with the
set of colors that occur at all.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial

from .dyadic import Dyadic
from .measures import Measure, NCode, enumerate_measures, evaluate, solve_measure
from .ring import B
from .trees import ColoredTree, enumerate_structures, parse_tree

DEFAULT_MAX_N = 5

# n = 2 names keyed by (eps12, eps21, eps11, eps22)
TWO_COLOR_NAMES = {
    (0, 0, 1, 0): "dT3(1)",
    (0, 0, 0, 1): "dT3(1)",
    (1, 0, 1, 0): "nt-1",
    (1, 0, 0, 1): "nr-2",
    (1, 0, 1, 1): "ord",
    (0, 1, 0, 1): "nt-2",
    (0, 1, 1, 0): "nr-1",
    (0, 1, 1, 1): "rev",
    (1, 1, 1, 1): "dT3(2)",
}


def three_leaf(i: int, j: int) -> ColoredTree:
    return parse_tree(f"({i} * ({j} * *))")


@dataclass(frozen=True)
class Subclass:
    n: int
    epsilon: tuple  # epsilon[i-1][j-1]
    colors: frozenset
    special_tag: str | None = None

    def eps(self, i: int, j: int) -> int:
        return self.epsilon[i - 1][j - 1]

    def allowed_triples(self) -> list:
        r = range(1, self.n + 1)
        return [(i, j) for i in r for j in r if self.eps(i, j)]

    def is_infinite(self) -> bool:
        return any(self.eps(i, i) for i in range(1, self.n + 1))

    def violations(self) -> list:
        bad = []
        cs = sorted(self.colors)
        for i, j, k in itertools.permutations(cs, 3):
            if self.eps(i, j) and self.eps(j, k) and not self.eps(i, k):
                bad.append(f"not transitive at ({i},{j},{k})")
        for i, j in itertools.combinations(cs, 2):
            if self.eps(i, j) and self.eps(j, i) and not (self.eps(i, i) and self.eps(j, j)):
                bad.append(f"both X({i},{j}) and X({j},{i}) need both diagonals")
            if not self.eps(i, j) and not self.eps(j, i):
                bad.append(f"neither X({i},{j}) nor X({j},{i})")
        for i, j in itertools.product(range(1, self.n + 1), repeat=2):
            if self.eps(i, j) and not {i, j} <= self.colors:
                bad.append(f"X({i},{j}) uses an absent color")
        return bad

    @property
    def name(self) -> str | None:
        if self.special_tag in ("T<=1", "T<=2"):
            return self.special_tag
        if self.n == 1 and self.eps(1, 1):
            return "dT3(1)"
        if self.n == 2:
            key = (self.eps(1, 2), self.eps(2, 1), self.eps(1, 1), self.eps(2, 2))
            if key in TWO_COLOR_NAMES:
                return TWO_COLOR_NAMES[key]
        return None

    def to_json(self) -> dict:
        out = {"n": self.n, "epsilon": [list(row) for row in self.epsilon], "colors": sorted(self.colors)}
        if self.name:
            out["name"] = self.name
        if self.special_tag:
            out["special"] = self.special_tag
        return out

    @classmethod
    def from_table(cls, n: int, epsilon, colors=None) -> "Subclass":
        eps = tuple(tuple(int(v) for v in row) for row in epsilon)
        cs = frozenset(range(1, n + 1)) if colors is None else frozenset(colors)
        return cls(n, eps, cs, None if any(map(any, eps)) else ("T<=2" if cs else "T<=1"))


def enumerate_subclasses(n: int, bound: int = DEFAULT_MAX_N) -> list:
    """Every valid table in which all ``n`` colors occur."""
    if not 1 <= n <= bound:
        raise ValueError(f"n must lie in 1..{bound}")
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    choices = ((1, 0), (0, 1), (1, 1))
    out = []
    for picks in itertools.product(choices, repeat=len(pairs)):
        eps = [[0] * n for _ in range(n)]
        for (i, j), (a, b) in zip(pairs, picks):
            eps[i - 1][j - 1], eps[j - 1][i - 1] = a, b
        if not _transitive(eps, n):
            continue
        forced = {c for (i, j), p in zip(pairs, picks) if p == (1, 1) for c in (i, j)}
        free = [c for c in range(1, n + 1) if c not in forced]
        for bits in itertools.product((0, 1), repeat=len(free)):
            table = [row[:] for row in eps]
            for c in forced:
                table[c - 1][c - 1] = 1
            for c, bit in zip(free, bits):
                table[c - 1][c - 1] = bit
            out.append(Subclass.from_table(n, table))
    out.sort(key=lambda s: s.epsilon)
    return out


def _transitive(eps, n) -> bool:
    for i, j, k in itertools.permutations(range(n), 3):
        if eps[i][j] and eps[j][k] and not eps[i][k]:
            return False
    return True


def f_recurrence(n: int) -> int:
    values = [1]
    for k in range(1, n + 1):
        if k == 1:
            values.append(2)
            continue
        values.append(k * values[k - 1] + sum(comb(k, m) * values[m] for m in range(k)))
    return values[n]


def three_leaf_types(t: ColoredTree) -> set:
    """Pairs ``(top, low)`` of colors with ``X(top, low)`` a restriction of ``t``."""
    found = set()

    def go(node):
        if isinstance(node, int):
            return set()
        below = go(node[1]) | go(node[2])
        for c in below:
            found.add((node[0], c))
        return below | {node[0]}

    if isinstance(t.shape, tuple):
        go(t.shape)
    return found


def subclass_membership(s: Subclass, t: ColoredTree) -> bool:
    m = t.leaf_count
    if s.special_tag == "T<=1":
        return m <= 1
    if s.special_tag == "T<=2":
        return m <= 2 and set(t.color_counts()) <= s.colors
    if not set(t.color_counts()) <= s.colors:
        return False
    return all(s.eps(i, j) for i, j in three_leaf_types(t))


def support_of(mu: Measure) -> Subclass:
    n = mu.n
    colors = frozenset(k for k in range(1, n + 1) if mu.value(B(k)))
    eps = [[int(bool(evaluate(mu, three_leaf(i, j)))) for j in range(1, n + 1)] for i in range(1, n + 1)]
    return Subclass.from_table(n, eps, colors)


def support_label(s: Subclass) -> str:
    """Column label used for n = 2 tables: a name for infinite classes, else ``Trivial``."""
    if not s.is_infinite():
        return "Trivial"
    return s.name or "unnamed"


# ---------------------------------------------------------------- induced


@dataclass(frozen=True)
class InducedSubclassSpec:
    """Colors listed in ``order`` increase from the root; ``repeats`` may repeat along a path."""

    n: int
    order: tuple
    repeats: frozenset

    def rank(self) -> dict:
        return {c: r for r, c in enumerate(self.order)}

    def subclass(self) -> Subclass:
        rank = self.rank()
        eps = [[0] * self.n for _ in range(self.n)]
        for i in self.order:
            for j in self.order:
                if i == j:
                    eps[i - 1][i - 1] = int(i in self.repeats)
                elif rank[i] < rank[j]:
                    eps[i - 1][j - 1] = 1
        return Subclass.from_table(self.n, eps, self.order)

    def measure(self) -> Measure:
        """A measure on all trees whose restriction to this subclass is the induced one."""
        if sorted(self.order) != list(range(1, self.n + 1)):
            raise ValueError("needs an order on all n colors")
        rank = self.rank()
        beta = (1,) * self.n
        chi = tuple(
            tuple(int(i in self.repeats) if i == j else int(rank[i] < rank[j]) for j in range(1, self.n + 1))
            for i in range(1, self.n + 1)
        )
        return solve_measure(NCode(self.n, beta, chi))

    def to_json(self) -> dict:
        return {"n": self.n, "order": list(self.order), "repeats": sorted(self.repeats)}


def enumerate_induced(n: int, bound: int = DEFAULT_MAX_N) -> list:
    if not 1 <= n <= bound:
        raise ValueError(f"n must lie in 1..{bound}")
    out = []
    for order in itertools.permutations(range(1, n + 1)):
        for size in range(n + 1):
            for rep in itertools.combinations(range(1, n + 1), size):
                out.append(InducedSubclassSpec(n, order, frozenset(rep)))
    return out


def spec_of(s: Subclass) -> InducedSubclassSpec | None:
    """Recover (order, repeats) from a table with exactly one of each pair, else None."""
    cs = sorted(s.colors)
    for i, j in itertools.combinations(cs, 2):
        if s.eps(i, j) + s.eps(j, i) != 1:
            return None
    order = tuple(sorted(cs, key=lambda c: sum(s.eps(d, c) for d in cs if d != c)))
    return InducedSubclassSpec(s.n, order, frozenset(c for c in cs if s.eps(c, c)))


MINUS_HALF = Dyadic(-1, -1)


def induced_measure_value(spec: InducedSubclassSpec, t: ColoredTree) -> Dyadic:
    if not subclass_membership(spec.subclass(), t):
        raise ValueError("tree is not in the subclass")
    if t.leaf_count == 0:
        return Dyadic(1)
    counts = t.color_counts()
    value = Dyadic(1)
    seen = 0
    for c in spec.order:
        p = MINUS_HALF if c in spec.repeats else Dyadic(1)
        v = counts.get(c, 0)
        value = value * p ** v * (1 + p) ** (1 + seen)
        seen += v
    return value


def verify_restriction(n: int, max_leaves: int = 5) -> list:
    """Compare each measure with the closed formula on its own support."""
    if n > 2:
        raise ValueError("desk-scale check is limited to n <= 2")
    trees = [t for m in range(0, max_leaves + 1) for t in enumerate_structures(n, m)]
    report = []
    for index, mu in enumerate(enumerate_measures(n)):
        support = support_of(mu)
        if not support.colors:
            continue
        spec = spec_of(support)
        mismatches = []
        checked = 0
        for t in trees:
            if not subclass_membership(support, t):
                continue
            checked += 1
            got, want = evaluate(mu, t), induced_measure_value(spec, t)
            if got != want:
                mismatches.append({"tree": str(t), "measure": str(got), "formula": str(want)})
        report.append(
            {
                "index": index,
                "row": [str(v) for v in mu.row()],
                "support": support.to_json(),
                "spec": spec.to_json() if spec else None,
                "checked": checked,
                "mismatches": mismatches,
                "pass": spec is not None and not mismatches,
            }
        )
    return report

"""Measures: n-codes, labelled directed trees, the linear solve, and evaluation.

A measure is fixed by an n-code ``(beta, chi)``.  The values ``S(i)`` solve
``D s = 1`` with ``d_ii = 2 - 3 chi(i,i) - beta(i)`` and
``d_ij = chi(j,i) - beta(j)``; then ``B(i) = beta(i) S(i)`` and
``C(i,j) = chi(i,j) S(i)``.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .amalgam import EmbeddingError, is_embedding
from .dyadic import Dyadic, NonDyadicError
from .linalg import bareiss_solve
from .ring import A, Generator, all_generators, generator_value, marked_generator
from .trees import ColoredTree, parse_tree, restrict, to_string

DEFAULT_MAX_N = 4


class InvalidCodeError(ValueError):
    pass


@dataclass(frozen=True)
class NCode:
    n: int
    beta: tuple  # beta[i-1]
    chi: tuple  # chi[i-1][j-1]

    def b(self, i: int) -> int:
        return self.beta[i - 1]

    def x(self, i: int, j: int) -> int:
        return self.chi[i - 1][j - 1]

    def violations(self) -> list:
        bad = []
        r = range(1, self.n + 1)
        values = set(self.beta) | {v for row in self.chi for v in row}
        if not values <= {0, 1}:
            bad.append("entries must be 0 or 1")
        b, x = self.b, self.x
        for i, j in itertools.permutations(r, 2):
            if x(i, j) * x(j, i):
                bad.append(f"chi({i},{j}) chi({j},{i}) != 0")
            if b(i) * b(j) != b(i) * x(j, i) + b(j) * x(i, j):
                bad.append(f"beta condition fails at ({i},{j})")
        for i, j, k in itertools.permutations(r, 3):
            if x(i, k) * x(j, k) != x(i, j) * x(j, k) + x(j, i) * x(i, k):
                bad.append(f"chi condition fails at ({i},{j},{k})")
        return bad

    def is_valid(self) -> bool:
        return not self.violations()

    def to_json(self) -> dict:
        return {"beta": list(self.beta), "chi": [list(row) for row in self.chi]}


@dataclass(frozen=True)
class LabeledDirectedTree:
    """Edges are ``(tail, head, label)``; labels run over ``1..n``."""

    vertices: tuple
    edges: tuple
    root: int
    distinguished: int

    @property
    def n(self) -> int:
        return len(self.edges)

    def validate(self) -> None:
        n = self.n
        if len(self.vertices) != n + 1:
            raise ValueError("need exactly one more vertex than edges")
        if sorted(e[2] for e in self.edges) != list(range(1, n + 1)):
            raise ValueError("edge labels must be 1..n, each once")
        if self.root not in self.vertices or self.distinguished not in self.vertices:
            raise ValueError("root and distinguished vertex must be vertices")
        seen = {self.root}
        queue = deque([self.root])
        adj = self.adjacency()
        while queue:
            v = queue.popleft()
            for w, _ in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if seen != set(self.vertices):
            raise ValueError("edges do not form a tree")

    def adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for tail, head, label in self.edges:
            adj[tail].append((head, label))
            adj[head].append((tail, label))
        return adj

    def key(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def to_json(self) -> dict:
        return {
            "edges": [{"from": t, "to": h, "label": l} for t, h, l in sorted(self.edges, key=lambda e: e[2])],
            "root": self.root,
            "distinguished": self.distinguished,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LabeledDirectedTree":
        edges = tuple((e["from"], e["to"], e["label"]) for e in obj["edges"])
        vertices = {obj["root"], obj["distinguished"]}
        for t, h, _ in edges:
            vertices.update((t, h))
        tree = cls(tuple(sorted(vertices)), edges, obj["root"], obj["distinguished"])
        tree.validate()
        return tree


def ncode_from_tree(t: LabeledDirectedTree) -> NCode:
    t.validate()
    n = t.n
    adj = t.adjacency()
    # root-path edge sets per vertex
    path_edges = {t.root: ()}
    far_end = {}
    queue = deque([t.root])
    while queue:
        v = queue.popleft()
        for w, label in adj[v]:
            if w not in path_edges:
                path_edges[w] = path_edges[v] + (label,)
                far_end[label] = w
                queue.append(w)
    heads = {label: head for _, head, label in t.edges}
    on_path = set(path_edges[t.distinguished])
    beta = tuple(int(i in on_path) for i in range(1, n + 1))
    chi = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if i == j:
                row.append(int(heads[i] != far_end[i]))
            else:
                row.append(int(i in path_edges[far_end[j]]))
        chi.append(tuple(row))
    return NCode(n, beta, tuple(chi))


def tree_from_ncode(q: NCode) -> LabeledDirectedTree:
    """The preimage of ``q``: vertex 0 is the root, vertex i is the far end of edge i."""
    problems = q.violations()
    if problems:
        raise InvalidCodeError("; ".join(problems))
    n = q.n
    ancestors = {j: {i for i in range(1, n + 1) if i != j and q.x(i, j)} for j in range(1, n + 1)}
    edges = []
    for j in range(1, n + 1):
        # parent edge: the ancestor lying below every other ancestor
        parents = [i for i in ancestors[j] if ancestors[j] - {i} <= ancestors[i]]
        if len(ancestors[j]) and len(parents) != 1:
            raise InvalidCodeError(f"ancestors of edge {j} are not a chain")
        near = parents[0] if parents else 0
        edges.append((j, near, j) if q.x(j, j) else (near, j, j))
    chain = [i for i in range(1, n + 1) if q.b(i)]
    deepest = max(chain, key=lambda i: len(ancestors[i]), default=0)
    tree = LabeledDirectedTree(tuple(range(n + 1)), tuple(edges), 0, deepest)
    if ncode_from_tree(tree) != q:
        raise InvalidCodeError("code is not the image of any tree")
    return tree


def enumerate_trees(n: int) -> list:
    """Every labelled directed rooted tree with a distinguished vertex, canonically numbered."""
    out = []
    for parents in itertools.product(range(n + 1), repeat=n):
        if not _acyclic(parents):
            continue
        for flips in itertools.product((0, 1), repeat=n):
            edges = tuple(
                (j, parents[j - 1], j) if flips[j - 1] else (parents[j - 1], j, j) for j in range(1, n + 1)
            )
            for v in range(n + 1):
                out.append(LabeledDirectedTree(tuple(range(n + 1)), edges, 0, v))
    return out


def _acyclic(parents) -> bool:
    for start in range(1, len(parents) + 1):
        v, steps = start, 0
        while v:
            v = parents[v - 1]
            steps += 1
            if steps > len(parents):
                return False
    return True


# ------------------------------------------------------------------- solve


def d_matrix(q: NCode) -> list:
    n = q.n
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if i == j:
                row.append(2 - 3 * q.x(i, i) - q.b(i))
            else:
                row.append(q.x(j, i) - q.b(j))
        rows.append(row)
    return rows


def _is_power_of_two(v: int) -> bool:
    v = abs(v)
    return v > 0 and not v & (v - 1)


@dataclass
class Measure:
    n: int
    B: dict
    C: dict
    S: dict
    code: NCode
    tree: LabeledDirectedTree | None = None
    det: int = 0
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def value(self, g: Generator) -> Dyadic:
        try:
            return self._cache[g]
        except KeyError:
            v = self._cache[g] = generator_value(g, self)
            return v

    @property
    def A(self) -> Dyadic:
        return self.value(A())

    def row(self) -> tuple:
        """``(B(1), C(1,1), ..., C(1,n), B(2), C(2,1), ...)`` in that order."""
        out = []
        for i in range(1, self.n + 1):
            out.append(self.B[i])
            out.extend(self.C[i, j] for j in range(1, self.n + 1))
        return tuple(out)

    def is_regular(self) -> bool:
        return all(self.value(g) for g in all_generators(self.n))

    def key(self) -> str:
        return self.tree.key() if self.tree is not None else json.dumps(self.code.to_json())

    def to_json(self) -> dict:
        r = range(1, self.n + 1)
        return {
            "n": self.n,
            "tree": self.tree.to_json() if self.tree else None,
            "beta": list(self.code.beta),
            "chi": [list(row) for row in self.code.chi],
            "S": [self.S[i].to_json() for i in r],
            "B": [self.B[i].to_json() for i in r],
            "C": [[self.C[i, j].to_json() for j in r] for i in r],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Measure":
        code = NCode(obj["n"], tuple(obj["beta"]), tuple(tuple(row) for row in obj["chi"]))
        mu = solve_measure(code)
        if obj.get("tree"):
            mu.tree = LabeledDirectedTree.from_json(obj["tree"])
        for field_name in ("S", "B"):
            if field_name in obj:
                given = [Dyadic.from_json(v) for v in obj[field_name]]
                if given != [getattr(mu, field_name)[i] for i in range(1, mu.n + 1)]:
                    raise ValueError(f"stored {field_name} does not match the n-code")
        return mu


def solve_measure(q: NCode) -> Measure:
    problems = q.violations()
    if problems:
        raise InvalidCodeError("; ".join(problems))
    n = q.n
    det, sol = bareiss_solve(d_matrix(q), [1] * n)
    assert _is_power_of_two(det), f"determinant {det} is not a signed power of two"
    try:
        S = {i + 1: Dyadic.coerce(v) for i, v in enumerate(sol)}
    except NonDyadicError as exc:  # impossible for a valid code
        raise AssertionError(f"non-dyadic solution {sol}") from exc
    B = {i: S[i] * q.b(i) for i in S}
    C = {(i, j): S[i] * q.x(i, j) for i in S for j in S}
    return Measure(n, B, C, S, q, det=det)


def enumerate_measures(n: int, bound: int = DEFAULT_MAX_N) -> list:
    if not 1 <= n <= bound:
        raise ValueError(f"n must lie in 1..{bound}")
    out = []
    for tree in enumerate_trees(n):
        mu = solve_measure(ncode_from_tree(tree))
        mu.tree = tree
        out.append(mu)
    return out


def measure_from_values(n: int, values: dict) -> Measure:
    """Find the enumerated measure whose B and C tables equal ``values``."""
    for mu in enumerate_measures(n):
        if all(mu.value(g) == Dyadic.coerce(v) for g, v in values.items()):
            return mu
    raise LookupError("no measure has those values")


# ------------------------------------------------------------------- evaluation


def chain_generators(sup: ColoredTree, start: set, order=None) -> list:
    """Generators met while growing ``sup`` from the leaves in ``start``."""
    if order is None:
        return list(_default_chain(sup, frozenset(start)))
    current = set(start)
    out = []
    for leaf in order:
        current.add(leaf)
        out.append(marked_generator(restrict(sup, current), leaf))
    return out


@lru_cache(maxsize=1 << 16)
def _default_chain(sup: ColoredTree, start: frozenset) -> tuple:
    current = set(start)
    out = []
    for leaf in sup.leaves:
        if leaf not in start:
            current.add(leaf)
            out.append(marked_generator(restrict(sup, current), leaf))
    return tuple(out)


def evaluate(mu: Measure, t: ColoredTree, order=None) -> Dyadic:
    """Value of a tree, built up one leaf at a time (``order`` picks the sequence)."""
    if isinstance(t, str):
        t = parse_tree(t)
    value = Dyadic(1)
    for g in chain_generators(t, set(), order):
        value = value * mu.value(g)
        if not value:
            break
    return value


def evaluate_embedding(mu: Measure, sub: ColoredTree, sup: ColoredTree, leaf_map: dict) -> Dyadic:
    if not is_embedding(sub, sup, leaf_map):
        raise EmbeddingError("leaf map is not an embedding")
    value = Dyadic(1)
    for g in chain_generators(sup, set(leaf_map.values())):
        value = value * mu.value(g)
    return value


def _one_point_extensions(t: ColoredTree, n: int):
    """Every tree obtained by adding one new leaf (id = max id + 1)."""
    new = max(t.leaf_paths, default=-1) + 1
    if t.shape is None:
        yield ColoredTree(new)
        return

    def insert(node):
        for c in range(1, n + 1):
            yield (c, node, new)
        if isinstance(node, tuple):
            for sub in insert(node[1]):
                yield (node[0], sub, node[2])
            for sub in insert(node[2]):
                yield (node[0], node[1], sub)

    for shape in insert(t.shape):
        yield ColoredTree(shape)


def quasi_regularity_witness(mu: Measure, base: ColoredTree, bound: int):
    """Smallest extension of ``base`` (at most ``bound`` new leaves) whose embedding has measure 0."""
    if mu.is_regular():
        raise ValueError("measure is regular")
    frontier = [(base, Dyadic(1))]
    for _ in range(bound):
        nxt = []
        for tree, value in frontier:
            for ext in _one_point_extensions(tree, mu.n):
                new_leaf = max(ext.leaf_paths)
                step = mu.value(marked_generator(ext, new_leaf))
                if not step:
                    return ext
                nxt.append((ext, value * step))
        frontier = nxt
    return None


def render_measure_row(mu: Measure) -> str:
    return " ".join(str(v) for v in mu.row())


def amalgamation_axiom_terms(d, n: int) -> dict:
    """Symbolic sides of the amalgamation axiom, read in both directions.

    ``forward``: the base-to-left embedding against the sum over totals of
    right-to-total embeddings; ``backward`` swaps the roles.
    """
    from .amalgam import enumerate_amalgamations

    totals = enumerate_amalgamations(d, n=n, max_leaves=None)
    left_image = {x for _, x in d.left_emb}
    right_image = {y for _, y in d.right_emb}
    return {
        "forward": (
            tuple(sorted(chain_generators(d.left, left_image))),
            [tuple(sorted(chain_generators(a.total, set(a.right_map.values())))) for a in totals],
        ),
        "backward": (
            tuple(sorted(chain_generators(d.right, right_image))),
            [tuple(sorted(chain_generators(a.total, set(a.left_map.values())))) for a in totals],
        ),
        "count": len(totals),
    }


def axiom_identities(diagrams, n: int) -> set:
    """Distinct symbolic identities ``(lhs, rhs)`` produced by ``diagrams``.

    Many diagrams give the same identity in the generators, so collecting
    them first keeps the numeric check small.
    """
    out = set()
    for d in diagrams:
        terms = amalgamation_axiom_terms(d, n)
        for side in ("forward", "backward"):
            lhs, rhs = terms[side]
            out.add((lhs, tuple(sorted(rhs))))
    return out


def _monomial(mu, mono) -> Dyadic:
    out = Dyadic(1)
    for g in mono:
        out = out * mu.value(g)
    return out


def identity_holds(mu, identity) -> bool:
    lhs, rhs = identity
    return _monomial(mu, lhs) == sum((_monomial(mu, m) for m in rhs), Dyadic(0))


def failing_identities(measures: list, identities) -> list:
    """``(measure index, identity)`` pairs where the identity fails."""
    bad = []
    for index, mu in enumerate(measures):
        cache: dict = {}

        def mono(m):
            if m not in cache:
                cache[m] = _monomial(mu, m)
            return cache[m]

        for lhs, rhs in identities:
            if mono(lhs) != sum((mono(m) for m in rhs), Dyadic(0)):
                bad.append((index, (lhs, rhs)))
    return bad


def check_amalgamation_axiom(measures: list, d, n: int) -> list:
    """Measures (by index) that violate the axiom on diagram ``d``."""
    terms = amalgamation_axiom_terms(d, n)
    return [
        (index, side)
        for index, mu in enumerate(measures)
        for side in ("forward", "backward")
        if not identity_holds(mu, (terms[side][0], terms[side][1]))
    ]

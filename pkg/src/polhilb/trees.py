"""Labeled spanning trees of K_n' and the maximal polarizations of the square-free square.

A labeled tree on vertices ``1..n'`` has its edges sorted lexicographically;
edge ``e_t`` is the ``t``-th edge in that order (1-based).  The tree ideal
``I_T`` lives in the ring with one variable ``x_{v,e}`` per incident
vertex/edge pair and has one generator ``x_{i,a} x_{j,b}`` for every
``i < j``, where the path from ``i`` to ``j`` starts with ``e_a`` and ends
with ``e_b``.
"""

from __future__ import annotations

import heapq
import random
from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .errors import MalformedInputError
from .monomials import Monomial, MonomialIdeal, VariableUniverse, minimalize
from .polarize import DepolarizationSpec


@dataclass(frozen=True)
class LabeledTree:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 2:
            raise MalformedInputError("a tree needs at least two vertices")
        edges = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        object.__setattr__(self, "edges", edges)
        if len(edges) != self.n - 1:
            raise MalformedInputError(f"a tree on {self.n} vertices has {self.n - 1} edges")
        parent = list(range(self.n + 1))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v in edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n) or u == v:
                raise MalformedInputError(f"bad edge ({u}, {v})")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise MalformedInputError("edges contain a cycle")
            parent[ru] = rv

    def neighbors(self) -> dict[int, list[tuple[int, int]]]:
        """Vertex -> list of ``(neighbor, edge label)``."""
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(1, self.n + 1)}
        for t, (u, v) in enumerate(self.edges, start=1):
            adj[u].append((v, t))
            adj[v].append((u, t))
        return adj

    def degrees(self) -> dict[int, int]:
        return {v: len(nb) for v, nb in self.neighbors().items()}

    def path_edges(self, i: int, j: int) -> list[int]:
        """Edge labels along the path from ``i`` to ``j``."""
        adj = self.neighbors()
        back: dict[int, tuple[int, int] | None] = {i: None}
        stack = [i]
        while stack:
            u = stack.pop()
            for v, t in adj[u]:
                if v not in back:
                    back[v] = (u, t)
                    stack.append(v)
        path = []
        v = j
        while back[v] is not None:
            u, t = back[v]
            path.append(t)
            v = u
        return path[::-1]

    def relabel(self, permutation: Sequence[int]) -> LabeledTree:
        """Apply the vertex map ``v -> permutation[v-1]``."""
        return LabeledTree(self.n, tuple((permutation[u - 1], permutation[v - 1]) for u, v in self.edges))

    @classmethod
    def path(cls, n: int) -> LabeledTree:
        return cls(n, tuple((v, v + 1) for v in range(1, n)))

    @classmethod
    def star(cls, n: int, center: int | None = None) -> LabeledTree:
        center = n if center is None else center
        return cls(n, tuple((v, center) for v in range(1, n + 1) if v != center))


def prufer_decode(sequence: Sequence[int], n: int | None = None) -> LabeledTree:
    n = len(sequence) + 2 if n is None else n
    if len(sequence) != n - 2:
        raise MalformedInputError(f"a Pruefer sequence for {n} vertices has length {n - 2}")
    if any(not 1 <= s <= n for s in sequence):
        raise MalformedInputError(f"Pruefer labels must lie in 1..{n}")
    degree = [1] * (n + 1)
    for s in sequence:
        degree[s] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for s in sequence:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, s))
        degree[s] -= 1
        if degree[s] == 1:
            heapq.heappush(leaves, s)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return LabeledTree(n, tuple(edges))


def prufer_encode(tree: LabeledTree) -> tuple[int, ...]:
    adj = {v: {u for u, _ in nb} for v, nb in tree.neighbors().items()}
    leaves = [v for v, nb in adj.items() if len(nb) == 1]
    heapq.heapify(leaves)
    out = []
    for _ in range(tree.n - 2):
        leaf = heapq.heappop(leaves)
        (parent,) = adj.pop(leaf)
        adj[parent].discard(leaf)
        out.append(parent)
        if len(adj[parent]) == 1:
            heapq.heappush(leaves, parent)
    return tuple(out)


def all_trees(n: int) -> Iterator[LabeledTree]:
    """All ``n^(n-2)`` labeled trees on ``n`` vertices, in Pruefer order."""
    for seq in product(range(1, n + 1), repeat=n - 2):
        yield prufer_decode(seq, n)


def random_tree(n: int, rng: random.Random) -> LabeledTree:
    return prufer_decode([rng.randint(1, n) for _ in range(n - 2)], n)


def spider(legs: int = 3, length: int = 2) -> LabeledTree:
    """Legs of equal length glued at a center.

    The default shape is numbered as the path ``1-2-3-4-5`` with the leg ``3-6-7``.
    """
    if (legs, length) == (3, 2):
        return LabeledTree(7, ((1, 2), (2, 3), (3, 4), (4, 5), (3, 6), (6, 7)))
    n = legs * length + 1
    edges = []
    nxt = 2
    for _ in range(legs):
        prev = 1
        for _ in range(length):
            edges.append((prev, nxt))
            prev, nxt = nxt, nxt + 1
    return LabeledTree(n, tuple(edges))


def tree_universe(tree: LabeledTree) -> tuple[VariableUniverse, dict[tuple[int, int], int]]:
    """Variables ``x_{v,e}`` for incident pairs, sorted by ``(vertex, edge)``."""
    pairs = sorted((v, t) for t, e in enumerate(tree.edges, start=1) for v in e)
    names = tuple(f"x_{{v={v},e={t}}}" for v, t in pairs)
    return VariableUniverse(names), {p: k for k, p in enumerate(pairs)}


@dataclass(frozen=True)
class TreeIdeal:
    tree: LabeledTree
    ideal: MonomialIdeal
    spec: DepolarizationSpec
    variables: dict[tuple[int, int], int]

    def vertices(self) -> list[int]:
        """Generator indices of ``x_{i,t} x_{j,t}`` for each edge ``e_t = (i, j)``, ordered by ``t``."""
        out = []
        for t, (u, v) in enumerate(self.tree.edges, start=1):
            g = Monomial.from_indices((self.variables[(u, t)], self.variables[(v, t)]))
            out.append(self.ideal.index(g))
        return out


def tree_ideal(tree: LabeledTree) -> TreeIdeal:
    universe, index = tree_universe(tree)
    gens = []
    for i in range(1, tree.n + 1):
        for j in range(i + 1, tree.n + 1):
            path = tree.path_edges(i, j)
            gens.append(Monomial.from_indices((index[(i, path[0])], index[(j, path[-1])])))
    ideal = minimalize(gens, universe)
    base = VariableUniverse.indexed(tree.n)
    grouping = tuple(v - 1 for v, _ in sorted(index, key=index.get))
    return TreeIdeal(tree, ideal, DepolarizationSpec(grouping, base), index)


@dataclass(frozen=True)
class TreeIndexReport:
    line_graph_degrees: dict[int, int]
    nu1: int
    nu2: int
    index: int


def line_graph_degrees(tree: LabeledTree) -> dict[int, int]:
    """Edge label -> number of other edges sharing an endpoint."""
    deg = tree.degrees()
    return {t: deg[u] + deg[v] - 2 for t, (u, v) in enumerate(tree.edges, start=1)}


def tree_index(tree: LabeledTree) -> TreeIndexReport:
    degrees = line_graph_degrees(tree)
    counts = Counter(degrees.values())
    nu1, nu2 = counts[1], counts[2]
    return TreeIndexReport(degrees, nu1, nu2, (tree.n - 2) * nu1 + nu2)


def predicted_tangent_dim(tree: LabeledTree) -> int:
    if tree.n < 3:
        raise MalformedInputError("the dimension formula needs at least three vertices")
    return (3 * tree.n - 4) * (tree.n - 1) + tree_index(tree).index

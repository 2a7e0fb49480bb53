"""Undirected simple graphs with dense integer indices.

Vertices are named by opaque strings and mapped to indices in insertion
order; everything on a hot path works with indices. Distance queries run
truncated breadth-first searches whose results (balls) are memoized per
vertex and radius, so repeated legality checks against the same stones stay
cheap. A graph can be frozen, after which mutation raises and the memoized
balls are safe to share between concurrent solver runs.
"""

from __future__ import annotations

import random
from bisect import insort
from collections import deque
from itertools import combinations
from typing import Iterator

from .errors import (
    CorpusTooLargeError,
    DuplicateVertexError,
    FrozenGraphError,
    InvalidParameterError,
    SelfLoopError,
    UnknownVertexError,
)

# 2^(n(n-1)/2) labelled graphs; above six vertices the corpus is useless.
MAX_ENUMERATION_VERTICES = 6

Bipartition = tuple[frozenset[int], frozenset[int]]


class Graph:
    """Mutable-until-frozen undirected simple graph over named vertices."""

    __slots__ = ("_names", "_index", "_adj", "_edges", "_frozen", "_ball_cache")

    def __init__(self):
        self._names: list[str] = []
        self._index: dict[str, int] = {}
        self._adj: list[list[int]] = []
        self._edges: set[tuple[int, int]] = set()
        self._frozen = False
        self._ball_cache: dict[tuple[int, int], dict[int, int]] = {}

    # -- construction ------------------------------------------------------

    def add_vertex(self, name: str) -> int:
        """Append a vertex and return its dense index."""
        self._check_mutable()
        if not isinstance(name, str) or not name:
            raise InvalidParameterError("vertex name must be a non-empty string")
        if name in self._index:
            raise DuplicateVertexError(f"vertex {name!r} already present")
        idx = len(self._names)
        self._names.append(name)
        self._index[name] = idx
        self._adj.append([])
        return idx

    def add_edge(self, u: int | str, v: int | str) -> None:
        """Insert the unordered edge {u, v}; adding it twice is a no-op."""
        self._check_mutable()
        i, j = self.index_of(u), self.index_of(v)
        if i == j:
            raise SelfLoopError(f"self-loop at {self._names[i]!r}")
        key = (i, j) if i < j else (j, i)
        if key in self._edges:
            return
        self._edges.add(key)
        insort(self._adj[i], j)
        insort(self._adj[j], i)

    def freeze(self) -> "Graph":
        """Mark the graph immutable; idempotent, returns self."""
        self._frozen = True
        return self

    def copy(self) -> "Graph":
        """Unfrozen structural copy."""
        g = Graph()
        g._names = list(self._names)
        g._index = dict(self._index)
        g._adj = [list(a) for a in self._adj]
        g._edges = set(self._edges)
        return g

    def _check_mutable(self):
        if self._frozen:
            raise FrozenGraphError("graph is frozen")
        self._ball_cache.clear()

    # -- queries -----------------------------------------------------------

    @property
    def frozen(self) -> bool:
        return self._frozen

    @property
    def vertex_count(self) -> int:
        return len(self._names)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self._names)

    def index_of(self, v: int | str) -> int:
        """Resolve a name or index to a dense index."""
        if isinstance(v, str):
            try:
                return self._index[v]
            except KeyError:
                raise UnknownVertexError(f"unknown vertex {v!r}") from None
        if not 0 <= v < len(self._names):
            raise UnknownVertexError(f"vertex index {v} out of range")
        return v

    def name_of(self, i: int) -> str:
        if not 0 <= i < len(self._names):
            raise UnknownVertexError(f"vertex index {i} out of range")
        return self._names[i]

    def has_vertex(self, name: str) -> bool:
        return name in self._index

    def has_edge(self, u: int | str, v: int | str) -> bool:
        i, j = self.index_of(u), self.index_of(v)
        return ((i, j) if i < j else (j, i)) in self._edges

    def neighbors(self, v: int | str) -> tuple[int, ...]:
        return tuple(self._adj[self.index_of(v)])

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as sorted index pairs, in deterministic order."""
        return iter(sorted(self._edges))

    def distance(self, u: int | str, v: int | str) -> int | None:
        """Shortest-path length between u and v, or None if unreachable."""
        src, dst = self.index_of(u), self.index_of(v)
        if src == dst:
            return 0
        seen = {src: 0}
        queue = deque([src])
        while queue:
            cur = queue.popleft()
            d = seen[cur] + 1
            for nxt in self._adj[cur]:
                if nxt not in seen:
                    if nxt == dst:
                        return d
                    seen[nxt] = d
                    queue.append(nxt)
        return None

    def ball(self, u: int | str, radius: int) -> dict[int, int]:
        """All vertices within the given radius of u, mapped to exact distance.

        Truncated BFS, memoized per (vertex, radius) until the next mutation.
        """
        if radius < 0:
            raise InvalidParameterError("radius must be >= 0")
        src = self.index_of(u)
        key = (src, radius)
        cached = self._ball_cache.get(key)
        if cached is not None:
            return cached
        out = {src: 0}
        queue = deque([src])
        while queue:
            cur = queue.popleft()
            d = out[cur] + 1
            if d > radius:
                break
            for nxt in self._adj[cur]:
                if nxt not in out:
                    out[nxt] = d
                    queue.append(nxt)
        self._ball_cache[key] = out
        return out

    def __repr__(self):
        return f"Graph(|V|={self.vertex_count}, |E|={self.edge_count})"


# -- generators --------------------------------------------------------------


def _indexed(n: int, prefix: str = "v") -> Graph:
    g = Graph()
    for i in range(n):
        g.add_vertex(f"{prefix}{i}")
    return g


def gen_path(n: int) -> Graph:
    """Path on n vertices v0 .. v{n-1}."""
    if n < 0:
        raise InvalidParameterError("n must be >= 0")
    g = _indexed(n)
    for i in range(n - 1):
        g.add_edge(i, i + 1)
    return g.freeze()


def gen_cycle(n: int) -> Graph:
    """Cycle on n vertices; n must be 0 or at least 3 to stay simple."""
    if n < 0 or n in (1, 2):
        raise InvalidParameterError("cycle needs n = 0 or n >= 3")
    g = _indexed(n)
    for i in range(n):
        g.add_edge(i, (i + 1) % n)
    return g.freeze()


def gen_complete_bipartite(p: int, q: int) -> tuple[Graph, Bipartition]:
    """K_{p,q} with left vertices l0.. and right vertices r0.., plus the sides."""
    if p < 0 or q < 0:
        raise InvalidParameterError("sizes must be >= 0")
    g = Graph()
    left = frozenset(g.add_vertex(f"l{i}") for i in range(p))
    right = frozenset(g.add_vertex(f"r{i}") for i in range(q))
    for i in sorted(left):
        for j in sorted(right):
            g.add_edge(i, j)
    return g.freeze(), (left, right)


def gen_gnp(n: int, prob: float, seed: int) -> Graph:
    """Erdos-Renyi style graph: each pair kept with the given probability."""
    if n < 0:
        raise InvalidParameterError("n must be >= 0")
    if not 0.0 <= prob <= 1.0:
        raise InvalidParameterError("prob must be in [0, 1]")
    rng = random.Random(seed)
    g = _indexed(n)
    for i, j in combinations(range(n), 2):
        if rng.random() < prob:
            g.add_edge(i, j)
    return g.freeze()


def gen_random_bipartite(p: int, q: int, prob: float, seed: int) -> tuple[Graph, Bipartition]:
    """Random bipartite graph: each cross pair kept with the given probability."""
    if p < 0 or q < 0:
        raise InvalidParameterError("sizes must be >= 0")
    if not 0.0 <= prob <= 1.0:
        raise InvalidParameterError("prob must be in [0, 1]")
    rng = random.Random(seed)
    g = Graph()
    left = frozenset(g.add_vertex(f"l{i}") for i in range(p))
    right = frozenset(g.add_vertex(f"r{i}") for i in range(q))
    for i in sorted(left):
        for j in sorted(right):
            if rng.random() < prob:
                g.add_edge(i, j)
    return g.freeze(), (left, right)


# -- exhaustive corpora -------------------------------------------------------


def all_labelled_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on n vertices, one per edge subset, fixed order."""
    if n < 0:
        raise InvalidParameterError("n must be >= 0")
    if n > MAX_ENUMERATION_VERTICES:
        raise CorpusTooLargeError(f"n = {n} exceeds bound {MAX_ENUMERATION_VERTICES}")
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        g = _indexed(n)
        for bit, (i, j) in enumerate(pairs):
            if mask >> bit & 1:
                g.add_edge(i, j)
        yield g.freeze()


def all_labelled_bipartite(p: int, q: int) -> Iterator[tuple[Graph, Bipartition]]:
    """Every labelled bipartite graph with fixed sides of sizes p and q."""
    if p < 0 or q < 0:
        raise InvalidParameterError("sizes must be >= 0")
    if p + q > MAX_ENUMERATION_VERTICES:
        raise CorpusTooLargeError(
            f"p + q = {p + q} exceeds bound {MAX_ENUMERATION_VERTICES}"
        )
    pairs = [(i, p + j) for i in range(p) for j in range(q)]
    for mask in range(1 << len(pairs)):
        g = Graph()
        left = frozenset(g.add_vertex(f"l{i}") for i in range(p))
        right = frozenset(g.add_vertex(f"r{j}") for j in range(q))
        for bit, (i, j) in enumerate(pairs):
            if mask >> bit & 1:
                g.add_edge(i, j)
        yield g.freeze(), (left, right)

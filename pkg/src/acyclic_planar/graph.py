"""Simple graphs, rotation-system embeddings, degree censuses and blocks."""
from __future__ import annotations

import dataclasses
from collections import defaultdict
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs or inconsistent embeddings."""


class EmbeddingError(GraphError):
    pass


class Graph:
    """An immutable simple undirected graph on vertices ``0..n-1``.

    Edge ids are dense and follow input order; every edge is stored as
    ``(min, max)``. Neighbor lists are sorted so that every scan over the
    graph is deterministic.
    """

    __slots__ = ("n", "edges", "_adj", "_eid", "_buckets")

    def __init__(self, n: int, edges: Sequence[tuple[int, int]]):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        adj: list[list[int]] = [[] for _ in range(n)]
        eid: dict[tuple[int, int], int] = {}
        norm = []
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise GraphError(f"edge ({a}, {b}) out of range for n={n}")
            if a == b:
                raise GraphError(f"self-loop at vertex {a}")
            key = (a, b) if a < b else (b, a)
            if key in eid:
                raise GraphError(f"parallel edge {key}")
            eid[key] = len(norm)
            norm.append(key)
            adj[a].append(b)
            adj[b].append(a)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(norm)
        self._adj = tuple(tuple(sorted(x)) for x in adj)
        self._eid = eid
        self._buckets: dict[int, tuple[int, ...]] | None = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def has_edge(self, a: int, b: int) -> bool:
        return ((a, b) if a < b else (b, a)) in self._eid

    def edge_id(self, a: int, b: int) -> int:
        try:
            return self._eid[(a, b) if a < b else (b, a)]
        except KeyError:
            raise GraphError(f"no edge ({a}, {b})") from None

    def vertices(self) -> range:
        return range(self.n)

    def max_degree(self) -> int:
        return max((len(x) for x in self._adj), default=0)

    def degrees(self) -> list[int]:
        return [len(x) for x in self._adj]

    def vertices_of_degree(self, k: int) -> tuple[int, ...]:
        if self._buckets is None:
            b: dict[int, list[int]] = defaultdict(list)
            for v in range(self.n):
                b[len(self._adj[v])].append(v)
            self._buckets = {d: tuple(vs) for d, vs in b.items()}
        return self._buckets.get(k, ())

    def subgraph(self, edge_ids: Iterable[int]) -> Graph:
        """Graph on the same vertex set keeping only ``edge_ids``."""
        return Graph(self.n, [self.edges[e] for e in sorted(edge_ids)])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(edge_list: Iterable[Sequence[int]], n: int | None = None) -> Graph:
    """Normalize an edge list into a :class:`Graph`.

    ``n`` defaults to one more than the largest vertex index.
    """
    pairs = []
    for pair in edge_list:
        if len(pair) != 2:
            raise GraphError(f"edge {tuple(pair)!r} is not a pair")
        a, b = int(pair[0]), int(pair[1])
        if a < 0 or b < 0:
            raise GraphError(f"negative vertex index in edge ({a}, {b})")
        pairs.append((a, b))
    if n is None:
        n = 1 + max((max(p) for p in pairs), default=-1)
    return Graph(n, pairs)


class WorkGraph:
    """Mutable edge-deletion workspace over a fixed vertex set.

    Keeps degree buckets so the configuration scan and the max-degree
    query stay cheap while the colorizer peels edges off one at a time.
    """

    def __init__(self, base: Graph, edge_ids: Iterable[int] | None = None):
        self.base = base
        ids = range(base.m) if edge_ids is None else edge_ids
        self.adj: list[set[int]] = [set() for _ in range(base.n)]
        self.edge_ids: set[int] = set()
        for e in ids:
            a, b = base.edges[e]
            self.adj[a].add(b)
            self.adj[b].add(a)
            self.edge_ids.add(e)
        self._bucket: dict[int, set[int]] = defaultdict(set)
        for v in range(base.n):
            self._bucket[len(self.adj[v])].add(v)
        self._maxdeg = max((len(s) for s in self.adj), default=0)

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def m(self) -> int:
        return len(self.edge_ids)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adj[v])

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.adj[a]

    def edge_id(self, a: int, b: int) -> int:
        return self.base.edge_id(a, b)

    def vertices_of_degree(self, k: int) -> list[int]:
        return sorted(self._bucket.get(k, ()))

    def max_degree(self) -> int:
        while self._maxdeg > 0 and not self._bucket.get(self._maxdeg):
            self._maxdeg -= 1
        return self._maxdeg

    def _move(self, v: int, old: int, new: int) -> None:
        self._bucket[old].discard(v)
        self._bucket[new].add(v)
        if new > self._maxdeg:
            self._maxdeg = new

    def remove_edge(self, e: int) -> None:
        a, b = self.base.edges[e]
        self.edge_ids.remove(e)
        for x, y in ((a, b), (b, a)):
            d = len(self.adj[x])
            self.adj[x].remove(y)
            self._move(x, d, d - 1)

    def add_edge(self, e: int) -> None:
        a, b = self.base.edges[e]
        self.edge_ids.add(e)
        for x, y in ((a, b), (b, a)):
            d = len(self.adj[x])
            self.adj[x].add(y)
            self._move(x, d, d + 1)

    def freeze(self) -> Graph:
        return self.base.subgraph(self.edge_ids)


# ---------------------------------------------------------------- censuses


class DegreeCensus:
    """Neighbor-degree counts ``n_k(v)`` of one vertex."""

    def __init__(self, counts: dict[int, int]):
        self.counts = dict(sorted(counts.items()))

    def __getitem__(self, k: int) -> int:
        return self.counts.get(k, 0)

    def at_least(self, k: int) -> int:
        return sum(c for d, c in self.counts.items() if d >= k)

    def at_most(self, k: int) -> int:
        return sum(c for d, c in self.counts.items() if d <= k)

    def __repr__(self) -> str:
        return f"DegreeCensus({self.counts})"


def degree_census(g, v: int) -> DegreeCensus:
    counts: dict[int, int] = defaultdict(int)
    for x in g.neighbors(v):
        counts[g.degree(x)] += 1
    return DegreeCensus(counts)


def count_neighbors(g, v: int, lo: int = 0, hi: int | None = None) -> int:
    """Number of neighbors of ``v`` whose degree lies in ``[lo, hi]``."""
    n = 0
    for x in g.neighbors(v):
        d = g.degree(x)
        if d >= lo and (hi is None or d <= hi):
            n += 1
    return n


# ---------------------------------------------------------------- embeddings


@dataclasses.dataclass(frozen=True)
class PlaneEmbedding:
    """Rotation system: for each vertex the cyclic order of its neighbors."""

    rotation: tuple[tuple[int, ...], ...]

    @classmethod
    def from_lists(cls, rotation: Sequence[Sequence[int]]) -> PlaneEmbedding:
        return cls(tuple(tuple(int(x) for x in r) for r in rotation))

    def validate(self, g: Graph) -> None:
        if len(self.rotation) != g.n:
            raise EmbeddingError(f"rotation has {len(self.rotation)} rows, graph has {g.n} vertices")
        for v, rot in enumerate(self.rotation):
            if len(set(rot)) != len(rot) or sorted(rot) != list(g.neighbors(v)):
                raise EmbeddingError(f"rotation at vertex {v} does not list its incident edges exactly once")

    def restrict(self, keep: Sequence[int]) -> PlaneEmbedding:
        """Embedding of the subgraph induced by ``keep``, relabelled densely.

        Deleting vertices from a plane rotation system leaves a plane one.
        """
        index = {v: i for i, v in enumerate(keep)}
        return PlaneEmbedding(tuple(tuple(index[x] for x in self.rotation[v] if x in index) for v in keep))


@dataclasses.dataclass(frozen=True)
class Face:
    """A face given by its boundary walk of directed edge-ends.

    Vertices may repeat along the walk when the graph has cut vertices.
    An isolated vertex bounds a single face with an empty walk; ``vertex``
    records which vertex that is.
    """

    walk: tuple[tuple[int, int], ...]
    component: int = 0
    vertex: int = -1

    @property
    def degree(self) -> int:
        return len(self.walk)

    @property
    def vertices(self) -> tuple[int, ...]:
        if not self.walk:
            return (self.vertex,)
        return tuple(d[0] for d in self.walk)


def connected_components(g) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [s], [s]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def enumerate_faces(g: Graph, emb: PlaneEmbedding) -> list[Face]:
    """Trace the faces of a rotation system and check Euler's formula.

    The successor of the dart ``u -> v`` is ``v -> w`` where ``w`` precedes
    ``u`` in the rotation at ``v``.
    """
    emb.validate(g)
    pos = [{x: i for i, x in enumerate(rot)} for rot in emb.rotation]
    comps = connected_components(g)
    comp_of = [0] * g.n
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    used: set[tuple[int, int]] = set()
    faces: list[Face] = []
    for a, b in g.edges:
        for start in ((a, b), (b, a)):
            if start in used:
                continue
            walk = []
            dart = start
            while dart not in used:
                used.add(dart)
                walk.append(dart)
                u, v = dart
                rot = emb.rotation[v]
                dart = (v, rot[(pos[v][u] - 1) % len(rot)])
            if dart != start:
                raise EmbeddingError(f"face walk from {start} does not close")
            faces.append(Face(tuple(walk), comp_of[start[0]]))
    for v in range(g.n):
        if g.degree(v) == 0:
            faces.append(Face((), comp_of[v], v))
    face_count = [0] * len(comps)
    for f in faces:
        face_count[f.component] += 1
    for ci, comp in enumerate(comps):
        e = sum(g.degree(v) for v in comp) // 2
        chi = len(comp) - e + face_count[ci]
        if chi != 2:
            raise EmbeddingError(
                f"component {ci} (vertices {comp[:6]}{'...' if len(comp) > 6 else ''}) has "
                f"V - E + F = {chi}, not 2"
            )
    faces.sort(key=lambda f: (f.component, f.walk[0] if f.walk else (f.vertex, -1)))
    return faces


# ---------------------------------------------------------------- stripping


@dataclasses.dataclass(frozen=True)
class StrippedComponent:
    """One component ``H`` of ``G'`` with the map back to ``G``'s vertex ids."""

    graph: Graph
    to_original: tuple[int, ...]

    def original(self, x: int) -> int:
        return self.to_original[x]

    @property
    def from_original(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.to_original)}


def strip_two_vertices(g: Graph) -> list[StrippedComponent]:
    """Remove every vertex of degree 2 in ``g`` once and split into components.

    The removal is a single pass: vertices that drop to degree 2 afterwards
    stay.
    """
    keep = [v for v in range(g.n) if g.degree(v) != 2]
    kept = set(keep)
    rest = Graph(g.n, [(a, b) for a, b in g.edges if a in kept and b in kept])
    out = []
    for comp in connected_components(rest):
        if comp[0] not in kept:
            continue
        index = {v: i for i, v in enumerate(comp)}
        edges = [(index[a], index[b]) for a, b in rest.edges if a in index]
        out.append(StrippedComponent(Graph(len(comp), edges), tuple(comp)))
    return out


# ---------------------------------------------------------------- blocks


@dataclasses.dataclass(frozen=True)
class BlockTree:
    """Biconnected blocks (as edge-id tuples) and the cut vertices joining them."""

    blocks: tuple[tuple[int, ...], ...]
    block_vertices: tuple[tuple[int, ...], ...]
    cut_vertices: frozenset[int]

    def tree_edges(self) -> list[tuple[int, int]]:
        """(block index, cut vertex) incidences of the block-cut forest."""
        return [(bi, v) for bi, vs in enumerate(self.block_vertices) for v in vs if v in self.cut_vertices]

    def tree_order(self) -> list[tuple[int, int | None]]:
        """Blocks in BFS order over the block-cut forest.

        Each entry is ``(block, attaching cut vertex)``; the first block of
        every component has no attaching vertex.
        """
        by_vertex: dict[int, list[int]] = defaultdict(list)
        for bi, vs in enumerate(self.block_vertices):
            for v in vs:
                if v in self.cut_vertices:
                    by_vertex[v].append(bi)
        done = [False] * len(self.blocks)
        order: list[tuple[int, int | None]] = []
        for root in range(len(self.blocks)):
            if done[root]:
                continue
            done[root] = True
            queue = [(root, None)]
            while queue:
                bi, via = queue.pop(0)
                order.append((bi, via))
                for v in self.block_vertices[bi]:
                    for bj in by_vertex.get(v, ()):
                        if not done[bj]:
                            done[bj] = True
                            queue.append((bj, v))
        return order


def block_decompose(g) -> BlockTree:
    """Biconnected components by an iterative Hopcroft-Tarjan DFS."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    blocks: list[tuple[int, ...]] = []
    cuts: set[int] = set()
    timer = 0
    edge_stack: list[int] = []
    for root in range(n):
        if disc[root] != -1 or g.degree(root) == 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [(root, -1, iter(g.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    edge_stack.append(g.edge_id(v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(g.neighbors(w))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append(g.edge_id(v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent != root:
                    cuts.add(parent)
                target = g.edge_id(parent, v)
                comp = []
                while True:
                    e = edge_stack.pop()
                    comp.append(e)
                    if e == target:
                        break
                blocks.append(tuple(sorted(comp)))
        if root_children > 1:
            cuts.add(root)
    blocks.sort()
    block_vertices = []
    for b in blocks:
        vs = set()
        for e in b:
            vs.update(g.base.edges[e] if isinstance(g, WorkGraph) else g.edges[e])
        block_vertices.append(tuple(sorted(vs)))
    return BlockTree(tuple(blocks), tuple(block_vertices), frozenset(cuts))


def is_biconnected(g) -> bool:
    """True for connected graphs with at least 3 vertices and no cut vertex."""
    live = [v for v in range(g.n) if g.degree(v) > 0]
    if len(live) < 3:
        return False
    tree = block_decompose(g)
    return len(tree.blocks) == 1 and len(tree.block_vertices[0]) == len(live)

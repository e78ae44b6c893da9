"""Planar-by-construction graph families, each with a rotation system."""
from __future__ import annotations

import dataclasses
import math
import random
from typing import Sequence

from .graph import Graph, GraphError, PlaneEmbedding

FAMILIES = ("wheel", "grid", "cycle", "complete", "prism", "icosahedron",
            "stacked_triangulation", "subdivided")


@dataclasses.dataclass(frozen=True)
class CorpusSpec:
    """One corpus entry.

    ``params`` per family: wheel ``(rim,)``, grid ``(rows, cols)``, cycle
    ``(n,)``, complete ``(n,)``, prism ``(k,)``, icosahedron ``()``,
    stacked_triangulation ``(n,)``, subdivided ``(count,)`` applied to ``base``.
    """

    family: str
    params: tuple[int, ...] = ()
    seed: int = 0
    base: CorpusSpec | None = None

    def label(self) -> str:
        p = ",".join(map(str, self.params))
        s = f"{self.family}({p})@{self.seed}"
        if self.base is not None:
            s += f"[{self.base.label()}]"
        return s


def _rotation_from_coords(n: int, edges: Sequence[tuple[int, int]], xy) -> PlaneEmbedding:
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    rot = []
    for v in range(n):
        x0, y0 = xy[v]
        rot.append(sorted(nbrs[v], key=lambda w: math.atan2(xy[w][1] - y0, xy[w][0] - x0)))
    return PlaneEmbedding.from_lists(rot)


def _circle(k: int, r: float = 1.0, phase: float = 0.0):
    return [(r * math.cos(phase + 2 * math.pi * i / k), r * math.sin(phase + 2 * math.pi * i / k)) for i in range(k)]


def wheel(rim: int) -> tuple[Graph, PlaneEmbedding]:
    if rim < 3:
        raise GraphError("a wheel needs a rim of at least 3 vertices")
    edges = [(0, i) for i in range(1, rim + 1)]
    edges += [(i, i % rim + 1) for i in range(1, rim + 1)]
    xy = [(0.0, 0.0)] + _circle(rim)
    return Graph(rim + 1, edges), _rotation_from_coords(rim + 1, edges, xy)


def grid(rows: int, cols: int) -> tuple[Graph, PlaneEmbedding]:
    if rows < 1 or cols < 1:
        raise GraphError("grid dimensions must be positive")
    idx = lambda r, c: r * cols + c  # noqa: E731
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((idx(r, c), idx(r, c + 1)))
            if r + 1 < rows:
                edges.append((idx(r, c), idx(r + 1, c)))
    xy = [(float(c), float(r)) for r in range(rows) for c in range(cols)]
    n = rows * cols
    return Graph(n, edges), _rotation_from_coords(n, edges, xy)


def cycle(n: int) -> tuple[Graph, PlaneEmbedding]:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return Graph(n, edges), _rotation_from_coords(n, edges, _circle(n))


def complete(n: int) -> tuple[Graph, PlaneEmbedding]:
    if not 1 <= n <= 4:
        raise GraphError("only K1..K4 are planar complete graphs with a drawing here")
    edges = [(a, b) for a in range(n) for b in range(a + 1, n)]
    xy = ([(0.0, 0.0)] + _circle(3))[:n] if n == 4 else _circle(max(n, 1))[:n]
    return Graph(n, edges), _rotation_from_coords(n, edges, xy)


def prism(k: int) -> tuple[Graph, PlaneEmbedding]:
    if k < 3:
        raise GraphError("a prism needs k >= 3")
    edges = [(i, (i + 1) % k) for i in range(k)]
    edges += [(k + i, k + (i + 1) % k) for i in range(k)]
    edges += [(i, k + i) for i in range(k)]
    xy = _circle(k, 1.0) + _circle(k, 2.0)
    return Graph(2 * k, edges), _rotation_from_coords(2 * k, edges, xy)


def icosahedron() -> tuple[Graph, PlaneEmbedding]:
    phi = (1 + 5 ** 0.5) / 2
    pts = []
    for s1 in (-1, 1):
        for s2 in (-1, 1):
            pts += [(0.0, s1, s2 * phi), (s1, s2 * phi, 0.0), (s2 * phi, 0.0, s1)]
    pts.sort()
    edges = []
    for a in range(12):
        for b in range(a + 1, 12):
            d2 = sum((pa - pb) ** 2 for pa, pb in zip(pts[a], pts[b]))
            if abs(d2 - 4.0) < 1e-9:
                edges.append((a, b))
    nbrs: list[list[int]] = [[] for _ in range(12)]
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    rot = []
    for v in range(12):
        p = pts[v]
        # tangent frame at p, oriented by the outward normal
        ref = (1.0, 0.0, 0.0) if abs(p[0]) < 1.5 else (0.0, 1.0, 0.0)
        e1 = _unit(_cross(ref, p))
        e2 = _cross(p, e1)

        def angle(w, p=p, e1=e1, e2=e2):
            d = tuple(qw - qp for qw, qp in zip(pts[w], p))
            return math.atan2(_dot(d, e2), _dot(d, e1))

        rot.append(sorted(nbrs[v], key=angle))
    return Graph(12, edges), PlaneEmbedding.from_lists(rot)


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _unit(a):
    r = math.sqrt(_dot(a, a))
    return tuple(x / r for x in a)


def stacked_triangulation(n: int, seed: int) -> tuple[Graph, PlaneEmbedding]:
    """Maximal planar graph grown from K4 by inserting vertices into random faces."""
    if n < 4:
        raise GraphError("stacked triangulations start from K4")
    rng = random.Random(seed)
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    rot: list[list[int]] = [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]]
    # faces as dart triples (a, b, c): a->b, b->c, c->a consecutive on the boundary
    faces = [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)]
    for x in range(4, n):
        k = rng.randrange(len(faces))
        a, b, c = faces[k]
        for at, before in ((b, c), (c, a), (a, b)):
            r = rot[at]
            r.insert(r.index(before) + 1, x)
        rot.append([a, b, c])
        edges += [(a, x), (b, x), (c, x)]
        faces[k] = (a, b, x)
        faces += [(b, c, x), (c, a, x)]
    return Graph(n, edges), PlaneEmbedding.from_lists(rot)


def subdivide(g: Graph, emb: PlaneEmbedding | None, count: int, seed: int) -> tuple[Graph, PlaneEmbedding | None]:
    """Subdivide ``count`` distinct edges chosen with ``seed``; new vertices get ids ``n, n+1, ...``."""
    if not 0 <= count <= g.m:
        raise GraphError(f"cannot subdivide {count} of {g.m} edges")
    rng = random.Random(seed)
    chosen = sorted(rng.sample(range(g.m), count))
    pick = set(chosen)
    edges = [e for i, e in enumerate(g.edges) if i not in pick]
    rot = [list(r) for r in emb.rotation] if emb is not None else None
    n = g.n
    for i in chosen:
        a, b = g.edges[i]
        s = n
        n += 1
        edges += [(a, s), (s, b)]
        if rot is not None:
            rot[a][rot[a].index(b)] = s
            rot[b][rot[b].index(a)] = s
            rot.append([a, b])
    return Graph(n, edges), (PlaneEmbedding.from_lists(rot) if rot is not None else None)


def generate(spec: CorpusSpec) -> tuple[Graph, PlaneEmbedding]:
    f, p = spec.family, spec.params
    try:
        if f == "wheel":
            return wheel(*p)
        if f == "grid":
            return grid(*p)
        if f == "cycle":
            return cycle(*p)
        if f == "complete":
            return complete(*p)
        if f == "prism":
            return prism(*p)
        if f == "icosahedron":
            return icosahedron(*p)
        if f == "stacked_triangulation":
            return stacked_triangulation(p[0], spec.seed)
        if f == "subdivided":
            if spec.base is None:
                raise GraphError("subdivided needs a base spec")
            g, emb = generate(spec.base)
            return subdivide(g, emb, p[0], spec.seed)
    except TypeError as exc:
        raise GraphError(f"bad parameters {p} for {f}: {exc}") from None
    raise GraphError(f"unknown family {f!r}")


def default_corpus(seeds: Sequence[int], per_seed: int = 200) -> list[CorpusSpec]:
    """The acceptance corpus: per seed, stacked triangulations spread over
    ``n`` in [10, 300] plus fixed families and subdivided variants."""
    out: list[CorpusSpec] = []
    for seed in seeds:
        rng = random.Random(seed * 7919 + 17)
        fixed = [
            CorpusSpec("wheel", (rng.randint(5, 30),), seed),
            CorpusSpec("grid", (rng.randint(2, 8), rng.randint(2, 8)), seed),
            CorpusSpec("prism", (rng.randint(3, 20),), seed),
            CorpusSpec("cycle", (rng.randint(3, 20),), seed),
            CorpusSpec("icosahedron", (), seed),
            CorpusSpec("complete", (4,), seed),
        ]
        out += fixed
        n_stacked = max(per_seed - len(fixed), 0)
        n_sub = n_stacked // 4
        for i in range(n_stacked - n_sub):
            lo = 10 + (290 * i) // (n_stacked - n_sub)
            out.append(CorpusSpec("stacked_triangulation", (rng.randint(lo, lo + 290 // (n_stacked - n_sub)),), seed * 100003 + i))
        bases = [CorpusSpec("icosahedron", ()), CorpusSpec("wheel", (rng.randint(6, 16),)),
                 CorpusSpec("prism", (rng.randint(3, 10),))]
        for i in range(n_sub):
            if i % 2 == 0:
                base = CorpusSpec("stacked_triangulation", (rng.randint(10, 120),), seed * 100003 + 50000 + i)
            else:
                base = bases[(i // 2) % len(bases)]
            g, _ = generate(base)
            out.append(CorpusSpec("subdivided", (rng.randint(1, max(1, g.m // 4)),), seed * 31 + i, base))
    return out

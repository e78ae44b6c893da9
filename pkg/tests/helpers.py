"""Small graph builders shared by the tests."""
from __future__ import annotations

import random

from acyclic_planar.graph import Graph, PlaneEmbedding, enumerate_faces


def k_star(n: int) -> Graph:
    return Graph(n + 1, [(0, i) for i in range(1, n + 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def k4() -> Graph:
    return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def cube() -> tuple[Graph, PlaneEmbedding]:
    # outer square 0..3, inner square 4..7, spokes i -- i+4
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4),
             (0, 4), (1, 5), (2, 6), (3, 7)]
    rot = [[1, 4, 3], [2, 5, 0], [3, 6, 1], [0, 7, 2],
           [0, 5, 7], [1, 6, 4], [2, 7, 5], [3, 4, 6]]
    return Graph(8, edges), PlaneEmbedding.from_lists(rot)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
    return Graph(n, edges)


def face_gadget(df: int, fills: dict[str, list[int]]) -> tuple[Graph, PlaneEmbedding, int, object]:
    """A plane graph with a clean ``df``-face ``y, x, m1, ..., z``.

    ``fills[name]`` lists degrees of filler neighbors hung off that face
    vertex (names ``y``, ``x``, ``z``, ``m``); every filler of degree ``d``
    carries ``d - 1`` leaves. Fillers sit in the outer angle, so the face
    ``y -> z -> ... -> x -> y`` keeps degree ``df``. Returns the graph, its
    rotation system, ``y`` and that face.
    """
    names = ["y", "x"] + ["m"] * (df - 3) + ["z"]
    n = df
    edges = [(i, (i + 1) % df) for i in range(df)]
    rot = [[(i - 1) % df, (i + 1) % df] for i in range(df)]
    for i, name in enumerate(names):
        for d in fills.get(name, []):
            f = n
            n += 1
            edges.append((i, f))
            rot[i].append(f)
            rot.append([i])
            for _ in range(d - 1):
                leaf = n
                n += 1
                edges.append((f, leaf))
                rot[f].append(leaf)
                rot.append([f])
    g = Graph(n, edges)
    emb = PlaneEmbedding.from_lists(rot)
    face = next(f for f in enumerate_faces(g, emb) if f.degree == df and 0 in f.vertices)
    return g, emb, 0, face

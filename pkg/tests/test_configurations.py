import random

import pytest
from hypothesis import given, settings, strategies as st

from acyclic_planar.configurations import (
    KINDS, _a2_kind, Configuration, MalformedWitness, check_configuration, find_configuration,
)
from acyclic_planar.generators import icosahedron, stacked_triangulation, subdivide, wheel
from acyclic_planar.graph import Graph, is_biconnected

from helpers import k_star


def test_icosahedron_a4_2_with_smallest_neighbors():
    g, _ = icosahedron()
    v = 0
    u, *others = g.neighbors(v)
    cfg = Configuration("A4_2", {"v": v, "u": u, "others": tuple(others), "disjunct": 1})
    assert check_configuration(g, cfg)
    assert not check_configuration(g, Configuration("A4_1", cfg.witness))


def test_wheel_a3_1_on_rim():
    g, _ = wheel(6)
    u, v = 1, 2
    u1, u2 = [x for x in g.neighbors(u) if x != v]
    assert check_configuration(g, Configuration("A3_1", {"u": u, "v": v, "u1": u1, "u2": u2}))


def test_icosahedron_has_no_a1():
    g, _ = icosahedron()
    for u in range(g.n):
        for v in g.neighbors(u):
            for w in g.neighbors(v):
                if w != u:
                    assert not check_configuration(g, Configuration("A1", {"u": u, "v": v, "w": w}))


def test_find_on_icosahedron_is_valid():
    g, _ = icosahedron()
    cfg = find_configuration(g)
    assert cfg is not None and check_configuration(g, cfg)


def test_subdivided_icosahedron_gives_a1():
    g, emb = icosahedron()
    sub, _ = subdivide(g, emb, 1, seed=0)
    cfg = find_configuration(sub)
    assert cfg.kind == "A1" and sub.degree(cfg.witness["v"]) == 2 and sub.degree(cfg.witness["u"]) == 5


def test_star_has_none():
    assert find_configuration(k_star(5)) is None


def test_removal_edge_is_uv():
    g, _ = wheel(6)
    cfg = find_configuration(g)
    u, v = cfg.removal_edge
    assert g.has_edge(u, v)


def test_malformed_witness():
    g, _ = wheel(5)
    with pytest.raises(MalformedWitness):
        check_configuration(g, Configuration("A1", {"u": 1}))
    with pytest.raises(MalformedWitness):
        check_configuration(g, Configuration("A9", {}))


def _hub_with_two_vertices(big: int, small: int, twos: int):
    """Hub u whose neighbors are: ``twos`` 2-vertices, ``small`` 8-vertices, ``big`` 9-vertices.

    Neighbor degrees are padded with private leaves.
    """
    edges, n = [], 1
    for deg, count in ((2, twos), (8, small), (9, big)):
        for _ in range(count):
            x = n
            n += 1
            edges.append((0, x))
            for _ in range(deg - 1):
                edges.append((x, n))
                n += 1
    return Graph(n, edges)


def test_a2_subcases_follow_printed_counts():
    # d(u)=12, n8-(u) counts the 2-vertices too
    g = _hub_with_two_vertices(big=7, small=3, twos=2)     # n8- = 5 = d - 7
    assert _a2_kind(g, 0) == "A2_1"
    g = _hub_with_two_vertices(big=8, small=1, twos=3)     # n8- = 4 = d - 8, n2 = 3 = d - 9
    assert _a2_kind(g, 0) == "A2_2"
    g = _hub_with_two_vertices(big=8, small=2, twos=2)     # n8- = 4 = d - 8, n2 = 2 < d - 9
    assert _a2_kind(g, 0) is None


def test_a3_2_and_a3_3_shapes():
    # A3_2: d(v)=9 and u2 adjacent to both u and v
    edges = [(0, 1), (0, 2), (0, 3), (1, 3)] + [(1, 10 + i) for i in range(7)]
    g = Graph(20, edges)
    assert g.degree(1) == 9
    cfg = Configuration("A3_2", {"u": 0, "v": 1, "u1": 2, "u2": 3})
    assert check_configuration(g, cfg)
    assert not check_configuration(g, Configuration("A3_2", {"u": 0, "v": 1, "u1": 3, "u2": 2}))
    # A3_3: d(v)=10, both u1, u2 adjacent to v, five neighbors of v of degree <= 5
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)] + [(1, 10 + i) for i in range(7)]
    g = Graph(20, edges)
    assert g.degree(1) == 10
    assert check_configuration(g, Configuration("A3_3", {"u": 0, "v": 1, "u1": 2, "u2": 3}))


@settings(max_examples=60, deadline=None)
@given(st.integers(5, 150), st.integers(0, 10**6), st.integers(0, 20))
def test_find_is_sound_and_total_on_planar_corpus(n, seed, subdivisions):
    g, emb = stacked_triangulation(n, seed)
    if subdivisions:
        g, emb = subdivide(g, emb, min(subdivisions, g.m), seed)
    cfg = find_configuration(g)
    if is_biconnected(g) and g.max_degree() >= 5:
        assert cfg is not None
    if cfg is not None:
        assert cfg.kind in KINDS and check_configuration(g, cfg)
        assert find_configuration(g) == cfg


def test_find_on_random_non_planar_graphs_is_sound():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(3, 14)
        g = Graph(n, [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.5])
        cfg = find_configuration(g)
        if cfg is not None:
            assert check_configuration(g, cfg)

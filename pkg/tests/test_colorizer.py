import random

import pytest
from hypothesis import given, settings, strategies as st

from acyclic_planar import colorizer
from acyclic_planar.coloring import EdgeColoring, verify_acyclic
from acyclic_planar.colorizer import acyclic_color, color_graph, merge_blocks
from acyclic_planar.extension import BranchMismatch
from acyclic_planar.generators import (
    CorpusSpec, default_corpus, generate, grid, icosahedron, stacked_triangulation, subdivide, wheel,
)
from acyclic_planar.graph import Graph, GraphError, block_decompose
from acyclic_planar.oracle import exact_acyclic_index

from helpers import k4


def check(g, c):
    K = g.max_degree() + 7
    assert c.max_color() <= K
    assert verify_acyclic(g, c, K)


def test_k4():
    c = acyclic_color(k4())
    check(k4(), c)
    assert 5 <= c.num_colors() <= 10


def test_icosahedron():
    g, _ = icosahedron()
    res = color_graph(g)
    check(g, res.coloring)
    assert res.coloring.max_color() <= 12
    assert res.stats.extensions and not res.stats.incidents


def test_path_is_rainbow():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    res = color_graph(g)
    assert res.coloring.colors == [1, 2, 3] and res.stats.rainbow == 1


def test_palette_too_small():
    with pytest.raises(GraphError):
        color_graph(k4(), palette=9)
    check(k4(), color_graph(k4(), palette=20).coloring)


def test_small_degree_graphs_use_exact_search(monkeypatch):
    # configurations nearly always exist; hide them to reach the exact base case
    monkeypatch.setattr(colorizer, "find_configuration", lambda wg: None)
    g, _ = grid(4, 5)
    res = color_graph(g)
    check(g, res.coloring)
    assert res.stats.exact >= 1 and res.coloring.max_color() <= 7


def test_deterministic():
    g, _ = stacked_triangulation(120, 5)
    a, b = color_graph(g), color_graph(g)
    assert a.coloring.colors == b.coloring.colors
    assert [s.as_json() for s in a.trace] == [s.as_json() for s in b.trace]


# ---------------------------------------------------------------- merging blocks

def test_merge_two_triangles():
    g = Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    tree = block_decompose(g)
    assert len(tree.blocks) == 2
    parts = [{e: i + 1 for i, e in enumerate(b)} for b in tree.blocks]
    merged = merge_blocks(g, parts, tree, 10)
    c = EdgeColoring([merged[e] for e in range(g.m)], 10)
    assert verify_acyclic(g, c, 10)
    assert len({merged[g.edge_id(2, x)] for x in (0, 1, 3, 4)}) == 4


def test_blocks_are_split_without_configurations(monkeypatch):
    monkeypatch.setattr(colorizer, "find_configuration", lambda wg: None)
    g, _ = wheel(6)
    h = Graph(g.n * 2 - 1, list(g.edges) + [(0 if a == 0 else a + 6, 0 if b == 0 else b + 6) for a, b in g.edges])
    res = color_graph(h, palette=h.max_degree() + 7)
    check(h, res.coloring)
    assert res.stats.block_splits == 1


def test_merge_single_block_is_identity():
    g = k4()
    tree = block_decompose(g)
    col = {e: e + 1 for e in range(g.m)}
    assert merge_blocks(g, [col], tree, 10) == col


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_merge_random_block_trees(seed):
    rng = random.Random(seed)
    edges, n = [], 1
    for _ in range(5):
        at = rng.randrange(n)
        size = rng.randint(2, 4)
        vs = [at] + list(range(n, n + size - 1))
        n += size - 1
        edges += [(vs[i], vs[(i + 1) % size]) for i in range(size)] if size > 2 else [(vs[0], vs[1])]
    g = Graph(n, edges)
    K = g.max_degree() + 7
    tree = block_decompose(g)
    parts = []
    for b in tree.blocks:
        sub = Graph(g.n, [g.edges[e] for e in b])
        c = acyclic_color(sub)
        parts.append({e: c.colors[sub.edge_id(*g.edges[e])] for e in b})
    merged = merge_blocks(g, parts, tree, K)
    assert verify_acyclic(g, EdgeColoring([merged[e] for e in range(g.m)], K), K)


# ---------------------------------------------------------------- extension steps

def test_every_extension_step_verified_on_500_graphs():
    rng = random.Random(2024)
    for i in range(500):
        n = rng.randint(5, 40)
        g, emb = stacked_triangulation(n, rng.randrange(10**6))
        if i % 3 == 0:
            g, emb = subdivide(g, emb, rng.randint(1, g.m // 2), i)
        res = color_graph(g, strict=True)
        check(g, res.coloring)
        assert not res.stats.incidents


def test_trace_replays(monkeypatch):
    real = colorizer.extend

    def replaying(ctx, *a, **kw):
        pre, mark = list(ctx.colors), len(ctx.trace)
        try:
            real(ctx, *a, **kw)
        finally:
            state = list(pre)
            for step in ctx.trace[mark:]:
                for x, y, old, new in step.ops:
                    e = ctx.base.edge_id(x, y)
                    assert state[e] == old
                    state[e] = new
            assert state == ctx.colors

    monkeypatch.setattr(colorizer, "extend", replaying)
    for spec in default_corpus([3], 40)[:40]:
        g, _ = generate(spec)
        check(g, color_graph(g).coloring)


def test_fallback_resolves_forced_mismatches(monkeypatch):
    def refuse(ctx, *a, **kw):
        raise BranchMismatch("forced")

    monkeypatch.setattr(colorizer, "extend", refuse)
    g, _ = wheel(12)
    res = color_graph(g)
    check(g, res.coloring)
    assert res.stats.incidents and all(i.resolved and i.reason == "forced" for i in res.stats.incidents)
    assert all(s.label == "fallback" for s in res.trace)


def test_uses_no_more_than_palette_and_at_least_oracle():
    for spec in [CorpusSpec("wheel", (5,)), CorpusSpec("complete", (4,)), CorpusSpec("prism", (3,))]:
        g, _ = generate(spec)
        c = acyclic_color(g)
        check(g, c)
        assert c.num_colors() >= exact_acyclic_index(g, 12)

import pytest
from hypothesis import given, settings, strategies as st

from acyclic_planar.generators import icosahedron, stacked_triangulation, subdivide, wheel
from acyclic_planar.graph import (
    EmbeddingError, Graph, GraphError, PlaneEmbedding, WorkGraph, block_decompose, build_graph,
    connected_components, degree_census, enumerate_faces, is_biconnected, strip_two_vertices,
)

from helpers import cube, cycle_graph, k4


def test_build_graph_k4():
    g = build_graph([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert (g.n, g.m) == (4, 6)
    assert g.degrees() == [3, 3, 3, 3]


@pytest.mark.parametrize("edges", [[(2, 2)], [(0, 1), (1, 0)], [(0, 1), (0, 1)]])
def test_build_graph_rejects_loops_and_parallels(edges):
    with pytest.raises(GraphError):
        build_graph(edges)


def test_out_of_range_vertex():
    with pytest.raises(GraphError):
        Graph(2, [(0, 5)])
    with pytest.raises(GraphError):
        build_graph([(-1, 0)])


def test_faces_tetrahedron():
    g, emb = stacked_triangulation(4, 0)
    faces = enumerate_faces(g, emb)
    assert sorted(f.degree for f in faces) == [3, 3, 3, 3]


def test_faces_cube():
    g, emb = cube()
    assert sorted(f.degree for f in enumerate_faces(g, emb)) == [4] * 6


def test_faces_c5():
    g = cycle_graph(5)
    emb = PlaneEmbedding.from_lists([[(i - 1) % 5, (i + 1) % 5] for i in range(5)])
    assert [f.degree for f in enumerate_faces(g, emb)] == [5, 5]


def test_non_planar_rotation_is_rejected():
    # K4 with a rotation system of genus 1
    g = k4()
    emb = PlaneEmbedding.from_lists([[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]])
    with pytest.raises(EmbeddingError):
        enumerate_faces(g, emb)


def test_degree_census():
    g, _ = wheel(6)
    assert degree_census(g, 0)[3] == 6
    assert degree_census(k4(), 2)[3] == 3
    ico, _ = icosahedron()
    assert degree_census(ico, 7)[5] == 5


def test_strip_two_vertices():
    assert strip_two_vertices(cycle_graph(5)) == []
    ico, emb = icosahedron()
    (only,) = strip_two_vertices(ico)
    assert only.graph.m == 30
    sub, _ = subdivide(ico, emb, 1, seed=3)
    (comp,) = strip_two_vertices(sub)
    assert comp.graph.m == 29
    assert sorted(comp.graph.degrees()) == [4, 4] + [5] * 10


def test_strip_is_single_pass():
    # a path 0-1-2-3 plus a triangle at 3: vertex 2 becomes degree 1 after stripping 1
    g = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 3), (0, 4)])
    comps = strip_two_vertices(g)
    kept = sorted(v for c in comps for v in c.to_original)
    assert all(g.degree(v) != 2 for v in kept)


def test_blocks_examples():
    bowtie = Graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
    t = block_decompose(bowtie)
    assert len(t.blocks) == 2 and t.cut_vertices == {2}
    t = block_decompose(k4())
    assert len(t.blocks) == 1 and not t.cut_vertices
    t = block_decompose(Graph(3, [(0, 1), (1, 2)]))
    assert len(t.blocks) == 2 and t.cut_vertices == {1}
    assert is_biconnected(k4()) and not is_biconnected(bowtie)


def test_workgraph_tracks_degrees():
    g, _ = wheel(5)
    wg = WorkGraph(g)
    assert wg.max_degree() == 5
    e = g.edge_id(0, 1)
    wg.remove_edge(e)
    assert wg.degree(0) == 4 and wg.degree(1) == 2 and 1 in wg.vertices_of_degree(2)
    wg.add_edge(e)
    assert wg.freeze() == g


@st.composite
def small_graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


@given(small_graphs())
def test_degree_sum_and_adjacency(g):
    assert sum(g.degrees()) == 2 * g.m
    for e, (a, b) in enumerate(g.edges):
        assert g.edge_id(a, b) == e and b in g.neighbors(a) and a in g.neighbors(b)


@given(small_graphs())
def test_blocks_partition_edges_and_hold_cycles(g):
    t = block_decompose(g)
    ids = sorted(e for b in t.blocks for e in b)
    assert ids == list(range(g.m))
    where = {e: i for i, b in enumerate(t.blocks) for e in b}
    # every triangle (shortest cycle) sits in one block
    for a in range(g.n):
        for b in g.neighbors(a):
            for c in g.neighbors(b):
                if a < b < c and g.has_edge(a, c):
                    assert where[g.edge_id(a, b)] == where[g.edge_id(b, c)] == where[g.edge_id(a, c)]


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 80), st.integers(0, 10_000))
def test_euler_on_stacked_triangulations(n, seed):
    g, emb = stacked_triangulation(n, seed)
    faces = enumerate_faces(g, emb)
    assert sum(f.degree for f in faces) == 2 * g.m
    assert g.n - g.m + len(faces) == 2 * len(connected_components(g))
    assert all(f.degree == 3 for f in faces)

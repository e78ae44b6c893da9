import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from acyclic_planar.coloring import EdgeColoring, verify_acyclic
from acyclic_planar.colorizer import SearchLimit, exact_color_small
from acyclic_planar.generators import cycle, prism, stacked_triangulation, wheel
from acyclic_planar.graph import Graph
from acyclic_planar.oracle import Exceeds, OracleLimit, exact_acyclic_index, oracle_accepts

from helpers import cycle_graph, k4, k_star, random_graph


@pytest.mark.parametrize("g, expected", [
    (cycle_graph(3), 3), (k4(), 5), (cycle_graph(5), 3), (cycle_graph(6), 3),
    (k_star(4), 4), (k_star(1), 1), (Graph(3, []), 0),
])
def test_known_indices(g, expected):
    assert exact_acyclic_index(g, 8) == expected


def test_exceeds():
    r = exact_acyclic_index(k4(), 4)
    assert r == Exceeds(4) and str(r) == "exceeds 4"


def test_oracle_limit():
    g, _ = wheel(8)
    with pytest.raises(OracleLimit):
        exact_acyclic_index(g, 9, node_limit=5)


def test_oracle_accepts_basics():
    g = cycle_graph(4)
    assert not oracle_accepts(g, [1, 2, 1, 2], 2)
    assert oracle_accepts(g, [1, 2, 1, 3], 3)
    assert not oracle_accepts(g, [1, 2, 1, 3], 2)      # out of range
    assert not oracle_accepts(g, [1, 1, 2, 3], 3)      # improper
    assert not oracle_accepts(g, [1, 2, 1], 3)         # partial


@pytest.mark.parametrize("g, k, ok", [(k4(), 4, False), (k4(), 5, True), (cycle_graph(6), 2, False),
                                      (cycle_graph(6), 3, True)])
def test_exact_color_small_examples(g, k, ok):
    c = exact_color_small(g, k)
    assert (c is not None) == ok
    if c is not None:
        assert oracle_accepts(g, c.colors, k)


def test_exact_color_small_limit():
    g, _ = prism(6)
    with pytest.raises(SearchLimit):
        exact_color_small(g, 3, node_limit=3)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7), st.floats(0.2, 0.8), st.integers(0, 10**6))
def test_exact_search_agrees_with_oracle(n, p, seed):
    g = random_graph(random.Random(seed), n, p)
    if g.m > 10:
        return
    a = exact_acyclic_index(g, 10)
    for k in range(max(a - 1, 0), a + 1):
        c = exact_color_small(g, k)
        assert (c is not None) == (k >= a)
        if c is not None:
            assert oracle_accepts(g, c.colors, k)


def test_oracle_and_verifier_agree_exhaustively():
    # every coloring with colors <= 3 of every graph on 4 vertices
    pairs = list(itertools.combinations(range(4), 2))
    for mask in range(1, 1 << len(pairs)):
        g = Graph(4, [p for i, p in enumerate(pairs) if mask >> i & 1])
        for colors in itertools.product(range(1, 4), repeat=g.m):
            try:
                c = EdgeColoring(list(colors), 3)
            except ValueError:
                assert not oracle_accepts(g, colors, 3)
                continue
            assert bool(verify_acyclic(g, c, 3)) == oracle_accepts(g, colors, 3)


@pytest.mark.parametrize("g", [cycle(7)[0], wheel(5)[0], stacked_triangulation(6, 2)[0], prism(3)[0]])
def test_small_planar_below_bound(g):
    a = exact_acyclic_index(g, g.max_degree() + 7)
    assert not isinstance(a, Exceeds) and a <= g.max_degree() + 7

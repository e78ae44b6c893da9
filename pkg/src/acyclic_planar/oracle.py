"""Brute-force ground truth for small graphs.

Nothing here shares code with the colorizer's search or with
:mod:`acyclic_planar.coloring`: acceptance is decided by union-find over
every pair of color classes, and the search is a plain backtracking.
"""
from __future__ import annotations

import dataclasses
import sys
from itertools import combinations
from typing import Sequence

from .graph import Graph

SOFT_EDGE_CAP = 16


class OracleLimit(RuntimeError):
    """The search visited more nodes than allowed."""


@dataclasses.dataclass(frozen=True)
class Exceeds:
    k_max: int

    def __str__(self) -> str:
        return f"exceeds {self.k_max}"


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def oracle_accepts(g: Graph, colors: Sequence[int], k: int) -> bool:
    """Acceptance by definition: total, in range, proper, every two classes a forest."""
    if len(colors) != g.m or any(not 1 <= c <= k for c in colors):
        return False
    for v in range(g.n):
        seen = [colors[g.edge_id(v, x)] for x in g.neighbors(v)]
        if len(seen) != len(set(seen)):
            return False
    classes: dict[int, list[tuple[int, int]]] = {}
    for e, c in enumerate(colors):
        classes.setdefault(c, []).append(g.edges[e])
    for i, j in combinations(sorted(classes), 2):
        parent = list(range(g.n))
        for a, b in classes[i] + classes[j]:
            ra, rb = _find(parent, a), _find(parent, b)
            if ra == rb:
                return False
            parent[ra] = rb
    return True


def _edge_order(g: Graph) -> list[int]:
    """BFS edge order so that each new edge tends to touch colored ones."""
    order, seen_e = [], set()
    seen_v = [False] * g.n
    for s in range(g.n):
        if seen_v[s]:
            continue
        seen_v[s] = True
        queue = [s]
        while queue:
            x = queue.pop(0)
            for y in g.neighbors(x):
                e = g.edge_id(x, y)
                if e not in seen_e:
                    seen_e.add(e)
                    order.append(e)
                if not seen_v[y]:
                    seen_v[y] = True
                    queue.append(y)
    return order


def acyclic_colorable(g: Graph, k: int, node_limit: int = 5_000_000) -> list[int] | None:
    """Some acyclic ``k``-coloring (edge id -> color) or ``None`` if none exists."""
    if g.m == 0:
        return []
    if k <= 0:
        return None
    order = _edge_order(g)
    colors = [0] * g.m
    inc: list[list[int]] = [[] for _ in range(g.n)]
    for e, (a, b) in enumerate(g.edges):
        inc[a].append(e)
        inc[b].append(e)
    nodes = 0

    def joined(a: int, b: int, i: int, j: int, skip: int) -> bool:
        # is b reachable from a using colored edges of colors i, j only (not ``skip``)?
        stack, seen = [a], {a}
        while stack:
            x = stack.pop()
            for e in inc[x]:
                if e == skip or colors[e] not in (i, j):
                    continue
                p, q = g.edges[e]
                y = q if p == x else p
                if y == b:
                    return True
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return False

    def ok(e: int, c: int) -> bool:
        a, b = g.edges[e]
        around = {colors[f] for f in inc[a] + inc[b] if f != e}
        if c in around:
            return False
        for j in around:
            if j and joined(a, b, c, j, e):
                return False
        return True

    def rec(t: int) -> bool:
        nonlocal nodes
        if t == len(order):
            return True
        nodes += 1
        if nodes > node_limit:
            raise OracleLimit(f"more than {node_limit} search nodes")
        e = order[t]
        cands = (1,) if t == 0 else range(1, k + 1)
        for c in cands:
            if ok(e, c):
                colors[e] = c
                if rec(t + 1):
                    return True
                colors[e] = 0
        return False

    limit = sys.getrecursionlimit()
    if len(order) + 50 > limit:
        sys.setrecursionlimit(len(order) + 100)
    try:
        return list(colors) if rec(0) else None
    finally:
        sys.setrecursionlimit(limit)


def exact_acyclic_index(g: Graph, k_max: int, node_limit: int = 5_000_000) -> int | Exceeds:
    """Least ``k <= k_max`` with an acyclic ``k``-edge-coloring."""
    lo = max((g.degree(v) for v in range(g.n)), default=0)
    for k in range(lo, k_max + 1):
        if acyclic_colorable(g, k, node_limit) is not None:
            return k
    return Exceeds(k_max)

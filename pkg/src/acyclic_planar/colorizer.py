"""Acyclic edge coloring with at most ``Δ + 7`` colors.

The driver peels one edge at a time off a configuration, colors what is
left, then puts the edges back in reverse order, extending the coloring
with :mod:`acyclic_planar.extension`. Small or degenerate leftovers are
handled by a rainbow coloring, an exact search, or by splitting into
blocks.
"""
from __future__ import annotations

import dataclasses
import sys
from collections import Counter

from .coloring import ColorIndex, EdgeColoring, verify_acyclic
from .configurations import Configuration, find_configuration
from .extension import BranchMismatch, ExtensionContext, TraceStep, extend
from .graph import Graph, GraphError, WorkGraph, block_decompose

SMALL_PALETTE = 7


class NoConfiguration(GraphError):
    """A 2-connected graph with ``Δ >= 5`` contains none of A1-A4 (so it is not planar)."""


class ExtensionFailed(RuntimeError):
    """Neither the case analysis nor the fallback search colored the edge."""

    def __init__(self, msg: str, trace: list[TraceStep] | None = None):
        super().__init__(msg)
        self.trace = trace or []


class SearchLimit(RuntimeError):
    """Exact search hit its node cap before deciding."""


@dataclasses.dataclass
class Incident:
    kind: str
    edge: tuple[int, int]
    reason: str
    resolved: bool
    steps: list[TraceStep]

    def as_json(self) -> dict:
        return {"kind": self.kind, "edge": list(self.edge), "reason": self.reason,
                "resolved": self.resolved, "steps": [s.as_json() for s in self.steps]}


@dataclasses.dataclass
class ColorStats:
    palette: int
    extensions: Counter = dataclasses.field(default_factory=Counter)
    leaves: int = 0
    rainbow: int = 0
    exact: int = 0
    block_splits: int = 0
    incidents: list[Incident] = dataclasses.field(default_factory=list)

    def as_json(self) -> dict:
        return {
            "palette": self.palette,
            "extensions": dict(sorted(self.extensions.items())),
            "leaves": self.leaves,
            "rainbow": self.rainbow,
            "exact": self.exact,
            "block_splits": self.block_splits,
            "incidents": [i.as_json() for i in self.incidents],
        }


@dataclasses.dataclass
class ColorResult:
    coloring: EdgeColoring
    stats: ColorStats
    trace: list[TraceStep]


# ---------------------------------------------------------------- exact search


def _degeneracy_edge_order(g: Graph) -> list[int]:
    deg = [g.degree(v) for v in range(g.n)]
    gone = [False] * g.n
    removal = []
    for _ in range(g.n):
        v = min((x for x in range(g.n) if not gone[x]), key=lambda x: (deg[x], x))
        gone[v] = True
        removal.append(v)
        for y in g.neighbors(v):
            if not gone[y]:
                deg[y] -= 1
    placed = [False] * g.n
    order = []
    for v in reversed(removal):
        placed[v] = True
        for y in g.neighbors(v):
            if placed[y] and y != v:
                order.append(g.edge_id(v, y))
    return order


def exact_color_small(g: Graph, k: int, node_limit: int = 200_000) -> EdgeColoring | None:
    """An acyclic ``k``-coloring of ``g`` or ``None`` if there is none.

    Raises :class:`SearchLimit` when ``node_limit`` nodes were expanded first.
    """
    if g.m == 0:
        return EdgeColoring([], k)
    if k <= 0:
        return None
    order = _degeneracy_edge_order(g)
    colors = [0] * g.m
    idx = ColorIndex(g.n)
    at = idx.at
    nodes = 0

    def rec(t: int, used: int) -> bool:
        nonlocal nodes
        if t == len(order):
            return True
        nodes += 1
        if nodes > node_limit:
            raise SearchLimit(f"more than {node_limit} nodes")
        e = order[t]
        a, b = g.edges[e]
        # colors above ``used + 1`` are interchangeable with ``used + 1``
        for c in range(1, min(k, used + 1) + 1):
            if c in at[a] or c in at[b]:
                continue
            at[a][c] = b
            at[b][c] = a
            if not any(j in at[b] and idx.closes_cycle(a, b, c, j) for j in at[a] if j != c):
                colors[e] = c
                if rec(t + 1, max(used, c)):
                    return True
                colors[e] = 0
            del at[a][c]
            del at[b][c]
        return False

    limit = sys.getrecursionlimit()
    if len(order) + 100 > limit:
        sys.setrecursionlimit(len(order) + 200)
    try:
        found = rec(0, 0)
    finally:
        sys.setrecursionlimit(limit)
    return EdgeColoring(colors, k) if found else None


# ---------------------------------------------------------------- blocks


def merge_blocks(base: Graph, block_colorings: list[dict[int, int]], tree, palette: int) -> dict[int, int]:
    """Combine per-block colorings (edge id -> color) by permuting colors block by block."""
    at: list[set[int]] = [set() for _ in range(base.n)]
    out: dict[int, int] = {}
    for bi, via in tree.tree_order():
        col = block_colorings[bi]
        perm: dict[int, int] = {}
        if via is not None:
            taken = set(at[via])
            mine = sorted({c for e, c in col.items() if via in base.edges[e]})
            if len(taken) + len(mine) > palette:
                raise GraphError(f"palette {palette} too small at cut vertex {via}")
            spare = (c for c in range(1, palette + 1) if c not in taken)
            for c in mine:
                perm[c] = next(spare)
            # complete to a bijection of the palette
            rest_src = [c for c in range(1, palette + 1) if c not in perm]
            rest_dst = [c for c in range(1, palette + 1) if c not in perm.values()]
            perm.update(zip(rest_src, rest_dst))
        for e, c in col.items():
            c2 = perm.get(c, c)
            out[e] = c2
            a, b = base.edges[e]
            at[a].add(c2)
            at[b].add(c2)
    return out


# ---------------------------------------------------------------- fallback


def _region(ctx: ExtensionContext) -> set[int]:
    wg, u, v = ctx.wg, ctx.u, ctx.v
    near = {u, v} | set(wg.adj[u]) | set(wg.adj[v])
    out = set()
    for x in near:
        for y in wg.adj[x]:
            out.add(wg.edge_id(x, y))
    out.discard(wg.edge_id(u, v))
    return out


def _blockers(ctx: ExtensionContext, region: set[int]) -> list[int]:
    """Region edges that stand in the way of some color for ``uv``."""
    u, v = ctx.u, ctx.v
    at = ctx.idx.at
    found: list[int] = []
    seen = set()

    def add(a, b):
        e = ctx.base.edge_id(a, b)
        if e in region and e not in seen:
            seen.add(e)
            found.append(e)

    for x in range(1, ctx.K + 1):
        for end in (u, v):
            y = at[end].get(x)
            if y is not None:
                add(end, y)
        if x in at[u] or x in at[v]:
            continue
        for j in sorted(set(at[u]) & set(at[v])):
            p = ctx.idx.path(u, v, x, j)
            if p:
                for a, b in zip(p, p[1:]):
                    add(a, b)
    return found


def fallback_extend(ctx: ExtensionContext, radius: int = 6, node_limit: int = 20_000) -> bool:
    """Recolor at most ``radius`` edges near ``uv`` so that ``uv`` can be colored."""
    u, v = ctx.u, ctx.v
    region = _region(ctx)
    nodes = 0
    stack_ops: list[tuple[int, int, int, int]] = []

    def undo(ops):
        ctx.raw_apply([(a, b, old) for a, b, old, new in reversed(ops)])

    def dfs(budget: int, changed: frozenset) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            return False
        for x in range(1, ctx.K + 1):
            ops = ctx.apply([(u, v, x)])
            if ops is not None:
                stack_ops.extend(ops)
                return True
        if budget == 0:
            return False
        for e in _blockers(ctx, region):
            if e in changed:
                continue
            a, b = ctx.base.edges[e]
            cur = ctx.colors[e]
            for col in range(1, ctx.K + 1):
                if col == cur:
                    continue
                ops = ctx.apply([(a, b, col)])
                if ops is None:
                    continue
                stack_ops.extend(ops)
                if dfs(budget - 1, changed | {e}):
                    return True
                del stack_ops[-len(ops):]
                undo(ops)
                if nodes > node_limit:
                    return False
        return False

    for depth in range(radius + 1):
        if dfs(depth, frozenset()):
            ctx.trace.append(TraceStep(ctx.cfg.kind, "fallback", list(stack_ops)))
            return True
        if nodes > node_limit:
            break
    return False


# ---------------------------------------------------------------- driver


class _Solver:
    def __init__(self, base: Graph, palette: int, fallback_radius: int, strict: bool,
                 exact_node_limit: int, fallback_node_limit: int):
        self.base = base
        self.K = palette
        self.radius = fallback_radius
        self.strict = strict
        self.exact_node_limit = exact_node_limit
        self.fallback_node_limit = fallback_node_limit
        self.stats = ColorStats(palette)
        self.trace: list[TraceStep] = []

    def solve(self, edge_ids) -> dict[int, int]:
        base, K = self.base, self.K
        colors = [0] * base.m
        idx = ColorIndex(base.n)
        wg = WorkGraph(base, edge_ids)
        stack: list[tuple[Configuration | None, int]] = []

        def put(e: int, c: int) -> None:
            a, b = base.edges[e]
            colors[e] = c
            idx.at[a][c] = b
            idx.at[b][c] = a

        while True:
            if wg.m <= K:
                self.stats.rainbow += 1
                for t, e in enumerate(sorted(wg.edge_ids)):
                    put(e, t + 1)
                break
            leaves = wg.vertices_of_degree(1)
            if leaves:
                x = leaves[0]
                (y,) = wg.adj[x]
                e = base.edge_id(x, y)
                wg.remove_edge(e)
                stack.append((None, e))
                continue
            cfg = find_configuration(wg)
            if cfg is not None:
                e = base.edge_id(*cfg.removal_edge)
                wg.remove_edge(e)
                stack.append((cfg, e))
                continue
            if wg.max_degree() <= 4:
                for e, c in self._exact(wg).items():
                    put(e, c)
                break
            tree = block_decompose(wg)
            if len(tree.blocks) > 1:
                self.stats.block_splits += 1
                parts = [self.solve(b) for b in tree.blocks]
                for e, c in merge_blocks(base, parts, tree, K).items():
                    put(e, c)
                break
            raise NoConfiguration(f"no reducible configuration in a 2-connected graph with "
                                  f"{wg.m} edges and maximum degree {wg.max_degree()}")

        while stack:
            cfg, e = stack.pop()
            wg.add_edge(e)
            a, b = base.edges[e]
            if cfg is None:
                self.stats.leaves += 1
                c = next(c for c in range(1, K + 1) if c not in idx.at[a] and c not in idx.at[b])
                put(e, c)
                continue
            self._extend(wg, colors, idx, cfg, e)
            if self.strict:
                sub = wg.freeze()
                ids = sorted(wg.edge_ids)
                v = verify_acyclic(sub, EdgeColoring([colors[i] for i in ids], K), K)
                if not v:
                    raise ExtensionFailed(f"{cfg.kind}: strict check rejected ({v.reason})", self.trace)
        return {e: colors[e] for e in edge_ids}

    def _exact(self, wg: WorkGraph) -> dict[int, int]:
        self.stats.exact += 1
        sub = wg.freeze()
        ids = sorted(wg.edge_ids)
        found = None
        for k in (SMALL_PALETTE, self.K):
            try:
                found = exact_color_small(sub, min(k, self.K), self.exact_node_limit)
            except SearchLimit:
                found = None
            if found is not None:
                break
        if found is None:
            raise ExtensionFailed(f"exact search found no coloring of a {sub.m}-edge graph")
        return {ids[i]: c for i, c in enumerate(found.colors)}

    def _extend(self, wg, colors, idx, cfg: Configuration, e: int) -> None:
        self.stats.extensions[cfg.kind] += 1
        local: list[TraceStep] = []
        ctx = ExtensionContext(wg, colors, idx, self.K, cfg, local)
        try:
            extend(ctx)
            if colors[e]:
                self.trace.extend(local)
                return
            reason = "handler returned without coloring uv"
        except BranchMismatch as exc:
            reason = str(exc)
        ok = fallback_extend(ctx, self.radius, self.fallback_node_limit)
        self.stats.incidents.append(Incident(cfg.kind, self.base.edges[e], reason, ok, list(local)))
        self.trace.extend(local)
        if not ok:
            raise ExtensionFailed(f"{cfg.kind} at {self.base.edges[e]}: {reason}; fallback exhausted", local)


def color_graph(g: Graph, fallback_radius: int = 6, strict: bool = False,
                exact_node_limit: int = 200_000, fallback_node_limit: int = 20_000,
                palette: int | None = None) -> ColorResult:
    """Color ``g`` with palette ``Δ(g) + 7`` (or a larger ``palette``) and return the
    coloring with statistics and trace."""
    K = g.max_degree() + 7
    if palette is not None:
        if palette < K:
            raise GraphError(f"palette {palette} is below maximum degree + 7 = {K}")
        K = palette
    solver = _Solver(g, K, fallback_radius, strict, exact_node_limit, fallback_node_limit)
    local = solver.solve(range(g.m))
    coloring = EdgeColoring([local[e] for e in range(g.m)], K)
    verdict = verify_acyclic(g, coloring, K)
    if not verdict:
        raise ExtensionFailed(f"final coloring rejected: {verdict.reason} {verdict.detail}", solver.trace)
    return ColorResult(coloring, solver.stats, solver.trace)


def acyclic_color(g: Graph, fallback_radius: int = 6) -> EdgeColoring:
    """A verified acyclic edge coloring of ``g`` using colors ``1..Δ(g)+7``."""
    return color_graph(g, fallback_radius).coloring

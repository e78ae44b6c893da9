"""Edge colorings, properness, bichromatic cycles and alternating paths."""
from __future__ import annotations

import dataclasses
from collections import defaultdict
from typing import Iterator, Mapping

from .graph import Graph

UNCOLORED = 0


class ImproperColoringError(ValueError):
    pass


@dataclasses.dataclass
class EdgeColoring:
    """Edge id -> color in ``1..palette``; ``UNCOLORED`` marks a missing color."""

    colors: list[int]
    palette: int

    @classmethod
    def empty(cls, g: Graph, palette: int) -> EdgeColoring:
        return cls([UNCOLORED] * g.m, palette)

    @classmethod
    def from_mapping(cls, g: Graph, mapping: Mapping[int, int], palette: int) -> EdgeColoring:
        col = [UNCOLORED] * g.m
        for e, c in mapping.items():
            col[e] = c
        return cls(col, palette)

    @classmethod
    def from_pairs(cls, g: Graph, pairs: Mapping[tuple[int, int], int], palette: int) -> EdgeColoring:
        return cls.from_mapping(g, {g.edge_id(a, b): c for (a, b), c in pairs.items()}, palette)

    def __getitem__(self, e: int) -> int:
        return self.colors[e]

    def __len__(self) -> int:
        return len(self.colors)

    def is_total(self) -> bool:
        return UNCOLORED not in self.colors

    def used_colors(self) -> list[int]:
        return sorted({c for c in self.colors if c != UNCOLORED})

    def num_colors(self) -> int:
        return len(self.used_colors())

    def max_color(self) -> int:
        return max(self.colors, default=0)

    def color_set(self, g: Graph, v: int) -> set[int]:
        """``C(v)``: colors on the colored edges at ``v``."""
        out = set()
        for x in g.neighbors(v):
            c = self.colors[g.edge_id(v, x)]
            if c != UNCOLORED:
                out.add(c)
        return out


@dataclasses.dataclass(frozen=True)
class Violation:
    vertex: int
    edges: tuple[tuple[int, int], tuple[int, int]]
    color: int


def check_proper(g: Graph, c: EdgeColoring) -> Violation | None:
    """First pair of same-colored edges sharing a vertex, scanning vertices in order."""
    for v in range(g.n):
        seen: dict[int, int] = {}
        for x in g.neighbors(v):
            col = c.colors[g.edge_id(v, x)]
            if col == UNCOLORED:
                continue
            if col in seen:
                return Violation(v, ((v, seen[col]), (v, x)), col)
            seen[col] = x
    return None


def is_proper(g: Graph, c: EdgeColoring) -> bool:
    return check_proper(g, c) is None


class ColorIndex:
    """Per-vertex ``color -> neighbor`` maps of a partial proper coloring.

    Under properness each two-color subgraph has maximum degree 2, so
    alternating paths and cycles are followed by walking, one step per edge.
    """

    __slots__ = ("at",)

    def __init__(self, n: int):
        self.at: list[dict[int, int]] = [{} for _ in range(n)]

    @classmethod
    def build(cls, g: Graph, c: EdgeColoring) -> ColorIndex:
        idx = cls(g.n)
        for e, (a, b) in enumerate(g.edges):
            col = c.colors[e]
            if col == UNCOLORED:
                continue
            if col in idx.at[a] or col in idx.at[b]:
                raise ImproperColoringError(f"color {col} repeated at edge ({a}, {b})")
            idx.at[a][col] = b
            idx.at[b][col] = a
        return idx

    def colors_at(self, v: int) -> set[int]:
        return set(self.at[v])

    def walk(self, start: int, first: int, other: int) -> Iterator[int]:
        """Vertices after ``start`` along the chain leaving by color ``first``."""
        cur, want = start, first
        while True:
            nxt = self.at[cur].get(want)
            if nxt is None:
                return
            yield nxt
            if nxt == start:
                return
            cur = nxt
            want = other if want == first else first

    def path(self, u: int, v: int, i: int, j: int) -> list[int] | None:
        """An ``(i, j)``-alternating path from ``u`` to ``v``, either color first."""
        if u == v:
            return None
        for first, other in ((i, j), (j, i)):
            seq = [u]
            for x in self.walk(u, first, other):
                if x == u:
                    break
                seq.append(x)
                if x == v:
                    return seq
        return None

    def has_path(self, u: int, v: int, i: int, j: int) -> bool:
        if u == v:
            return False
        for first, other in ((i, j), (j, i)):
            for x in self.walk(u, first, other):
                if x == v:
                    return True
        return False

    def closes_cycle(self, a: int, b: int, i: int, j: int) -> bool:
        """Whether edge ``ab`` (colored ``i``) lies on an ``(i, j)``-cycle."""
        for x in self.walk(b, j, i):
            if x == a:
                return True
        return False

    def cycle_through(self, a: int, b: int, i: int) -> int | None:
        """Some color ``j`` such that edge ``ab`` (colored ``i``) lies on an ``(i, j)``-cycle."""
        small, big = (a, b) if len(self.at[a]) <= len(self.at[b]) else (b, a)
        for j in sorted(self.at[small]):
            if j != i and j in self.at[big] and self.closes_cycle(small, big, i, j):
                return j
        return None


@dataclasses.dataclass(frozen=True)
class BichromaticCycle:
    vertices: tuple[int, ...]
    colors: tuple[int, int]


def _color_classes(g: Graph, c: EdgeColoring) -> dict[int, list[tuple[int, int]]]:
    classes: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for e, col in enumerate(c.colors):
        if col != UNCOLORED:
            classes[col].append(g.edges[e])
    return classes


def _pair_cycle(classes, i: int, j: int) -> BichromaticCycle | None:
    nbr: dict[int, list[int]] = defaultdict(list)
    for a, b in classes[i]:
        nbr[a].append(b)
        nbr[b].append(a)
    for a, b in classes[j]:
        nbr[a].append(b)
        nbr[b].append(a)
    seen: set[int] = set()
    for s in sorted(nbr):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in nbr[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if all(len(nbr[x]) == 2 for x in comp):
            seq, prev, cur = [s], s, nbr[s][0]
            while cur != s:
                seq.append(cur)
                a, b = nbr[cur]
                prev, cur = cur, (b if a == prev else a)
            return BichromaticCycle(tuple(seq), (i, j))
    return None


def _cyclic_pairs(g: Graph, c: EdgeColoring) -> set[tuple[int, int]]:
    """Color pairs whose two-colored subgraph has a cycle, found by walking chains once."""
    idx = ColorIndex.build(g, c)
    done: set[tuple[int, int, int]] = set()
    found: set[tuple[int, int]] = set()
    for s in range(g.n):
        cols = sorted(idx.at[s])
        for ai, i in enumerate(cols):
            for j in cols[ai + 1:]:
                if (i, j) in found or (i, j, s) in done:
                    continue
                done.add((i, j, s))
                closed = False
                for x in idx.walk(s, i, j):
                    if x == s:
                        closed = True
                        break
                    done.add((i, j, x))
                if closed:
                    found.add((i, j))
                    continue
                for x in idx.walk(s, j, i):
                    done.add((i, j, x))
    return found


def find_bichromatic_cycle(g: Graph, c: EdgeColoring) -> BichromaticCycle | None:
    """First two-colored cycle, by lowest color pair and then lowest vertex."""
    bad = check_proper(g, c)
    if bad is not None:
        raise ImproperColoringError(f"improper at vertex {bad.vertex} (color {bad.color})")
    pairs = _cyclic_pairs(g, c)
    if not pairs:
        return None
    i, j = min(pairs)
    return _pair_cycle(_color_classes(g, c), i, j)


def exists_bichromatic_path(g: Graph, c: EdgeColoring, u: int, v: int, i: int, j: int) -> list[int] | None:
    """Witness ``(i, j)``-alternating path from ``u`` to ``v``, or ``None``.

    Either color may start the path; callers needing the first edge's color
    read it off the witness.
    """
    if i == j:
        raise ValueError("an alternating path needs two distinct colors")
    return ColorIndex.build(g, c).path(u, v, i, j)


@dataclasses.dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str | None = None
    detail: object = None

    def __bool__(self) -> bool:
        return self.accepted


def verify_acyclic(g: Graph, c: EdgeColoring, k: int) -> Verdict:
    """Accept iff ``c`` is total, proper, within ``1..k`` and has no two-colored cycle."""
    if len(c.colors) != g.m:
        return Verdict(False, "incomplete", f"{len(c.colors)} colors for {g.m} edges")
    missing = [g.edges[e] for e, col in enumerate(c.colors) if col == UNCOLORED]
    if missing:
        return Verdict(False, "incomplete", missing[0])
    out = [g.edges[e] for e, col in enumerate(c.colors) if not 1 <= col <= k]
    if out:
        return Verdict(False, "palette", out[0])
    bad = check_proper(g, c)
    if bad is not None:
        return Verdict(False, "improper", bad)
    cyc = find_bichromatic_cycle(g, c)
    if cyc is not None:
        return Verdict(False, "cycle", cyc)
    return Verdict(True)

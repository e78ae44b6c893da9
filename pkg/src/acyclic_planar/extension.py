"""Extending an acyclic coloring of ``G - uv`` to ``G``, one configuration at a time.

Each handler walks the case analysis for its configuration kind in order.
A step tests its guard (path existence, set membership) and proposes
moves: recolorings of a few edges near ``uv`` plus a color for ``uv``.
Colors are never literal; every move draws from sets computed on the
current coloring, smallest first. No move is trusted: :meth:`ExtensionContext.apply`
commits it only if the result stays proper and no two-colored cycle
passes through a changed edge, which is exact because the coloring
before the move was acyclic.

A step that only recolors (the "reduce to an earlier case" moves)
commits and restarts the handler from the top. Running out of steps
raises :class:`BranchMismatch`; the caller then falls back to search.
"""
from __future__ import annotations

import dataclasses
from collections import Counter
from itertools import combinations, permutations
from typing import Iterable

from .coloring import ColorIndex
from .configurations import Configuration


class BranchMismatch(RuntimeError):
    """The case analysis reached a state it deems impossible, or ran out of moves."""


class Restart(Exception):
    """A recoloring was committed; re-enter the handler."""


# ---------------------------------------------------------------- multisets


class MultiSet:
    """Finite multiset with ``mult``, join and cardinality."""

    __slots__ = ("_c",)

    def __init__(self, items: Iterable = ()):
        self._c = Counter(items)

    @classmethod
    def join_all(cls, parts: Iterable[Iterable]) -> MultiSet:
        out = cls()
        for p in parts:
            out._c.update(p)
        return out

    def mult(self, x) -> int:
        return self._c.get(x, 0)

    def join(self, other: MultiSet) -> MultiSet:
        out = MultiSet()
        out._c = self._c + other._c
        return out

    __or__ = join

    def __len__(self) -> int:
        """``||S||``: sum of multiplicities."""
        return sum(self._c.values())

    def support(self) -> set:
        return {x for x, k in self._c.items() if k > 0}

    def __contains__(self, x) -> bool:
        return self._c.get(x, 0) > 0

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiSet) and +self._c == +other._c

    def __repr__(self) -> str:
        return f"MultiSet({dict(sorted(self._c.items()))})"


# ---------------------------------------------------------------- context


@dataclasses.dataclass
class TraceStep:
    kind: str
    label: str
    ops: list[tuple[int, int, int, int]]     # (a, b, old color, new color)

    def as_json(self) -> dict:
        return {"kind": self.kind, "label": self.label, "ops": [list(op) for op in self.ops]}


class ExtensionContext:
    """Workspace for one extension step.

    ``colors`` and ``idx`` are the solver's live state over the base graph;
    ``wg`` is the current graph, which already contains ``uv`` (uncolored).
    """

    def __init__(self, wg, colors: list[int], idx: ColorIndex, palette: int,
                 cfg: Configuration, trace: list[TraceStep] | None = None):
        self.wg = wg
        self.base = wg.base
        self.colors = colors
        self.idx = idx
        self.K = palette
        self.cfg = cfg
        self.u, self.v = cfg.removal_edge
        self.trace = trace if trace is not None else []
        self.all_colors = frozenset(range(1, palette + 1))

    # -- reads
    def C(self, x: int) -> set[int]:
        return set(self.idx.at[x])

    def c(self, a: int, b: int) -> int:
        return self.colors[self.base.edge_id(a, b)]

    def nbr(self, x: int, color: int) -> int | None:
        return self.idx.at[x].get(color)

    def deg(self, x: int) -> int:
        return self.wg.degree(x)

    def path(self, a: int, b: int, i: int, j: int) -> bool:
        """Whether an ``(i, j)``-alternating path joins ``a`` and ``b``."""
        if i == j or not i or not j:
            return False
        return self.idx.has_path(a, b, i, j)

    def free(self) -> list[int]:
        """``C \\ (C(u) ∪ C(v))``."""
        return sorted(self.all_colors - self.C(self.u) - self.C(self.v))

    # -- moves
    def apply(self, moves: list[tuple[int, int, int]]) -> list[tuple[int, int, int, int]] | None:
        """Simultaneously recolor edges; commit iff proper and acyclic. Returns the ops or ``None``."""
        at = self.idx.at
        seen = set()
        old = []
        for a, b, new in moves:
            if not self.wg.has_edge(a, b) or not 1 <= new <= self.K:
                return None
            e = self.base.edge_id(a, b)
            if e in seen:
                return None
            seen.add(e)
            old.append((a, b, e, self.colors[e], new))
        for a, b, e, oc, _ in old:
            if oc:
                del at[a][oc]
                del at[b][oc]
        placed = []
        ok = True
        for a, b, e, oc, new in old:
            if new in at[a] or new in at[b]:
                ok = False
                break
            at[a][new] = b
            at[b][new] = a
            placed.append((a, b, new))
        if ok:
            for a, b, new in placed:
                small, big = (a, b) if len(at[a]) <= len(at[b]) else (b, a)
                for j in at[small]:
                    if j != new and j in at[big] and self.idx.closes_cycle(small, big, new, j):
                        ok = False
                        break
                if not ok:
                    break
        if not ok:
            for a, b, new in placed:
                del at[a][new]
                del at[b][new]
            for a, b, e, oc, _ in old:
                if oc:
                    at[a][oc] = b
                    at[b][oc] = a
            return None
        ops = []
        for a, b, e, oc, new in old:
            self.colors[e] = new
            ops.append((a, b, oc, new))
        return ops

    def raw_apply(self, moves: list[tuple[int, int, int]]):
        """Recolor without any check (analysis only); returns an undo token or ``None`` if improper."""
        at = self.idx.at
        old = []
        for a, b, new in moves:
            e = self.base.edge_id(a, b)
            old.append((a, b, e, self.colors[e], new))
        for a, b, e, oc, _ in old:
            if oc:
                del at[a][oc]
                del at[b][oc]
        for a, b, e, oc, new in old:
            if new in at[a] or new in at[b]:
                for a2, b2, e2, oc2, new2 in old:
                    if at[a2].get(new2) == b2:
                        del at[a2][new2]
                        del at[b2][new2]
                for a2, b2, e2, oc2, _ in old:
                    if oc2:
                        at[a2][oc2] = b2
                        at[b2][oc2] = a2
                return None
            at[a][new] = b
            at[b][new] = a
            self.colors[e] = new
        return old

    def undo(self, token) -> None:
        at = self.idx.at
        for a, b, e, oc, new in token:
            del at[a][new]
            del at[b][new]
        for a, b, e, oc, new in token:
            if oc:
                at[a][oc] = b
                at[b][oc] = a
            self.colors[e] = oc

    def finish(self, label: str, recolors: list[tuple[int, int, int]], uv_colors: Iterable[int]) -> bool:
        """Try ``recolors`` plus ``uv`` in each candidate color; record and return on the first success."""
        u, v = self.u, self.v
        for x in uv_colors:
            ops = self.apply(list(recolors) + [(u, v, x)])
            if ops is not None:
                self.trace.append(TraceStep(self.cfg.kind, label, ops))
                return True
        return False

    def recolor(self, label: str, recolors: list[tuple[int, int, int]]) -> None:
        """Commit a recoloring of ``G - uv`` and restart, if it is acceptable."""
        ops = self.apply(recolors)
        if ops is not None:
            self.trace.append(TraceStep(self.cfg.kind, label, ops))
            raise Restart(label)


def extend(ctx: ExtensionContext, max_restarts: int = 12) -> None:
    """Color ``uv`` following the handler of ``ctx.cfg.kind``; raise BranchMismatch on failure."""
    handler = _HANDLERS[ctx.cfg.kind]
    for _ in range(max_restarts + 1):
        try:
            handler(ctx)
            return
        except Restart:
            continue
    raise BranchMismatch(f"{ctx.cfg.kind}: restart budget of {max_restarts} exhausted")


def _no_common_path(ctx: ExtensionContext, common: Iterable[int], candidates: Iterable[int]) -> list[int]:
    u, v = ctx.u, ctx.v
    common = list(common)
    return [j for j in candidates if not any(ctx.path(u, v, i, j) for i in common)]


# ---------------------------------------------------------------- A1


def _a1(ctx: ExtensionContext) -> None:
    u, v, w = ctx.u, ctx.v, ctx.cfg.witness["w"]
    a = ctx.c(v, w)
    free = ctx.free()
    if a not in ctx.C(u):
        if ctx.finish("A1/vw-color-absent-at-u", [], free):
            return
        raise BranchMismatch("A1: no free color although c(vw) is absent at u")
    u1 = ctx.nbr(u, a)
    if ctx.finish("A1/no-path-w-u1", [], [b for b in free if not ctx.path(w, u1, a, b)]):
        return
    for beta in sorted(ctx.C(u) - {a} - ctx.C(w)):
        ub = ctx.nbr(u, beta)
        good = [b for b in free if not ctx.path(ub, w, beta, b)]
        if ctx.finish("A1/recolor-vw", [(v, w, beta)], good):
            return
        if ctx.finish("A1/switch-u1-u2", [(v, w, beta), (u, u1, beta), (u, ub, a)], free):
            return
    raise BranchMismatch("A1: all steps exhausted")


# ---------------------------------------------------------------- A2


def _a2(ctx: ExtensionContext) -> None:
    u, v, w = ctx.u, ctx.v, ctx.cfg.witness["w"]
    a = ctx.c(v, w)
    cu = ctx.C(u)
    not_cu = sorted(ctx.all_colors - cu)
    if a not in cu:
        if ctx.finish("A2/vw-color-absent-at-u", [], ctx.free()):
            return
        raise BranchMismatch("A2: no free color although c(vw) is absent at u")
    if ctx.finish("A2/no-path-u-w", [], [i for i in not_cu if not ctx.path(u, w, a, i)]):
        return
    order = [x for x in ctx.wg.neighbors(u) if x != v]
    order.sort(key=lambda x: (-ctx.deg(x), x))
    s8 = {ctx.c(u, x) for x in order if ctx.deg(x) <= 8}
    if a in s8:
        ui = ctx.nbr(u, a)
        if ctx.finish("A2/vw-color-on-small-neighbor", [], [x for x in not_cu if x not in ctx.C(ui)]):
            return
        raise BranchMismatch("A2: small-neighbor completion failed")
    for beta in sorted(s8 - ctx.C(w)):
        ctx.recolor("A2/recolor-vw-into-small", [(v, w, beta)])
    if ctx.cfg.kind == "A2_1":
        raise BranchMismatch("A2_1: reached a state the counting argument excludes")
    _a2_2(ctx, a, order, not_cu)


def _a2_2(ctx: ExtensionContext, a: int, order: list[int], not_cu: list[int]) -> None:
    u, v, w = ctx.u, ctx.v, ctx.cfg.witness["w"]
    cu = ctx.C(u)
    big = [x for x in order if ctx.deg(x) >= 9]
    rest = [x for x in order if ctx.deg(x) <= 8]
    if not rest:
        raise BranchMismatch("A2_2: no neighbor of degree at most 8")
    B = sorted(ctx.c(u, x) for x in big)
    u9 = rest[0]
    nine = ctx.c(u, u9)
    s2 = {ctx.c(u, x) for x in order if ctx.deg(x) == 2}

    def vw_to(i):
        return [] if i == a else [(v, w, i)]

    # recolor vw with a big color whose neighbor has no path to w
    for i in B:
        if i == a:
            continue
        ui = ctx.nbr(u, i)
        for j in not_cu:
            if not ctx.path(ui, w, i, j) and ctx.finish("A2_2/no-path-ui-w", [(v, w, i)], [j]):
                return
    # some big color misses the color of u u9 toward w
    for i in B:
        ui = ctx.nbr(u, i)
        if ctx.path(ui, w, i, nine):
            continue
        rest_colors = ctx.C(u9) - {nine}
        banned = cu | ctx.C(u9)
        if rest_colors & s2:
            for x in rest[1:]:
                if ctx.c(u, x) in rest_colors:
                    banned |= ctx.C(x)
        for x in sorted(ctx.all_colors - banned):
            if ctx.finish("A2_2/recolor-u-u9", vw_to(i) + [(u, u9, x)], [nine]):
                return
    # some big color misses a color on an edge to a 2-neighbor
    for i in B:
        ui = ctx.nbr(u, i)
        for j in sorted(s2):
            if ctx.path(ui, w, i, j):
                continue
            uj = ctx.nbr(u, j)
            banned = cu | ctx.C(uj)
            for other in ctx.C(uj) - {j}:
                if other in s2 | {nine}:
                    banned |= ctx.C(ctx.nbr(u, other))
            for x in sorted(ctx.all_colors - banned):
                if ctx.finish("A2_2/recolor-u-two-neighbor", vw_to(i) + [(u, uj, x)], [j]):
                    return
    # a pair of big colors with no paths toward u9; switch them
    for i0, j0 in combinations(B, 2):
        ui0, uj0 = ctx.nbr(u, i0), ctx.nbr(u, j0)
        if ctx.path(uj0, u9, i0, nine) or ctx.path(ui0, u9, j0, nine):
            continue
        switch = [(u, ui0, j0), (u, uj0, i0)]
        if ctx.finish("A2_2/switch-pair", switch, not_cu):
            return
        if _a2_2_repair(ctx, switch, i0, j0, ui0, uj0, s2, nine, not_cu):
            return
    raise BranchMismatch("A2_2: all steps exhausted")


def _a2_2_repair(ctx, switch, i0, j0, ui0, uj0, s2, nine, not_cu) -> bool:
    """Break the cycles created by a switch through u's 2-neighbors, then color uv."""
    u, v = ctx.u, ctx.v
    token = ctx.raw_apply(switch)
    if token is None:
        return False
    try:
        t1 = [x for x in ctx.wg.neighbors(u) if x not in (v, uj0) and ctx.c(u, x)
              and ctx.idx.closes_cycle(u, uj0, i0, ctx.c(u, x))]
        t2 = [x for x in ctx.wg.neighbors(u) if x not in (v, ui0) and ctx.c(u, x)
              and ctx.idx.closes_cycle(u, ui0, j0, ctx.c(u, x))]
    finally:
        ctx.undo(token)
    moves = list(switch)
    for group in (t1, t2):
        for y1, y2 in zip(group[0::2], group[1::2]):
            moves += [(u, y1, ctx.c(u, y2)), (u, y2, ctx.c(u, y1))]
    leftovers = []
    for group, keep in ((t1, j0), (t2, i0)):
        if len(group) % 2 == 1:
            leftovers.append((group[-1], keep))
    options: list[list[list[tuple[int, int, int]]]] = []
    cu = ctx.C(u)
    for y, keep in leftovers:
        if ctx.deg(y) != 2:
            return False
        (x,) = [z for z in ctx.wg.neighbors(y) if z != u]
        opts = []
        for p in sorted(ctx.all_colors - {keep} - ctx.C(x)):
            owner = ctx.nbr(u, p)
            if p in cu and owner is not None and (p in s2 or p == nine):
                for j1 in sorted(set(not_cu) - ctx.C(owner)):
                    opts.append([(y, x, p), (u, y, j1)])
            else:
                opts.append([(y, x, p)])
        options.append(opts[:12])
    combos: list[list[tuple[int, int, int]]] = [[]]
    for opts in options:
        combos = [c + o for c in combos for o in opts]
    for extra in combos:
        if ctx.finish("A2_2/switch-pair-repair", moves + extra, range(1, ctx.K + 1)):
            return True
    return False


# ---------------------------------------------------------------- A3


def _a3(ctx: ExtensionContext) -> None:
    u, v = ctx.u, ctx.v
    wit = ctx.cfg.witness
    u1, u2 = wit["u1"], wit["u2"]
    cu, cv = ctx.C(u), ctx.C(v)
    common = cu & cv
    if ctx.finish("A3/free", [], _no_common_path(ctx, common, ctx.free())):
        return
    if not common:
        raise BranchMismatch("A3: no free color with no common color")
    if len(common) == 1:
        _a3_one_common(ctx, u1, u2, next(iter(common)))
        return
    for ui in (u1, u2):
        for x in sorted(ctx.all_colors - cu - cv - ctx.C(ui)):
            ctx.recolor("A3/two-common:recolor-u-ui", [(u, ui, x)])
    if not (ctx.wg.has_edge(v, u1) and ctx.wg.has_edge(v, u2)):
        raise BranchMismatch("A3: two common colors outside the two-triangle shape")
    a1, a2 = ctx.c(u, u1), ctx.c(u, u2)
    for ua, ub, ca, cb in ((u1, u2, a1, a2), (u2, u1, a2, a1)):
        if ctx.c(v, ua) == cb:
            for g in sorted(cv - cu - {ctx.c(v, ub)}):
                ctx.recolor("A3/two-common:align", [(u, ub, g)])
    free = ctx.free()
    if ctx.finish("A3/two-common:switch", [(u, u1, a2), (u, u2, a1)], free):
        return
    low = sorted({ctx.c(v, x) for x in ctx.wg.neighbors(v)
                  if x not in (u, u1, u2) and ctx.deg(x) <= 5})
    for j, k in permutations(low, 2):
        if ctx.finish("A3/two-common:low-switch", [(u, u1, k), (u, u2, j)], free):
            return
    raise BranchMismatch("A3: two common colors, all steps exhausted")


def _a3_one_common(ctx: ExtensionContext, u1: int, u2: int, alpha: int) -> None:
    u, v = ctx.u, ctx.v
    cv = ctx.C(v)
    ua = ctx.nbr(u, alpha)
    ub = u2 if ua == u1 else u1
    beta = ctx.c(u, ub)
    va = ctx.nbr(v, alpha)
    kind = ctx.cfg.kind
    if kind == "A3_1":
        for g in sorted(cv - {alpha}):
            if ctx.finish("A3_1/swap-pair", [(u, ua, g), (v, va, beta)], [alpha]):
                return
        raise BranchMismatch("A3_1: all steps exhausted")
    if kind == "A3_2":
        c_u1 = ctx.c(u, u1)
        c_u2 = ctx.c(u, u2)
        if alpha == c_u1:
            if ctx.c(v, u2) == alpha:
                for a1 in sorted(cv - ctx.C(u1)):
                    if ctx.finish("A3_2/common-on-shared", [(u, u2, a1)], [c_u2]):
                        return
            else:
                e8 = ctx.c(v, u2)
                if e8 not in ctx.C(u1):
                    ctx.recolor("A3_2/move-common-to-shared", [(u, u1, e8)])
                for a2 in sorted(set(ctx.free()) - ctx.C(u2)):
                    if ctx.finish("A3_2/recolor-u-u2", [(u, u2, a2)], [c_u2]):
                        return
                for g in sorted(cv - {alpha, e8}):
                    if ctx.finish("A3_2/rotate", [(u, u2, alpha), (u, u1, g)], [c_u2]):
                        return
        else:
            for g in sorted(ctx.all_colors - ctx.C(u1) - {c_u2, ctx.c(v, u2)}):
                if ctx.finish("A3_2/recolor-u-u1", [(u, u1, g)], [c_u1]):
                    return
        raise BranchMismatch("A3_2: all steps exhausted")
    # A3_3
    if va == ub:
        for a3 in sorted(cv - {alpha, ctx.c(v, ua)} - ctx.C(ua) - ctx.C(ub)):
            if ctx.finish("A3_3/common-crosses", [(u, ub, a3)], [beta]):
                return
    else:
        nine = ctx.c(v, ub)
        if nine not in ctx.C(ua):
            ctx.recolor("A3_3/align-common", [(u, ua, nine)])
        for a4 in sorted(set(ctx.free()) - ctx.C(ub)):
            if ctx.finish("A3_3/recolor-free", [(u, ub, a4)], [beta]):
                return
        for a5 in sorted(cv - {alpha, ctx.c(v, ua), nine} - ctx.C(ub)):
            if ctx.finish("A3_3/recolor-from-v", [(u, ub, a5)], [beta]):
                return
    raise BranchMismatch("A3_3: all steps exhausted")


# ---------------------------------------------------------------- A4


@dataclasses.dataclass
class _A4State:
    cc: list[int]                  # common colors, ascending
    W: dict[int, int]              # common color -> neighbor of v along it
    U: dict[int, int]              # common color -> neighbor of u along it
    ws: list[int]                  # neighbors of v other than u
    non: list[int]                 # those joined to v by a non-common color
    sv: MultiSet
    T: dict[int, list[int]]
    Tp: dict[int, list[int]]       # members of multiplicity exactly 2
    T0: list[int]
    free: list[int]


def _a4_state(ctx: ExtensionContext) -> _A4State:
    u, v = ctx.u, ctx.v
    cc = sorted(ctx.C(u) & ctx.C(v))
    free = ctx.free()
    ws = [x for x in ctx.wg.neighbors(v) if x != u]
    sv = MultiSet.join_all(ctx.C(x) - {ctx.c(v, x)} for x in ws)
    W = {g: ctx.nbr(v, g) for g in cc}
    U = {g: ctx.nbr(u, g) for g in cc}
    T = {g: [x for x in free if x not in ctx.C(W[g])] for g in cc}
    Tp = {g: [x for x in T[g] if sv.mult(x) == 2] for g in cc}
    T0 = sorted({x for g in cc for x in T[g] if sv.mult(x) >= 3})
    non = [x for x in ws if ctx.c(v, x) not in cc]
    return _A4State(cc, W, U, ws, non, sv, T, Tp, T0, free)


def _a4(ctx: ExtensionContext) -> None:
    u, v = ctx.u, ctx.v
    st = _a4_state(ctx)
    if ctx.finish("A4/free", [], _no_common_path(ctx, st.cc, st.free)):
        return
    if not st.cc:
        raise BranchMismatch("A4: no free color with no common color")
    k = len(st.cc)
    if k == 1:
        g = st.cc[0]
        for gam in sorted(ctx.C(v) - {g}):
            for bet in sorted(ctx.C(u) - {g}):
                if ctx.finish("A4/one-common:swap", [(u, st.U[g], gam), (v, st.W[g], bet)], [g]):
                    return
        raise BranchMismatch("A4: one common color, all steps exhausted")
    # a free color seen once around v frees a common color
    for x in st.free:
        if st.sv.mult(x) == 1:
            holder = next(w for w in st.ws if x in ctx.C(w))
            for g in st.cc:
                if st.W[g] != holder:
                    ctx.recolor("A4/multiplicity-one", [(v, st.W[g], x)])
    if k == 2:
        _a4_two(ctx, st)
    elif k == 3:
        _a4_three(ctx, st)
    else:
        _a4_four(ctx, st)


def _a4_two(ctx: ExtensionContext, st: _A4State) -> None:
    u, v = ctx.u, ctx.v
    a, b = st.cc
    cu, cv = ctx.C(u), ctx.C(v)
    missing = [x for x in sorted(cu) if st.sv.mult(x) == 0]
    for x1, x2 in permutations(missing, 2):
        if ctx.finish("A4/two:recolor-both", [(v, st.W[a], x2), (v, st.W[b], x1)], st.free):
            return
    for g in st.cc:
        if not ((cv - set(st.cc)) & ctx.C(st.W[g])):
            for t in st.T[g]:
                ctx.recolor("A4/two:isolated-common", [(v, st.W[g], t)])
    if ctx.deg(v) == 4:
        _a4_two_deg4(ctx, st, missing)
    else:
        _a4_two_deg5(ctx, st, missing)
    raise BranchMismatch("A4: two common colors, all steps exhausted")


def _a4_two_deg4(ctx: ExtensionContext, st: _A4State, missing: list[int]) -> None:
    u, v = ctx.u, ctx.v
    a, b = st.cc
    if not st.non:
        return
    w3 = st.non[0]
    for kk in missing:
        if kk in st.cc:
            other = b if kk == a else a
            for beta in st.T[kk]:
                for alpha in st.T[other]:
                    if ctx.finish("A4/two-deg4:common-missing", [(v, w3, kk), (v, st.W[kk], beta)], [alpha]):
                        return
            continue
        for p, q in ((a, b), (b, a)):
            for beta in st.T[p]:
                if not ctx.path(u, st.W[q], kk, beta):
                    if ctx.finish("A4/two-deg4:move-missing", [(v, st.W[q], kk)], [beta]):
                        return
                for alpha in st.T[q]:
                    if ctx.finish("A4/two-deg4:shift-missing", [(v, w3, kk), (v, st.W[q], alpha)], [beta]):
                        return


def _side(ctx: ExtensionContext, non: list[int], x: int) -> tuple[int, int] | None:
    """``(wj, wk)`` with ``x`` in ``C(wj)`` but not ``C(wk)``, for the two non-common neighbors."""
    if len(non) != 2:
        return None
    w3, w4 = non
    in3, in4 = x in ctx.C(w3), x in ctx.C(w4)
    if in3 and not in4:
        return w3, w4
    if in4 and not in3:
        return w4, w3
    return None


def _a4_two_deg5(ctx: ExtensionContext, st: _A4State, missing: list[int]) -> None:
    u, v = ctx.u, ctx.v
    a, b = st.cc
    W, U, T, Tp = st.W, st.U, st.T, st.Tp
    pairs = ((a, b), (b, a))
    # a twice-seen free color on one side, with no path to that side
    for p, q in pairs:
        for x in Tp[q]:
            sd = _side(ctx, st.non, x)
            if sd and not ctx.path(W[q], sd[0], ctx.c(v, sd[0]), x):
                ctx.recolor("A4/two-deg5:twice-seen", [(v, W[q], x)])
    # two twice-seen colors on opposite sides
    for p, q in pairs:
        for x, y in permutations(Tp[q], 2):
            sx, sy = _side(ctx, st.non, x), _side(ctx, st.non, y)
            if sx and sy and sx[0] == sy[1]:
                ctx.recolor("A4/two-deg5:opposite-sides", [(v, sx[1], x), (v, W[q], y)])
    # every color at u appears around v
    for g in st.cc:
        if st.sv.mult(g):
            continue
        other = b if g == a else a
        for wj in st.non:
            for al in T[g]:
                if ctx.finish("A4/two-deg5:common-unseen", [(v, wj, g), (v, W[g], al)], T[other]):
                    return
        for be in Tp[g]:
            sd = _side(ctx, st.non, be)
            if not sd:
                continue
            wj, wk = sd
            for be2 in T[g]:
                if be2 != be and ctx.finish("A4/two-deg5:common-unseen-rotate",
                                            [(v, wk, be), (v, wj, g), (v, W[g], be2)], T[other]):
                    return
        for be in T[g]:
            for wj, wk in permutations(st.non, 2):
                if not ctx.path(W[g], wj, ctx.c(v, wj), be):
                    if ctx.finish("A4/two-deg5:common-unseen-shift", [(v, wk, g), (v, W[g], be)], T[other]):
                        return
    for kk in sorted(ctx.C(u) - set(st.cc)):
        if st.sv.mult(kk):
            continue
        for p, q in pairs:
            for be in T[p]:
                if not ctx.path(U.get(kk) or ctx.nbr(u, kk), W[q], kk, be):
                    if ctx.finish("A4/two-deg5:unseen-to-common", [(v, W[q], kk)], [be]):
                        return
                for wj in st.non:
                    for al in T[q]:
                        if ctx.finish("A4/two-deg5:unseen-shift", [(v, wj, kk), (v, W[q], al)], [be]):
                            return
    # the two non-common colors at v
    for p, q in pairs:
        for al in Tp[q]:
            sd = _side(ctx, st.non, al)
            if not sd:
                continue
            wj, wk = sd
            gam = ctx.c(v, wk)
            if not ctx.path(U[a], W[a], a, gam) and not ctx.path(U[b], W[b], b, gam):
                if ctx.finish("A4/two-deg5:free-far-color", [(v, wk, al)], [gam]):
                    return
            if gam in ctx.C(W[p]) - ctx.C(W[q]) and not ctx.path(W[q], wj, ctx.c(v, wj), gam):
                if ctx.finish("A4/two-deg5:far-color-to-common", [(v, W[q], gam), (v, wk, al)], T[p]):
                    return
    # twice-seen colors of T_p, on the same side as, or opposite to, the one of T_q
    for p, q in pairs:
        for al in Tp[q] or T[q]:
            sd = _side(ctx, st.non, al)
            if not sd:
                continue
            w3, w4 = sd
            six, seven = ctx.c(v, w3), ctx.c(v, w4)
            for be in Tp[p]:
                if be in ctx.C(w3):
                    if _a4_same_side(ctx, st, p, q, be, w3, w4, six, seven):
                        return
                elif be in ctx.C(w4):
                    if _a4_opposite_side(ctx, st, p, q, be, w3, w4, six, seven):
                        return


def _a4_same_side(ctx, st: _A4State, p, q, be, w3, w4, six, seven) -> bool:
    v = ctx.v
    W, T = st.W, st.T
    cwp, cwq = ctx.C(W[p]), ctx.C(W[q])
    if seven in cwp and seven in cwq:
        for al in T[q]:
            if ctx.finish("A4/same-side:both-see-far", [(v, w3, q), (v, W[q], al)], [be]):
                return True
        return False
    if seven in cwq or (seven in cwp and seven in ctx.C(w3)):
        if seven in cwq and not ctx.path(W[p], w3, six, seven):
            for al in T[q]:
                if ctx.finish("A4/same-side:far-to-p", [(v, w4, al), (v, W[p], seven)],
                              [x for x in T[q] if x != al]):
                    return True
        for t in sorted(set(st.free) & cwp & cwq):
            if not ctx.path(W[p], w4, p, t):
                for al in T[q]:
                    if ctx.finish("A4/same-side:shared-free", [(v, w4, t), (v, w3, q), (v, W[q], al)], T[p]):
                        return True
            for b8 in T[p]:
                if ctx.finish("A4/same-side:shared-free-rotate", [(v, w4, t), (v, W[p], b8), (v, w3, p)], T[q]):
                    return True
    return False


def _a4_opposite_side(ctx, st: _A4State, p, q, be, w3, w4, six, seven) -> bool:
    u, v = ctx.u, ctx.v
    W, U, T = st.W, st.U, st.T
    cwp = ctx.C(W[p])
    if six not in cwp:
        if not ctx.path(U[q], W[q], q, six):
            if ctx.finish("A4/opposite:near-to-uv", [(v, w3, be)], [six]):
                return True
        if not ctx.path(W[p], w4, six, seven):
            if ctx.finish("A4/opposite:near-to-p", [(v, W[p], six), (v, w3, be)], T[q]):
                return True
    wit = ctx.cfg.witness
    v5 = wit.get("v5")
    if wit.get("disjunct") != 2 or v5 is None or v5 not in st.ws or not ctx.wg.has_edge(u, v5):
        return False
    f5, e5 = ctx.c(v, v5), ctx.c(u, v5)
    cu = ctx.C(u)
    own = sorted(cu - set(st.cc))
    outside_v5 = [x for x in st.free if x not in ctx.C(v5)]
    if f5 in st.cc and seven in ctx.C(v5):
        q5 = st.cc[0] if f5 == st.cc[1] else st.cc[1]
        if e5 == q5:
            return ctx.finish("A4/v5:common-on-uv5", [], outside_v5)
        if not ctx.path(v, W[q5], f5, e5):
            if ctx.finish("A4/v5:move-uv5-color", [(v, W[q5], e5)], outside_v5):
                return True
        for i in outside_v5:
            if all(not ctx.path(u, v5, i, j) for j in own if j != e5):
                if ctx.finish("A4/v5:recolor-uv5", [(u, v5, i)], [e5]):
                    return True
        for j in sorted((set(own) - {e5}) & ctx.C(v5)):
            for b1 in T[p]:
                if ctx.path(u, v5, b1, j):
                    if ctx.finish("A4/v5:rotate", [(v, v5, b1), (v, W[q5], j), (v, w4, f5)], st.free):
                        return True
        return False
    if f5 not in st.cc and be not in ctx.C(v5):
        if e5 in own:
            return ctx.finish("A4/v5:own-color", [(v, W[q], e5)], [be])
        for i in outside_v5:
            if all(not ctx.path(u, v5, i, j) for j in own):
                ctx.recolor("A4/v5:recolor-uv5-reduce", [(u, v5, i)])
        for j in sorted(set(own) & ctx.C(v5)):
            if not ctx.path(u, v5, be, j):
                continue
            if e5 == p:
                if not ctx.path(v5, W[p], j, f5):
                    if ctx.finish("A4/v5:swap-into-p", [(v, W[p], j), (v, W[q], p)], [be]):
                        return True
                if ctx.finish("A4/v5:swap-into-q", [(v, W[q], j), (v, v5, be)], [f5]):
                    return True
            else:
                if not ctx.path(v5, W[p], j, f5):
                    if ctx.finish("A4/v5:recolor-p", [(v, W[p], j)], [be]):
                        return True
                if ctx.finish("A4/v5:recolor-p-and-v5", [(v, W[p], j), (v, v5, be)], [f5]):
                    return True
    return False


def _a4_three(ctx: ExtensionContext, st: _A4State) -> None:
    u, v = ctx.u, ctx.v
    W, T, Tp = st.W, st.T, st.Tp
    cv = ctx.C(v)
    if ctx.deg(v) == 4:
        for g in st.cc:
            if st.sv.mult(g):
                continue
            for h in st.cc:
                if h == g:
                    continue
                (third,) = [x for x in st.cc if x not in (g, h)]
                for be in T[g]:
                    if not ctx.path(W[g], W[h], h, be):
                        ctx.recolor("A4/three-deg4:unseen-common", [(v, W[third], g), (v, W[g], be)])
                    ctx.recolor("A4/three-deg4:unseen-common-alt", [(v, W[g], be), (v, W[h], g)])
        for kk in sorted(ctx.C(u) - set(st.cc)):
            if st.sv.mult(kk) == 0:
                for g in st.cc:
                    ctx.recolor("A4/three-deg4:unseen-own", [(v, W[g], kk)])
        raise BranchMismatch("A4: three common colors at a 4-vertex, all steps exhausted")
    for g in st.cc:
        if ctx.C(W[g]) & cv == {g}:
            for be in T[g]:
                ctx.recolor("A4/three:isolated-common", [(v, W[g], be)])
    w4 = st.non[0] if st.non else None
    if w4 is not None:
        six = ctx.c(v, w4)
        for g in st.cc:
            for be in Tp[g]:
                for h in st.cc:
                    if h == g:
                        continue
                    (third,) = [x for x in st.cc if x not in (g, h)]
                    if be in ctx.C(W[third]) or be not in ctx.C(w4):
                        continue
                    if not ctx.path(W[g], w4, be, six):
                        ctx.recolor("A4/three:twice-seen-to-g", [(v, W[g], be)])
                    ctx.recolor("A4/three:twice-seen-to-third", [(v, W[third], be)])
    raise BranchMismatch("A4: three common colors, all steps exhausted")


def _a4_four(ctx: ExtensionContext, st: _A4State) -> None:
    v = ctx.v
    W, T, Tp = st.W, st.T, st.Tp
    cv = ctx.C(v)
    for g in st.cc:
        if ctx.C(W[g]) & cv == {g}:
            for t in T[g]:
                ctx.recolor("A4/four:isolated-common", [(v, W[g], t)])
    for g in st.cc:
        for be in Tp[g]:
            holders = [W[h] for h in st.cc if h != g and be in ctx.C(W[h])]
            if len(holders) != 2:
                continue
            lacking = [W[h] for h in st.cc if h != g and be not in ctx.C(W[h])]
            for x, y in permutations(holders):
                if not ctx.path(W[g], y, ctx.c(v, y), be):
                    ctx.recolor("A4/four:twice-seen-to-g", [(v, W[g], be)])
                for z in lacking:
                    ctx.recolor("A4/four:twice-seen-to-lacking", [(v, z, be)])
    raise BranchMismatch("A4: four common colors, all steps exhausted")


_HANDLERS = {
    "A1": _a1,
    "A2_1": _a2,
    "A2_2": _a2,
    "A3_1": _a3,
    "A3_2": _a3,
    "A3_3": _a3,
    "A4_1": _a4,
    "A4_2": _a4,
}

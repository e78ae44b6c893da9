"""Exact-rational weights and transfer rules on the stripped plane graph H.

H is G minus its 2-vertices. Vertices start at ``2 d_H(u) - 6`` and faces
at ``d(f) - 6``; Euler's formula makes every connected component total
-12. Each vertex then sends weight to its incident faces by rules R1-R4.
Degree conditions named ``d_H`` use H; neighbor counts ``n_k`` use G.
"""
from __future__ import annotations

import dataclasses
from fractions import Fraction
from typing import Callable

from .graph import (
    EmbeddingError, Face, Graph, GraphError, PlaneEmbedding, connected_components,
    enumerate_faces, strip_two_vertices,
)

F = Fraction
EULER_TOTAL = F(-12)


class DischargeError(GraphError):
    pass


def fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclasses.dataclass
class WeightAssignment:
    vertex_weights: dict[int, Fraction]
    face_weights: dict[tuple[int, int], Fraction]

    def total(self) -> Fraction:
        return sum(self.vertex_weights.values(), F(0)) + sum(self.face_weights.values(), F(0))


@dataclasses.dataclass(frozen=True)
class Transfer:
    source: int                 # vertex id in G
    face: tuple[int, int]       # (component, face index)
    amount: Fraction
    rule: str
    label: str


@dataclasses.dataclass
class Audit:
    ambiguous: list[tuple[int, tuple[int, int], list[str]]] = dataclasses.field(default_factory=list)
    missing: list[tuple[int, tuple[int, int], str]] = dataclasses.field(default_factory=list)


@dataclasses.dataclass
class DischargeReport:
    initial: WeightAssignment
    transfers: list[Transfer]
    final: WeightAssignment
    negatives: list[tuple[str, object, Fraction]]
    audit: Audit
    components: int
    faces: dict[tuple[int, int], Face]
    bad_three_faces: dict[int, int]

    def as_json(self) -> dict:
        def weights(wa: WeightAssignment):
            return {
                "vertices": {str(v): fmt(q) for v, q in sorted(wa.vertex_weights.items())},
                "faces": {f"{c}:{i}": fmt(q) for (c, i), q in sorted(wa.face_weights.items())},
            }
        return {
            "components": self.components,
            "initial": weights(self.initial),
            "final": weights(self.final),
            "totals": {"initial": fmt(self.initial.total()), "final": fmt(self.final.total())},
            "transfers": [
                {"from": t.source, "face": f"{t.face[0]}:{t.face[1]}", "amount": fmt(t.amount),
                 "rule": t.rule, "row": t.label}
                for t in self.transfers
            ],
            "negatives": [
                {"kind": k, "id": (v if k == "vertex" else f"{v[0]}:{v[1]}"), "weight": fmt(q)}
                for k, v, q in self.negatives
            ],
            "audit": {
                "ambiguous": [{"vertex": v, "face": f"{f[0]}:{f[1]}", "rows": rows} for v, f, rows in self.audit.ambiguous],
                "missing": [{"vertex": v, "face": f"{f[0]}:{f[1]}", "rule": r} for v, f, r in self.audit.missing],
            },
            "bad_three_faces": {str(v): k for v, k in sorted(self.bad_three_faces.items()) if k},
        }


# ---------------------------------------------------------------- weights


def initial_weights(h: Graph, emb: PlaneEmbedding, faces: list[Face] | None = None) -> WeightAssignment:
    """Initial weights of a connected embedded graph; the total is checked to be -12."""
    if h.n == 0:
        raise DischargeError("empty graph")
    if len(connected_components(h)) != 1:
        raise DischargeError("initial_weights expects a connected graph; split components first")
    if faces is None:
        faces = enumerate_faces(h, emb)
    wa = WeightAssignment(
        {v: F(2 * h.degree(v) - 6) for v in range(h.n)},
        {(0, i): F(f.degree - 6) for i, f in enumerate(faces)},
    )
    if wa.total() != EULER_TOTAL:
        raise EmbeddingError(f"initial weights total {wa.total()}, not -12")
    return wa


# ---------------------------------------------------------------- rule tables


@dataclasses.dataclass(frozen=True)
class _Ctx:
    """Everything a row condition may read about one incidence of y on f."""
    dy: int        # d_H(y)
    dx: int        # d_H(x), the larger of y's two boundary neighbors
    dz: int        # d_H(z)
    df: int        # d(f)
    n4_y: int      # G-censuses
    n7m_y: int
    n4_x: int
    n4_z: int
    n7m_z: int


Row = tuple[str, Fraction, Callable[[_Ctx], bool]]

_R1: list[Row] = [
    ("n7-(y)=0", F(1, 2), lambda c: c.n7m_y == 0),
    ("n7-(y)=1,dH(z)<=7", F(4, 5), lambda c: c.n7m_y == 1 and c.dz <= 7),
    ("n7-(y)=1,dH(z)>=8", F(1, 5), lambda c: c.n7m_y == 1 and c.dz >= 8),
]


def _r2_big(c: _Ctx) -> bool:
    return c.n4_y == 0 and (c.df == 3 or (4 <= c.df <= 5 and c.dz >= 9))


_R2_TABLE: list[tuple[str, Fraction, Callable[[_Ctx], bool]]] = [
    ("dH(x)=dH(z)=5", F(7, 5), lambda c: c.dx == 5 and c.dz == 5),
    ("dH(x)=6,dH(z)=5", F(6, 5), lambda c: c.dx == 6 and c.dz == 5),
    ("dH(x)=7,dH(z)=5", F(13, 14), lambda c: c.dx == 7 and c.dz == 5),
    ("dH(x)=8,dH(z)=5", F(1), lambda c: c.dx == 8 and c.dz == 5),
    ("dH(x)>=9,dH(z)=5", F(11, 12), lambda c: c.dx >= 9 and c.dz == 5),
    ("dH(x)=dH(z)=6", F(1), lambda c: c.dx == 6 and c.dz == 6),
    ("dH(x)=7,dH(z)=6", F(6, 7), lambda c: c.dx == 7 and c.dz == 6),
    ("dH(x)=8,dH(z)=6", F(3, 4), lambda c: c.dx == 8 and c.dz == 6),
    ("dH(x)>=9,dH(z)=6", F(2, 3), lambda c: c.dx >= 9 and c.dz == 6),
    ("dH(x)=dH(z)=7", F(5, 7), lambda c: c.dx == 7 and c.dz == 7),
    ("dH(x)>=8,dH(z)=7", F(9, 14), lambda c: c.dx >= 8 and c.dz == 7),
    ("dH(z)=8", F(1, 2), lambda c: c.dz == 8),
    ("dH(z)>=9", F(1, 3), lambda c: c.dz >= 9),
]

_R2: list[Row] = [
    ("n4(y)>=1", F(4, 5), lambda c: c.n4_y >= 1),
    ("n4(y)=0,4<=d(f)<=5,dH(z)<=8", F(1, 2), lambda c: c.n4_y == 0 and 4 <= c.df <= 5 and c.dz <= 8),
] + [(label, amt, (lambda cond: lambda c: _r2_big(c) and cond(c))(cond)) for label, amt, cond in _R2_TABLE]

_R4: list[Row] = [
    ("4<=d(f)<=5 or d(f)=3,dH(z)>=6", F(1), lambda c: 4 <= c.df <= 5 or (c.df == 3 and c.dz >= 6)),
    ("dH(z)=3", F(3, 2), lambda c: c.df == 3 and c.dz == 3),
    ("dH(z)=4,n7-(z)=1", F(7, 5), lambda c: c.df == 3 and c.dz == 4 and c.n7m_z == 1),
    ("dH(z)=4,n7-(z)=0", F(5, 4), lambda c: c.df == 3 and c.dz == 4 and c.n7m_z == 0),
    ("dH(z)=5,n4(z)>=1,dH(x)>=10", F(11, 10), lambda c: c.df == 3 and c.dz == 5 and c.n4_z >= 1 and c.dx >= 10),
    ("dH(z)=5,n4(z)>=1,6<=dH(x)<=9", F(5, 4), lambda c: c.df == 3 and c.dz == 5 and c.n4_z >= 1 and 6 <= c.dx <= 9),
    ("dH(x)=dH(z)=5,n4(z)>=1 or n4(x)>=1", F(7, 5),
     lambda c: c.df == 3 and c.dx == 5 and c.dz == 5 and (c.n4_z >= 1 or c.n4_x >= 1)),
    ("dH(z)=5,n4(z)=0,n4(x)=0 if dH(x)=5", F(4, 3),
     lambda c: c.df == 3 and c.dz == 5 and c.n4_z == 0 and (c.dx != 5 or c.n4_x == 0)),
]


def _rule_rows(dy: int) -> tuple[str, list[Row]] | None:
    if dy == 4:
        return "R1", _R1
    if dy == 5:
        return "R2", _R2
    if 6 <= dy <= 9:
        return "R3", [(f"k={dy}", F(2 * dy - 6, dy), lambda c: True)]
    if dy >= 10:
        return "R4", _R4
    return None


def match_rows(ctx: _Ctx) -> tuple[str | None, list[tuple[str, Fraction]]]:
    """All rows of the applicable rule that match, in printed order."""
    rr = _rule_rows(ctx.dy)
    if rr is None:
        return None, []
    rule, rows = rr
    return rule, [(label, amt) for label, amt, cond in rows if cond(ctx)]


# ---------------------------------------------------------------- per-incidence context


class _Census:
    """G-side neighbor counts of H vertices, cached."""

    def __init__(self, g: Graph):
        self.g = g
        self._cache: dict[tuple[int, int, int], int] = {}

    def count(self, v: int, lo: int, hi: int) -> int:
        key = (v, lo, hi)
        if key not in self._cache:
            self._cache[key] = sum(1 for x in self.g.neighbors(v) if lo <= self.g.degree(x) <= hi)
        return self._cache[key]


def _context(h: Graph, census: _Census, to_g, walk, pos: int) -> _Ctx:
    y = walk[pos][0]
    a = walk[pos - 1][0]             # predecessor on the boundary
    b = walk[pos][1]                 # successor
    x, z = (a, b) if h.degree(a) >= h.degree(b) else (b, a)
    gy, gx, gz = to_g(y), to_g(x), to_g(z)
    return _Ctx(
        dy=h.degree(y), dx=h.degree(x), dz=h.degree(z), df=len(walk),
        n4_y=census.count(gy, 4, 4), n7m_y=census.count(gy, 0, 7),
        n4_x=census.count(gx, 4, 4), n4_z=census.count(gz, 4, 4), n7m_z=census.count(gz, 0, 7),
    )


def transfer_amount(h: Graph, g_original: Graph, emb: PlaneEmbedding, y: int, f: Face,
                    to_original=None, position: int | None = None) -> Fraction:
    """Weight sent from ``y`` to ``f`` at one boundary incidence (the first, unless ``position`` is given).

    ``h`` vertex ``i`` is ``g_original`` vertex ``to_original[i]`` (identity by default).
    """
    to_g = (lambda i: i) if to_original is None else (lambda i: to_original[i])
    positions = [i for i, d in enumerate(f.walk) if d[0] == y]
    if not positions:
        raise DischargeError(f"vertex {y} is not on the face boundary")
    pos = positions[0] if position is None else position
    if f.walk[pos][0] != y:
        raise DischargeError(f"walk position {pos} is not at vertex {y}")
    _, rows = match_rows(_context(h, _Census(g_original), to_g, f.walk, pos))
    return rows[0][1] if rows else F(0)


# ---------------------------------------------------------------- full run


def discharge(g: Graph, emb: PlaneEmbedding) -> DischargeReport:
    """Run R1-R4 on every component of H = G minus its 2-vertices.

    ``emb`` embeds ``g``; each component of H inherits the restricted rotation.
    """
    emb.validate(g)
    census = _Census(g)
    vw: dict[int, Fraction] = {}
    fw: dict[tuple[int, int], Fraction] = {}
    faces_out: dict[tuple[int, int], Face] = {}
    transfers: list[Transfer] = []
    audit = Audit()
    bad: dict[int, int] = {}
    comps = strip_two_vertices(g)
    for ci, comp in enumerate(comps):
        h = comp.graph
        to_g = comp.original
        h_emb = emb.restrict(comp.to_original)
        faces = enumerate_faces(h, h_emb)
        init = initial_weights(h, h_emb, faces)
        for v, q in init.vertex_weights.items():
            vw[to_g(v)] = q
        for i, f in enumerate(faces):
            fw[(ci, i)] = init.face_weights[(0, i)]
            faces_out[(ci, i)] = f
            if f.degree == 3 and min(h.degree(x) for x in f.vertices) == 3:
                for x in f.vertices:
                    bad[to_g(x)] = bad.get(to_g(x), 0) + 1
            for pos, (y, _) in enumerate(f.walk):
                ctx = _context(h, census, to_g, f.walk, pos)
                rule, rows = match_rows(ctx)
                if rule is None:
                    continue
                if len(rows) > 1:
                    audit.ambiguous.append((to_g(y), (ci, i), [r for r, _ in rows]))
                if not rows:
                    audit.missing.append((to_g(y), (ci, i), rule))
                    continue
                label, amt = rows[0]
                transfers.append(Transfer(to_g(y), (ci, i), amt, rule, label))
    initial = WeightAssignment(dict(vw), dict(fw))
    for t in transfers:
        vw[t.source] -= t.amount
        fw[t.face] += t.amount
    final = WeightAssignment(vw, fw)
    if final.total() != initial.total() or initial.total() != EULER_TOTAL * len(comps):
        raise DischargeError(f"weight not conserved: {initial.total()} -> {final.total()}")
    negatives: list[tuple[str, object, Fraction]] = [("vertex", v, q) for v, q in sorted(vw.items()) if q < 0]
    negatives += [("face", k, q) for k, q in sorted(fw.items()) if q < 0]
    return DischargeReport(initial, transfers, final, negatives, audit, len(comps), faces_out, bad)

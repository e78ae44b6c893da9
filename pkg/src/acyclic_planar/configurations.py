"""Reducible configurations A1-A4 and their detection.

Every predicate reads only degrees and adjacency, so detection works on
both :class:`~acyclic_planar.graph.Graph` and the colorizer's mutable
:class:`~acyclic_planar.graph.WorkGraph`.
"""
from __future__ import annotations

import dataclasses
from typing import Any

KINDS = ("A1", "A2_1", "A2_2", "A3_1", "A3_2", "A3_3", "A4_1", "A4_2")


class MalformedWitness(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class Configuration:
    """A located configuration.

    ``witness`` keys per kind:

    * A1: ``u, v, w``
    * A2_*: ``u, v, w, order`` (other neighbors of ``u``, degrees nonincreasing)
    * A3_*: ``u, v, u1, u2`` (``u2`` is a common neighbor for A3_2; both are for A3_3)
    * A4_*: ``v, u, others`` (``v``'s other neighbors, degrees nondecreasing),
      plus ``disjunct`` (1 or 2) for A4_2 and ``v5`` for its second disjunct.
    """

    kind: str
    witness: dict[str, Any]

    @property
    def removal_edge(self) -> tuple[int, int]:
        return (self.witness["u"], self.witness["v"])

    def as_json(self) -> dict:
        w = {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.witness.items()}
        return {"kind": self.kind, "witness": w, "removal_edge": list(self.removal_edge)}


def _small(g, v: int, k: int) -> int:
    return sum(1 for x in g.neighbors(v) if g.degree(x) <= k)


def _n2(g, v: int) -> int:
    return sum(1 for x in g.neighbors(v) if g.degree(x) == 2)


def _a2_order(g, u: int, v: int) -> tuple[int, ...]:
    rest = [x for x in g.neighbors(u) if x != v]
    rest.sort(key=lambda x: (-g.degree(x), x))
    return tuple(rest)


def _a4_others(g, v: int, u: int) -> tuple[int, ...]:
    rest = [x for x in g.neighbors(v) if x != u]
    rest.sort(key=lambda x: (g.degree(x), x))
    return tuple(rest)


def _a2_outer(g, u: int) -> bool:
    d = g.degree(u)
    return _n2(g, u) >= 1 and _small(g, u, 8) >= d - 8


def _a2_kind(g, u: int) -> str | None:
    if not _a2_outer(g, u):
        return None
    d = g.degree(u)
    small = _small(g, u, 8)
    if small >= d - 7:
        return "A2_1"
    if small == d - 8 and _n2(g, u) >= d - 9:
        return "A2_2"
    return None


def _a3_kind(g, u: int, v: int, u1: int, u2: int) -> str | None:
    dv = g.degree(v)
    if dv <= 8:
        return "A3_1"
    if dv == 9 and g.has_edge(v, u2):
        return "A3_2"
    if dv == 10 and _small(g, v, 5) >= 5 and g.has_edge(v, u1) and g.has_edge(v, u2):
        return "A3_3"
    return None


def _a4_match(g, v: int, u: int, others: tuple[int, ...]) -> tuple[str, dict] | None:
    dv, du = g.degree(v), g.degree(u)
    ds = [g.degree(x) for x in others]
    if dv == 4 and 4 <= du <= 7 and du + ds[0] <= 17:
        return "A4_1", {}
    if dv == 5:
        if 4 <= du <= 6 and du + ds[0] + ds[1] <= 18:
            return "A4_2", {"disjunct": 1}
        if du == 6 and ds[0] == 6 and ds[1] == ds[2] == ds[3] == 7:
            for x in others[1:]:
                if g.has_edge(u, x):
                    return "A4_2", {"disjunct": 2, "v5": x}
    return None


def check_configuration(g, cfg: Configuration) -> bool:
    """Whether ``cfg``'s witness satisfies its kind's predicate in ``g``."""
    w = cfg.witness
    try:
        if cfg.kind == "A1":
            u, v, x = w["u"], w["v"], w["w"]
            return (len({u, v, x}) == 3 and g.has_edge(u, v) and g.has_edge(v, x)
                    and g.degree(v) == 2 and g.degree(u) <= 9)
        if cfg.kind in ("A2_1", "A2_2"):
            u, v, x, order = w["u"], w["v"], w["w"], tuple(w["order"])
            if not (g.has_edge(u, v) and g.degree(v) == 2 and g.has_edge(v, x) and x != u):
                return False
            if sorted(order) != sorted(y for y in g.neighbors(u) if y != v):
                return False
            if any(g.degree(a) < g.degree(b) for a, b in zip(order, order[1:])):
                return False
            return _a2_kind(g, u) == cfg.kind
        if cfg.kind in ("A3_1", "A3_2", "A3_3"):
            u, v, u1, u2 = w["u"], w["v"], w["u1"], w["u2"]
            if not (g.has_edge(u, v) and g.degree(u) == 3):
                return False
            if sorted((u1, u2)) != sorted(y for y in g.neighbors(u) if y != v):
                return False
            dv = g.degree(v)
            if cfg.kind == "A3_1":
                return dv <= 8
            if cfg.kind == "A3_2":
                return dv == 9 and g.has_edge(v, u2)
            return dv == 10 and _small(g, v, 5) >= 5 and g.has_edge(v, u1) and g.has_edge(v, u2)
        if cfg.kind in ("A4_1", "A4_2"):
            v, u, others = w["v"], w["u"], tuple(w["others"])
            if not g.has_edge(u, v):
                return False
            if sorted(others) != sorted(y for y in g.neighbors(v) if y != u):
                return False
            ds = [g.degree(x) for x in others]
            if ds != sorted(ds) or (ds and g.degree(u) > ds[0]):
                return False
            dv, du = g.degree(v), g.degree(u)
            if cfg.kind == "A4_1":
                return dv == 4 and 4 <= du <= 7 and du + ds[0] <= 17
            if dv != 5:
                return False
            if w.get("disjunct", 1) == 1:
                return 4 <= du <= 6 and du + ds[0] + ds[1] <= 18
            v5 = w["v5"]
            return (du == 6 and ds[0] == 6 and ds[1] == ds[2] == ds[3] == 7
                    and v5 in others[1:] and g.has_edge(u, v5))
    except (KeyError, IndexError, TypeError) as exc:
        raise MalformedWitness(f"{cfg.kind}: {exc!r}") from exc
    raise MalformedWitness(f"unknown kind {cfg.kind!r}")


def _scan_a1(g):
    for v in g.vertices_of_degree(2):
        a, b = g.neighbors(v)
        for u, x in ((a, b), (b, a)):
            if g.degree(u) <= 9:
                return Configuration("A1", {"u": u, "v": v, "w": x})
    return None


def _scan_a2(g, kind: str):
    hubs = set()
    for v in g.vertices_of_degree(2):
        hubs.update(g.neighbors(v))
    for u in sorted(hubs):
        if _a2_kind(g, u) != kind:
            continue
        v = min(x for x in g.neighbors(u) if g.degree(x) == 2)
        (x,) = [y for y in g.neighbors(v) if y != u]
        return Configuration(kind, {"u": u, "v": v, "w": x, "order": _a2_order(g, u, v)})
    return None


def _scan_a3(g, kind: str):
    for u in g.vertices_of_degree(3):
        nb = g.neighbors(u)
        for v in nb:
            a, b = [y for y in nb if y != v]
            for u1, u2 in ((a, b), (b, a)):
                if _a3_kind(g, u, v, u1, u2) == kind:
                    return Configuration(kind, {"u": u, "v": v, "u1": u1, "u2": u2})
    return None


def _scan_a4(g, kind: str):
    dv = 4 if kind == "A4_1" else 5
    for v in g.vertices_of_degree(dv):
        nb = g.neighbors(v)
        dmin = min(g.degree(x) for x in nb)
        for u in nb:
            if g.degree(u) != dmin:
                continue
            others = _a4_others(g, v, u)
            hit = _a4_match(g, v, u, others)
            if hit is not None and hit[0] == kind:
                wit = {"v": v, "u": u, "others": others}
                wit.update(hit[1])
                return Configuration(kind, wit)
    return None


def find_configuration(g) -> Configuration | None:
    """First configuration in kind order A1, A2_1, ..., A4_2, lowest vertex first."""
    hit = _scan_a1(g)
    if hit:
        return hit
    for kind in ("A2_1", "A2_2"):
        hit = _scan_a2(g, kind)
        if hit:
            return hit
    for kind in ("A3_1", "A3_2", "A3_3"):
        hit = _scan_a3(g, kind)
        if hit:
            return hit
    for kind in ("A4_1", "A4_2"):
        hit = _scan_a4(g, kind)
        if hit:
            return hit
    return None

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from acyclic_planar.discharging import DischargeError, discharge, initial_weights, transfer_amount
from acyclic_planar.generators import icosahedron, stacked_triangulation, subdivide

from helpers import cube, face_gadget

BIG = 10  # a filler degree that is neither 4 nor at most 7


def amount(df, **fills):
    g, emb, y, f = face_gadget(df, fills)
    return transfer_amount(g, g, emb, y, f)


# (rule row, face degree, fillers, expected amount); degrees of face vertices are 2 + len(fillers)
ROWS = [
    ("R1 n7-(y)=0", 3, dict(y=[BIG, BIG], x=[BIG] * 7, z=[BIG] * 7), F(1, 2)),
    ("R1 n7-(y)=1, dH(z)<=7", 3, dict(y=[BIG, BIG], x=[BIG] * 7, z=[BIG] * 4), F(4, 5)),
    ("R1 n7-(y)=1, dH(z)>=8", 3, dict(y=[BIG, 5], x=[BIG] * 7, z=[BIG] * 7), F(1, 5)),
    ("R2 n4(y)>=1", 3, dict(y=[4, BIG, BIG], x=[BIG] * 3, z=[BIG] * 3), F(4, 5)),
    ("R2 4<=d(f)<=5, dH(z)<=8", 4, dict(y=[BIG] * 3, x=[BIG] * 3, z=[BIG] * 3, m=[BIG]), F(1, 2)),
    ("R2 dH(x)=dH(z)=5", 3, dict(y=[BIG] * 3, x=[BIG] * 3, z=[BIG] * 3), F(7, 5)),
    ("R2 dH(x)=6, dH(z)=5", 3, dict(y=[BIG] * 3, x=[BIG] * 4, z=[BIG] * 3), F(6, 5)),
    ("R2 dH(x)=7, dH(z)=5", 3, dict(y=[BIG] * 3, x=[BIG] * 5, z=[BIG] * 3), F(13, 14)),
    ("R2 dH(x)=8, dH(z)=5", 3, dict(y=[BIG] * 3, x=[BIG] * 6, z=[BIG] * 3), F(1)),
    ("R2 dH(x)>=9, dH(z)=5", 3, dict(y=[BIG] * 3, x=[BIG] * 9, z=[BIG] * 3), F(11, 12)),
    ("R2 dH(x)=dH(z)=6", 3, dict(y=[BIG] * 3, x=[BIG] * 4, z=[BIG] * 4), F(1)),
    ("R2 dH(x)=7, dH(z)=6", 3, dict(y=[BIG] * 3, x=[BIG] * 5, z=[BIG] * 4), F(6, 7)),
    ("R2 dH(x)=8, dH(z)=6", 3, dict(y=[BIG] * 3, x=[BIG] * 6, z=[BIG] * 4), F(3, 4)),
    ("R2 dH(x)>=9, dH(z)=6", 3, dict(y=[BIG] * 3, x=[BIG] * 7, z=[BIG] * 4), F(2, 3)),
    ("R2 dH(x)=dH(z)=7", 3, dict(y=[BIG] * 3, x=[BIG] * 5, z=[BIG] * 5), F(5, 7)),
    ("R2 dH(x)>=8, dH(z)=7", 3, dict(y=[BIG] * 3, x=[BIG] * 8, z=[BIG] * 5), F(9, 14)),
    ("R2 dH(z)=8", 3, dict(y=[BIG] * 3, x=[BIG] * 6, z=[BIG] * 6), F(1, 2)),
    ("R2 dH(z)>=9", 3, dict(y=[BIG] * 3, x=[BIG] * 8, z=[BIG] * 8), F(1, 3)),
    ("R2 d(f)=4, dH(z)>=9", 4, dict(y=[BIG] * 3, x=[BIG] * 7, z=[BIG] * 7, m=[BIG]), F(1, 3)),
    ("R3 k=6", 3, dict(y=[BIG] * 4, x=[BIG], z=[BIG]), F(1)),
    ("R3 k=7", 3, dict(y=[BIG] * 5, x=[BIG], z=[BIG]), F(8, 7)),
    ("R3 k=8", 3, dict(y=[BIG] * 6, x=[BIG], z=[BIG]), F(5, 4)),
    ("R3 k=9", 3, dict(y=[BIG] * 7, x=[BIG], z=[BIG]), F(4, 3)),
    ("R4 d(f)=4", 4, dict(y=[BIG] * 8, x=[BIG], z=[BIG], m=[BIG]), F(1)),
    ("R4 d(f)=3, dH(z)>=6", 3, dict(y=[BIG] * 8, x=[BIG] * 5, z=[BIG] * 4), F(1)),
    ("R4 dH(z)=3", 3, dict(y=[BIG] * 8, x=[BIG] * 8, z=[BIG]), F(3, 2)),
    ("R4 dH(z)=4, n7-(z)=1", 3, dict(y=[BIG] * 8, x=[BIG] * 4, z=[BIG, BIG]), F(7, 5)),
    ("R4 dH(z)=4, n7-(z)=0", 3, dict(y=[BIG] * 8, x=[BIG] * 6, z=[BIG, BIG]), F(5, 4)),
    ("R4 dH(z)=5, n4(z)>=1, dH(x)>=10", 3, dict(y=[BIG] * 8, x=[BIG] * 8, z=[4, BIG, BIG]), F(11, 10)),
    ("R4 dH(z)=5, n4(z)>=1, 6<=dH(x)<=9", 3, dict(y=[BIG] * 8, x=[BIG] * 5, z=[4, BIG, BIG]), F(5, 4)),
    ("R4 dH(x)=dH(z)=5, n4(x)>=1", 3, dict(y=[BIG] * 8, x=[4, BIG, BIG], z=[BIG] * 3), F(7, 5)),
    ("R4 dH(z)=5, n4(z)=0", 3, dict(y=[BIG] * 8, x=[BIG] * 5, z=[BIG] * 3), F(4, 3)),
]


@pytest.mark.parametrize("label, df, fills, expected", ROWS, ids=[r[0] for r in ROWS])
def test_rule_rows(label, df, fills, expected):
    assert amount(df, **fills) == expected


def test_three_vertex_sends_nothing():
    assert amount(3, y=[BIG], x=[BIG], z=[BIG]) == 0


def test_vertex_not_on_face():
    g, emb, y, f = face_gadget(3, {"y": [BIG] * 4})
    with pytest.raises(DischargeError):
        transfer_amount(g, g, emb, 99, f)


def test_initial_weights_examples():
    g, emb = icosahedron()
    wa = initial_weights(g, emb)
    assert wa.total() == -12 and set(wa.vertex_weights.values()) == {F(4)}
    g, emb = stacked_triangulation(4, 0)
    assert initial_weights(g, emb).total() == -12
    g, emb = cube()
    wa = initial_weights(g, emb)
    assert wa.total() == -12 and set(wa.face_weights.values()) == {F(-2)}


def test_discharge_icosahedron():
    g, emb = icosahedron()
    rep = discharge(g, emb)
    assert len(rep.transfers) == 60 and {t.amount for t in rep.transfers} == {F(7, 5)}
    assert set(rep.final.vertex_weights.values()) == {F(-3)}
    assert rep.final.total() == -12 and not rep.audit.ambiguous


@pytest.mark.parametrize("make", [cube, lambda: stacked_triangulation(4, 0)])
def test_discharge_cubic_graphs_move_nothing(make):
    g, emb = make()
    rep = discharge(g, emb)
    assert rep.transfers == [] and rep.final == rep.initial and rep.final.total() == -12


def test_report_is_json_ready():
    import json
    g, emb = icosahedron()
    text = json.dumps(discharge(g, emb).as_json())
    assert '"7/5"' in text


@settings(max_examples=30, deadline=None)
@given(st.integers(4, 120), st.integers(0, 10**6), st.integers(0, 15))
def test_conservation(n, seed, subdivisions):
    g, emb = stacked_triangulation(n, seed)
    if subdivisions:
        g, emb = subdivide(g, emb, min(subdivisions, g.m), seed)
    rep = discharge(g, emb)
    assert rep.initial.total() == rep.final.total() == -12 * rep.components
    assert not rep.audit.ambiguous

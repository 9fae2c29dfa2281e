import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclic_systole.hyptrig import DomainError
from cyclic_systole.models import (
    MAX_GENUS,
    AnglePair,
    ModelKind,
    angles,
    candidate_systole,
    circumradius_check,
    metrics,
    theorem_systole,
)

TABLE = {
    (ModelKind.P1, 4): 3.41464123,
    (ModelKind.P1, 5): 3.45497357,
    (ModelKind.P1, 6): 3.47667914,
    (ModelKind.P1, 7): 3.48969921,
    (ModelKind.P2, 7): 3.44730852,
    (ModelKind.P2, 8): 3.46473555,
    (ModelKind.P2, 9): 3.47691634,
    (ModelKind.P2, 10): 3.48576585,
}

genera = st.integers(2, MAX_GENUS)
kinds = st.sampled_from(list(ModelKind))


def test_parse_names():
    assert ModelKind.parse("P2*") is ModelKind.P2STAR
    assert ModelKind.parse("p2_star") is ModelKind.P2STAR
    assert ModelKind.parse(" p1 ") is ModelKind.P1
    with pytest.raises(ValueError):
        ModelKind.parse("p3")


def test_angle_pairs():
    ap = angles(ModelKind.P1, 4)
    assert ap.a == ap.b == pytest.approx(math.pi / 16)
    assert ap.sides == 16
    p2 = angles(ModelKind.P2, 7)
    assert p2.b == pytest.approx(2 * p2.a) and p2.sides == 30
    ps = angles(ModelKind.P2STAR, 7)
    assert ps.a == pytest.approx(p2.b) and ps.b == pytest.approx(p2.a) and ps.sides == 15


def test_genus_bounds():
    with pytest.raises(ValueError):
        angles(ModelKind.P1, 1)
    with pytest.raises(ValueError):
        angles(ModelKind.P1, MAX_GENUS + 1)


def test_metrics_rejects_non_hyperbolic_angles():
    with pytest.raises(DomainError):
        metrics(AnglePair(math.pi / 3, math.pi / 3, 2, ModelKind.P1))


@pytest.mark.parametrize("key,value", sorted(TABLE.items(), key=lambda kv: kv[0][1]))
def test_table_values(key, value):
    assert abs(candidate_systole(*key) - value) <= 5e-9


def test_metrics_values_p1_g4():
    m = metrics(angles(ModelKind.P1, 4))
    assert m.half_systole == pytest.approx(TABLE[(ModelKind.P1, 4)] / 2)
    assert m.dh == pytest.approx(m.de / 2)
    assert 0 < m.oh < m.oa


@settings(max_examples=300, deadline=None)
@given(kinds, genera)
def test_triangle_identities(kind, g):
    m = metrics(angles(kind, g))
    # right triangle OAD: cosh OA = cosh OD cosh AD
    assert m.cosh_oa == pytest.approx(m.cosh_od * m.cosh_ad, rel=1e-12)
    # DE is twice DH
    assert m.cosh_de == pytest.approx(2 * m.sinh_dh**2 + 1, rel=1e-12)
    # right triangle AHD
    assert m.cosh_ad == pytest.approx(m.cosh_ah * math.cosh(m.dh), rel=1e-12)
    assert math.acosh(m.cosh_ah) == pytest.approx(math.asinh(m.sinh_ah), rel=1e-9)


@settings(max_examples=300, deadline=None)
@given(kinds, genera)
def test_closed_forms_agree(kind, g):
    assert abs(candidate_systole(kind, g) - theorem_systole(kind, g)) <= 1e-12


@settings(max_examples=200, deadline=None)
@given(kinds, st.integers(2, 10**4))
def test_circumradius_is_hyperbolic(kind, g):
    ap = angles(kind, g)
    assert circumradius_check(ap) > 1
    assert math.acosh(circumradius_check(ap)) == pytest.approx(metrics(ap).oa)


def test_p2_and_p2star_share_the_candidate():
    for g in range(2, 50):
        assert candidate_systole(ModelKind.P2, g) == pytest.approx(
            candidate_systole(ModelKind.P2STAR, g), rel=1e-15
        )


def test_candidate_increases_towards_limit():
    vals = [candidate_systole(ModelKind.P1, g) for g in range(2, 200)]
    assert all(x < y for x, y in zip(vals, vals[1:]))
    assert vals[-1] < 2 * math.acosh(3)

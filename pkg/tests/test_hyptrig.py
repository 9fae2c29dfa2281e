import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclic_systole import hyptrig as T
from geometry_oracles import I, birectangle, lambert, triangle
from cyclic_systole.halfplane import angle_at, distance

lengths = st.floats(0.05, 2.5)
angles_open = st.floats(0.05, math.pi - 0.05)


def test_acosh_clamped_absorbs_rounding_only():
    assert T.acosh_clamped(1.0 - 1e-13) == 0.0
    assert T.acosh_clamped(1.0) == 0.0
    with pytest.raises(T.DomainError):
        T.acosh_clamped(0.999)


def test_cosh_double():
    for x in (0.0, 0.3, 2.0):
        assert T.cosh_double(x) == pytest.approx(math.cosh(2 * x), rel=1e-14)


def test_right_triangle_values():
    c = T.right_triangle_hypotenuse(1.0, 1.0)
    assert math.cosh(c) == pytest.approx(math.cosh(1.0) ** 2)
    assert T.right_triangle_hypotenuse(0.0, 0.7) == pytest.approx(0.7)
    # isosceles right triangle: the two acute angles agree
    assert T.right_triangle_angle(1.0, c) == pytest.approx(math.asin(math.sinh(1) / math.sinh(c)))


def test_right_triangle_rejects_leg_longer_than_hypotenuse():
    with pytest.raises(T.DomainError):
        T.right_triangle_angle(2.0, 1.0)
    with pytest.raises(T.DomainError):
        T.right_triangle_hypotenuse(-1.0, 1.0)


def test_cosine_law_degenerate_angles():
    assert T.triangle_cosine_law(1.0, 0.4, 0.0) == pytest.approx(0.6)
    assert T.triangle_cosine_law(1.0, 0.4, math.pi) == pytest.approx(1.4)


def test_sine_law_rejects_bad_angles():
    with pytest.raises(T.DomainError):
        T.triangle_sine_law(1.0, 0.0, 1.0)


def test_trirectangle_from_angle_rejects_obtuse():
    with pytest.raises(T.DomainError):
        T.trirectangle_alpha_from_angle(1.0, 2.0)
    with pytest.raises(T.DomainError):
        T.trirectangle_alpha_from_angle(0.0, 1.0)


def test_birectangle_base_examples():
    # symmetric case: the closed form and its inverse agree
    d = T.birectangle_base(2.0, math.pi / 3, math.pi / 3)
    assert d == pytest.approx(1.5975477667, abs=1e-9)
    with pytest.raises(T.DomainError):
        T.birectangle_base(0.0, 1.0, 1.0)
    with pytest.raises(T.DomainError):
        T.birectangle_base(1.0, 0.0, 1.0)


def test_birectangle_base_nonexistent_quadrilateral():
    # sin a sin b cosh c - cos a cos b = 0.398 < 1: no such figure
    with pytest.raises(T.DomainError):
        T.birectangle_base(1.5, 0.4, 1.1)


def test_birectangle_right_angles_give_rectangle_limit():
    # with both top angles right the base equals the top side
    assert T.birectangle_base(1.3, math.pi / 2, math.pi / 2) == pytest.approx(1.3)


def test_birectangle_side_requires_positive_base():
    with pytest.raises(T.DomainError):
        T.birectangle_side(1.0, 1.0, 0.0)


@settings(max_examples=200, deadline=None)
@given(lengths, lengths, angles_open)
def test_cosine_law_matches_construction(a, b, C):
    p, q = triangle(a, b, C)
    assert T.triangle_cosine_law(a, b, C) == pytest.approx(distance(p, q), rel=1e-10, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(lengths, lengths)
def test_right_triangle_relations_match_construction(a, b):
    p, q = triangle(a, b, math.pi / 2)
    c = distance(p, q)
    A = angle_at(q, I, p)  # opposite the leg a
    B = angle_at(p, I, q)
    assert T.right_triangle_hypotenuse(a, b) == pytest.approx(c, rel=1e-10)
    assert T.right_triangle_angle(a, c) == pytest.approx(A, rel=1e-9)
    assert T.right_triangle_cos_angle(a, B) == pytest.approx(math.cos(A), rel=1e-9, abs=1e-12)
    assert T.triangle_sine_law(a, A, B) == pytest.approx(b, rel=1e-9)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.05, 1.2), st.floats(0.05, 1.2))
def test_trirectangle_relations_match_construction(a, b):
    if math.sinh(a) * math.sinh(b) >= 0.95:
        return
    L = lambert(a, b)
    assert T.trirectangle_a(L["alpha"], L["phi"]) == pytest.approx(a, rel=1e-9)
    assert T.trirectangle_alpha(a, L["beta"]) == pytest.approx(L["alpha"], rel=1e-10)
    assert T.trirectangle_alpha_from_angle(b, L["phi"]) == pytest.approx(L["alpha"], rel=1e-9)


@settings(max_examples=200, deadline=None)
@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(0.05, 3))
def test_birectangle_diagonal_with_signed_sides(a, b, d):
    assert T.birectangle_diagonal(a, b, d) == pytest.approx(
        birectangle(a, b, d)["c"], rel=1e-10, abs=1e-12
    )


@settings(max_examples=200, deadline=None)
@given(st.floats(0.05, 2), st.floats(0.05, 2), st.floats(0.05, 3))
def test_birectangle_angle_forms_invert_the_construction(a, b, d):
    B = birectangle(a, b, d)
    assert T.birectangle_side(B["alpha"], B["beta"], d) == pytest.approx(a, rel=1e-9)
    assert T.birectangle_side(B["beta"], B["alpha"], d) == pytest.approx(b, rel=1e-9)
    assert T.birectangle_base(B["c"], B["alpha"], B["beta"]) == pytest.approx(d, rel=1e-9)


@settings(max_examples=100, deadline=None)
@given(lengths)
def test_cosh_double_matches_library(x):
    assert T.cosh_double(x) == pytest.approx(math.cosh(2 * x), rel=1e-13)

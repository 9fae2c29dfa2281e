"""Closed-form hyperbolic trigonometry (curvature -1).

Angles are radians, lengths are hyperbolic lengths.  Every function is a
direct evaluation of one classical relation; the labelling conventions for
each figure are stated in the function docstrings.

Inverse hyperbolic cosines go through :func:`acosh_clamped`, which absorbs
rounding just below 1 and rejects anything further out.
"""

from __future__ import annotations

import math

__all__ = [
    "DomainError",
    "ACOSH_SLACK",
    "acosh_clamped",
    "cosh_double",
    "right_triangle_hypotenuse",
    "right_triangle_angle",
    "right_triangle_cos_angle",
    "triangle_cosine_law",
    "triangle_sine_law",
    "trirectangle_a",
    "trirectangle_alpha",
    "trirectangle_alpha_from_angle",
    "birectangle_diagonal",
    "birectangle_base",
    "birectangle_side",
]

# arguments in [1 - ACOSH_SLACK, 1) are rounding noise around a zero length
ACOSH_SLACK = 1e-12


class DomainError(ValueError):
    """An inverse function was asked for a value outside its range.

    Geometrically this means the requested figure does not exist.
    """


def acosh_clamped(x: float) -> float:
    if x >= 1.0:
        return math.acosh(x)
    if x >= 1.0 - ACOSH_SLACK:
        return 0.0
    raise DomainError(f"arccosh argument {x!r} < 1")


def _asin_checked(x: float) -> float:
    if abs(x) > 1.0:
        if abs(x) <= 1.0 + ACOSH_SLACK:
            return math.copysign(math.pi / 2, x)
        raise DomainError(f"arcsin argument {x!r} outside [-1, 1]")
    return math.asin(x)


def cosh_double(x: float) -> float:
    """cosh(2x) evaluated as 2 cosh^2 x - 1."""
    c = math.cosh(x)
    return 2.0 * c * c - 1.0


def right_triangle_hypotenuse(a: float, b: float) -> float:
    """Hypotenuse of a right triangle with legs ``a`` and ``b``.

    cosh c = cosh a cosh b.
    """
    if a < 0 or b < 0:
        raise DomainError("legs must be non-negative")
    return acosh_clamped(math.cosh(a) * math.cosh(b))


def right_triangle_angle(a: float, c: float) -> float:
    """Angle opposite the leg ``a`` in a right triangle with hypotenuse ``c``.

    sinh a = sin(alpha) sinh c.
    """
    if not 0 < a <= c:
        raise DomainError("need 0 < a <= c")
    return _asin_checked(math.sinh(a) / math.sinh(c))


def right_triangle_cos_angle(a: float, beta: float) -> float:
    """cos(alpha) = cosh a sin(beta), with ``alpha`` opposite leg ``a`` and
    ``beta`` the other acute angle."""
    return math.cosh(a) * math.sin(beta)


def triangle_cosine_law(a: float, b: float, C: float) -> float:
    """Side opposite the angle ``C`` enclosed by sides ``a`` and ``b``."""
    if a < 0 or b < 0:
        raise DomainError("sides must be non-negative")
    x = -math.sinh(a) * math.sinh(b) * math.cos(C) + math.cosh(a) * math.cosh(b)
    return acosh_clamped(x)


def triangle_sine_law(a: float, A: float, B: float) -> float:
    """Side ``b`` opposite ``B`` given side ``a`` opposite ``A``."""
    if a <= 0 or not (0 < A < math.pi and 0 < B < math.pi):
        raise DomainError("need a > 0 and angles in (0, pi)")
    return math.asinh(math.sinh(a) * math.sin(B) / math.sin(A))


# Trirectangle (Lambert quadrilateral) labelling: the sides a, b meet at the
# right-angled vertex opposite the acute angle phi; alpha is the side opposite
# a and beta the side opposite b (both alpha and beta end at the phi vertex).


def trirectangle_a(alpha: float, phi: float) -> float:
    """cosh a = cosh(alpha) sin(phi)."""
    return acosh_clamped(math.cosh(alpha) * math.sin(phi))


def trirectangle_alpha(a: float, beta: float) -> float:
    """sinh(alpha) = sinh a cosh(beta)."""
    return math.asinh(math.sinh(a) * math.cosh(beta))


def trirectangle_alpha_from_angle(b: float, phi: float) -> float:
    """sinh(alpha) = coth b cot(phi).

    Negative results mean the angle is obtuse (no such trirectangle).
    """
    if b <= 0:
        raise DomainError("b must be positive")
    s = 1.0 / (math.tanh(b) * math.tan(phi))
    if s < 0:
        raise DomainError("phi must be acute")
    return math.asinh(s)


# Birectangle: quadrilateral with right angles at both ends of the base d.
# a and b are the sides standing on the base, c is the side opposite the base,
# alpha and beta are the angles where c meets a and b respectively.


def birectangle_diagonal(a: float, b: float, d: float) -> float:
    """Top side ``c`` from the two standing sides and the base.

    cosh c = cosh d cosh a cosh b - sinh a sinh b.  Signed a, b are allowed:
    a negative side points to the other side of the base line.
    """
    x = math.cosh(d) * math.cosh(a) * math.cosh(b) - math.sinh(a) * math.sinh(b)
    return acosh_clamped(x)


def birectangle_base(c: float, alpha: float, beta: float) -> float:
    """Base ``d`` from the top side and its two angles.

    cosh d = sin(alpha) sin(beta) cosh c - cos(alpha) cos(beta).
    """
    if c <= 0:
        raise DomainError("c must be positive")
    if not (0 < alpha < math.pi and 0 < beta < math.pi):
        raise DomainError("angles must lie in (0, pi)")
    x = math.sin(alpha) * math.sin(beta) * math.cosh(c) - math.cos(alpha) * math.cos(beta)
    return acosh_clamped(x)


def birectangle_side(alpha: float, beta: float, d: float) -> float:
    """Signed length of the standing side adjacent to ``alpha``.

    sinh a = (cos(beta) + cos(alpha) cosh d) / (sin(alpha) sinh d).
    """
    if d <= 0:
        raise DomainError("base must be positive")
    s = (math.cos(beta) + math.cos(alpha) * math.cosh(d)) / (math.sin(alpha) * math.sinh(d))
    return math.asinh(s)

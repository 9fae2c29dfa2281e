"""Upper half-plane model of the hyperbolic plane.

Points are :class:`HPoint` (``im > 0``), isometries are real Möbius maps
with positive determinant, and geodesics are either half-circles centred on
the real axis or vertical lines.  Ideal points are plain floats, with
``math.inf`` standing for the point at infinity.

Besides the basic metric operations this module carries an explicit
construction of the two-right-angle quadrilateral used as an independent
check of :func:`cyclic_systole.hyptrig.birectangle_base`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "GeometryError",
    "PoleError",
    "HPoint",
    "MoebiusMap",
    "Geodesic",
    "distance",
    "apply",
    "angle_at",
    "point_along",
    "to_disk",
    "from_disk",
    "cross_ratio",
    "point_to_geodesic_distance",
    "foot_of_perpendicular",
    "common_perpendicular",
    "common_perpendicular_length",
    "BirectangleConstruction",
    "birectangle_construction",
    "birectangle_base_oracle",
]

MIN_IM = 1e-300


class GeometryError(ValueError):
    """A requested configuration does not exist."""


class PoleError(GeometryError):
    """A Möbius map sent a finite point to infinity."""


@dataclass(frozen=True)
class HPoint:
    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise GeometryError(f"non-finite point ({self.re}, {self.im})")
        if self.im < MIN_IM:
            raise GeometryError(f"point {self.re}+{self.im}i is not in the upper half-plane")

    @classmethod
    def from_complex(cls, z: complex) -> "HPoint":
        return cls(z.real, z.imag)

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class MoebiusMap:
    """z -> (m11 z + m12) / (m21 z + m22), determinant > 0."""

    m11: float
    m12: float
    m21: float
    m22: float

    def __post_init__(self):
        if not self.det > 0:
            raise GeometryError(f"determinant {self.det} is not positive")

    @property
    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    @property
    def trace(self) -> float:
        return self.m11 + self.m22

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_array(cls, m) -> "MoebiusMap":
        m = np.asarray(m, dtype=float)
        return cls(float(m[0, 0]), float(m[0, 1]), float(m[1, 0]), float(m[1, 1]))

    def as_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])

    @classmethod
    def translation_up(cls, t: float) -> "MoebiusMap":
        """Translation by ``t`` along the imaginary axis (i -> i e^t)."""
        return cls(math.exp(t / 2), 0.0, 0.0, math.exp(-t / 2))

    @classmethod
    def rotation(cls, center: HPoint, theta: float) -> "MoebiusMap":
        """Counter-clockwise rotation by ``theta`` about ``center``."""
        c, s = math.cos(theta / 2), math.sin(theta / 2)
        rot = cls(c, s, -s, c)
        to_i = cls(1.0, -center.re, 0.0, center.im)
        return to_i.inverse() @ rot @ to_i

    def normalized(self) -> "MoebiusMap":
        k = 1.0 / math.sqrt(self.det)
        return MoebiusMap(self.m11 * k, self.m12 * k, self.m21 * k, self.m22 * k)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.m22, -self.m12, -self.m21, self.m11)

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return MoebiusMap(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def __call__(self, p: HPoint) -> HPoint:
        return apply(self, p)

    def apply_complex(self, z: complex) -> complex:
        den = self.m21 * z + self.m22
        if den == 0:
            raise PoleError("image is the point at infinity")
        return (self.m11 * z + self.m12) / den

    def apply_boundary(self, x: float) -> float:
        """Action on the ideal boundary R u {inf}."""
        if math.isinf(x):
            return math.inf if self.m21 == 0 else self.m11 / self.m21
        den = self.m21 * x + self.m22
        if den == 0:
            return math.inf
        return (self.m11 * x + self.m12) / den

    def fixed_points(self) -> tuple[float, float] | None:
        """Ideal fixed points (sorted) of a hyperbolic map, else None."""
        m = self.normalized()
        tr = m.trace
        if abs(tr) <= 2:
            return None
        if m.m21 == 0:
            return tuple(sorted((m.m12 / (m.m22 - m.m11), math.inf)))
        disc = math.sqrt(tr * tr - 4)
        base = (m.m11 - m.m22) / (2 * m.m21)
        half = disc / (2 * abs(m.m21))
        return (base - half, base + half)


def apply(m: MoebiusMap, p: HPoint) -> HPoint:
    w = m.apply_complex(p.z)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise PoleError("image is not finite")
    return HPoint(w.real, w.imag)


def distance(p: HPoint, q: HPoint) -> float:
    # 2 asinh(|p-q| / (2 sqrt(y y'))) == arccosh(1 + |p-q|^2 / (2 y y'))
    return 2.0 * math.asinh(abs(p.z - q.z) / (2.0 * math.sqrt(p.im * q.im)))


def to_disk(p: HPoint) -> complex:
    """Cayley map to the Poincaré disk (i -> 0)."""
    z = p.z
    return (z - 1j) / (z + 1j)


def from_disk(w: complex) -> HPoint:
    if abs(w) >= 1:
        raise GeometryError("point is not inside the unit disk")
    return HPoint.from_complex(1j * (1 + w) / (1 - w))


def _disk_direction(p: HPoint, q: HPoint) -> float:
    """Argument of the initial direction of the geodesic ray p -> q, measured
    in the disk chart centred at p."""
    w = to_disk(HPoint((q.re - p.re) / p.im, q.im / p.im))
    return cmath.phase(w)


def angle_at(p: HPoint, q: HPoint, r: HPoint) -> float:
    """Angle in [0, pi] at ``p`` between the geodesic rays towards ``q`` and ``r``."""
    d = abs(_disk_direction(p, q) - _disk_direction(p, r)) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


def point_along(p: HPoint, q: HPoint, t: float) -> HPoint:
    """Point at signed distance ``t`` from ``p`` on the geodesic through ``q``."""
    theta = _disk_direction(p, q)
    w = math.tanh(t / 2) * cmath.exp(1j * theta)
    local = from_disk(w)
    return HPoint(p.re + p.im * local.re, p.im * local.im)


@dataclass(frozen=True)
class Geodesic:
    """Half-circle (``center``, ``radius``) or vertical line at ``foot``."""

    center: float | None = None
    radius: float | None = None
    foot: float | None = None

    def __post_init__(self):
        if self.foot is None:
            if self.center is None or self.radius is None or not self.radius > 0:
                raise GeometryError("circular geodesic needs center and positive radius")
        elif self.center is not None or self.radius is not None:
            raise GeometryError("a geodesic is either circular or vertical")

    @property
    def is_vertical(self) -> bool:
        return self.foot is not None

    @classmethod
    def vertical(cls, foot: float) -> "Geodesic":
        return cls(foot=float(foot))

    @classmethod
    def circle(cls, center: float, radius: float) -> "Geodesic":
        return cls(center=float(center), radius=float(radius))

    @classmethod
    def from_endpoints(cls, u: float, v: float) -> "Geodesic":
        if math.isinf(u) and math.isinf(v):
            raise GeometryError("both endpoints at infinity")
        if math.isinf(u):
            return cls.vertical(v)
        if math.isinf(v):
            return cls.vertical(u)
        if u == v:
            raise GeometryError("degenerate geodesic")
        return cls.circle((u + v) / 2, abs(v - u) / 2)

    @classmethod
    def through(cls, p: HPoint, q: HPoint) -> "Geodesic":
        dx = p.re - q.re
        scale = abs(p.re) + abs(q.re) + p.im + q.im
        if abs(dx) <= 1e-15 * scale:
            return cls.vertical((p.re + q.re) / 2)
        c = (abs(p.z) ** 2 - abs(q.z) ** 2) / (2 * dx)
        return cls.circle(c, abs(p.z - c))

    def endpoints(self) -> tuple[float, float]:
        """Ideal endpoints, ascending; a vertical line ends at (foot, inf)."""
        if self.is_vertical:
            return (self.foot, math.inf)
        return (self.center - self.radius, self.center + self.radius)

    def image(self, m: MoebiusMap) -> "Geodesic":
        u, v = self.endpoints()
        return Geodesic.from_endpoints(m.apply_boundary(u), m.apply_boundary(v))

    def to_axis(self) -> MoebiusMap:
        """Isometry sending this geodesic to the imaginary axis (lower end to 0)."""
        if self.is_vertical:
            return MoebiusMap(1.0, -self.foot, 0.0, 1.0)
        u, v = self.endpoints()
        return MoebiusMap(1.0, -u, -1.0, v)


def cross_ratio(z1: float, z2: float, z3: float, z4: float) -> float:
    """(z3 - z1)(z4 - z2) / ((z3 - z2)(z4 - z1)) on R u {inf}."""
    num = [(z3, z1), (z4, z2)]
    den = [(z3, z2), (z4, z1)]
    inf_at = [z for z in (z1, z2, z3, z4) if math.isinf(z)]
    if len(inf_at) > 1:
        raise GeometryError("more than one endpoint at infinity")

    def prod(pairs):
        out = 1.0
        for x, y in pairs:
            if math.isinf(x) or math.isinf(y):
                continue
            out *= x - y
        return out

    d = prod(den)
    if d == 0:
        raise GeometryError("coincident endpoints")
    return prod(num) / d


def point_to_geodesic_distance(p: HPoint, g: Geodesic) -> float:
    if g.is_vertical:
        return math.asinh(abs(p.re - g.foot) / p.im)
    s = abs(abs(p.z - g.center) ** 2 - g.radius**2) / (2 * g.radius * p.im)
    return math.asinh(s)


def foot_of_perpendicular(p: HPoint, g: Geodesic) -> HPoint:
    m = g.to_axis()
    q = m(p)
    return m.inverse()(HPoint(0.0, abs(q.z)))


def common_perpendicular_length(g1: Geodesic, g2: Geodesic) -> float:
    """Length of the common perpendicular of two ultraparallel geodesics.

    With endpoints (u1, v1), (u2, v2) and lam = [u1, v1; u2, v2] the
    distance satisfies cosh d = |1 + lam| / |1 - lam|; lam > 0 exactly when
    the endpoint pairs do not interleave.
    """
    u1, v1 = g1.endpoints()
    u2, v2 = g2.endpoints()
    if len({u1, v1, u2, v2}) < 4:
        raise GeometryError("geodesics are asymptotic")
    lam = cross_ratio(u1, v1, u2, v2)
    if lam <= 0:
        raise GeometryError("geodesics intersect")
    return math.acosh((1 + lam) / abs(1 - lam))


def common_perpendicular(g1: Geodesic, g2: Geodesic) -> tuple[HPoint, HPoint]:
    """Feet of the common perpendicular, on ``g1`` and on ``g2``."""
    common_perpendicular_length(g1, g2)  # existence gate
    m = g1.to_axis()
    p, q = (m.apply_boundary(x) for x in g2.endpoints())
    if math.isinf(p) or math.isinf(q):
        raise GeometryError("geodesics are asymptotic")
    pq = p * q
    x = 2 * pq / (p + q)
    y = math.sqrt(max(pq - x * x, 0.0))
    inv = m.inverse()
    return inv(HPoint(0.0, math.sqrt(pq))), inv(HPoint(x, y))


class BirectangleConstruction(NamedTuple):
    """Intermediate objects of the half-plane construction of a quadrilateral
    T1 R1 R2 T2 with right angles at R1, R2, ``T1 = i`` and ``T2 = i e^c``."""

    small_center: float  # center of the geodesic through T1
    small_radius: float
    big_center: float  # center of the geodesic through T2
    big_radius: float
    normalizer: MoebiusMap  # z -> -1/(z - (big_center - big_radius))
    e_image: float
    f_image: float
    c_image: float
    d_image: float
    p: float  # center of the image half-circle C'D'
    base: float


def birectangle_construction(c: float, alpha: float, beta: float) -> BirectangleConstruction:
    if not c > 0:
        raise GeometryError("c must be positive")
    if not (0 < alpha < math.pi and 0 < beta < math.pi):
        raise GeometryError("angles must lie in (0, pi)")
    if alpha + beta >= math.pi:
        raise GeometryError("angle sum alpha + beta must be below pi")
    A = math.cos(alpha) / math.sin(alpha)
    r = 1.0 / math.sin(alpha)
    ec = math.exp(c)
    B = -ec * math.cos(beta) / math.sin(beta)
    R = ec / math.sin(beta)
    phi = MoebiusMap(0.0, -1.0, 1.0, -(B - R))
    e_img = phi.apply_boundary(B - R)
    f_img = phi.apply_boundary(B + R)
    c_img = phi.apply_boundary(A - r)
    d_img = phi.apply_boundary(A + r)
    P = (c_img + d_img) / 2
    rho = abs(c_img - d_img) / 2
    ratio = abs(f_img - P) / rho
    if ratio <= 1:
        raise GeometryError("the two sides meet; no common perpendicular")
    return BirectangleConstruction(A, r, B, R, phi, e_img, f_img, c_img, d_img, P, math.acosh(ratio))


def birectangle_base_oracle(c: float, alpha: float, beta: float) -> float:
    """Base of the two-right-angle quadrilateral, measured in the half-plane.

    Normalises the far side to a vertical line and reads the base off as
    arccosh of |F'P| / |PR1'| (the secant of the angle at F').
    """
    return birectangle_construction(c, alpha, beta).base

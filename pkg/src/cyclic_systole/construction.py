"""Explicit placement of a model polygon and its neighbours in the half-plane.

The polygon centre O sits at ``i`` and the chosen vertex A straight above it,
so the diameter AA' is the imaginary axis.  Vertices are numbered
counter-clockwise starting from A; edge ``k`` joins vertices ``k`` and
``k + 1``.  Neighbouring tiles are reached by rotations about vertices and
half-turns about edge midpoints, both of which preserve the tessellation.

Everything here is measured, not derived: the lengths returned are distances
between constructed points and geodesics, to be compared against the closed
forms used by :mod:`cyclic_systole.verifier`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .halfplane import (
    Geodesic,
    HPoint,
    MoebiusMap,
    angle_at,
    common_perpendicular,
    common_perpendicular_length,
    distance,
    point_along,
    point_to_geodesic_distance,
)
from .models import AnglePair, metrics

__all__ = ["PolygonFrame", "X3Configuration", "side_of"]


def side_of(g: Geodesic, p: HPoint) -> int:
    """+1 / -1 for the two sides of ``g``, 0 when ``p`` lies on it."""
    if g.is_vertical:
        s = p.re - g.foot
        scale = abs(g.foot) + p.im
    else:
        s = abs(p.z - g.center) ** 2 - g.radius**2
        scale = g.radius**2
    if abs(s) <= 1e-12 * scale:
        return 0
    return 1 if s > 0 else -1


def _turn_sign(center: HPoint, start: HPoint, target: HPoint, angle: float) -> int:
    """Sign of the rotation about ``center`` by ``angle`` that carries the ray
    towards ``start`` onto the ray towards ``target``."""
    for s in (1, -1):
        img = MoebiusMap.rotation(center, s * angle)(start)
        if angle_at(center, img, target) < 1e-7:
            return s
    raise ValueError("no rotation by the given angle aligns the rays")


@dataclass(frozen=True)
class X3Configuration:
    """Quadrilateral A O' R2 R1: R1 on the diameter AA', R2 on the diameter
    of the tile centred at O' through its vertex C6."""

    A: HPoint
    O: HPoint
    O_prime: HPoint
    C6: HPoint
    R1: HPoint
    R2: HPoint
    base: float
    ar1: float  # signed, positive towards O
    c6r2: float  # signed, negative when R2 lies between C6 and O'


class PolygonFrame:
    def __init__(self, ap: AnglePair):
        self.ap = ap
        self.m = metrics(ap)
        self.n = ap.sides
        self.O = HPoint(0.0, 1.0)
        self.A = HPoint(0.0, math.exp(self.m.oa))
        self.H = HPoint(0.0, math.exp(self.m.oh))
        self.diameter = Geodesic.vertical(0.0)

    def rotation(self, theta: float) -> MoebiusMap:
        return MoebiusMap.rotation(self.O, theta)

    def vertex(self, k: int) -> HPoint:
        return self.rotation(2 * k * self.ap.a)(self.A)

    def midpoint(self, k: int) -> HPoint:
        m0 = HPoint(0.0, math.exp(self.m.od))
        return self.rotation((2 * k + 1) * self.ap.a)(m0)

    def edge(self, k: int) -> Geodesic:
        return Geodesic.through(self.vertex(k), self.vertex(k + 1))

    def half_turn(self, k: int) -> MoebiusMap:
        return MoebiusMap.rotation(self.midpoint(k), math.pi)

    @cached_property
    def _a_sign(self) -> int:
        # rotation about A taking the ray AO onto the edge A V1
        return _turn_sign(self.A, self.O, self.vertex(1), self.ap.b)

    def about_a(self, steps: float) -> MoebiusMap:
        """Rotation about A by ``steps`` half vertex angles, away from AO
        towards the edge A V1."""
        return MoebiusMap.rotation(self.A, self._a_sign * steps * self.ap.b)

    # measured counterparts of the closed-form checks

    def vertex_distance(self, k: int) -> float:
        return point_to_geodesic_distance(self.vertex(k), self.diameter)

    def edge_distance(self, ordinal: int) -> float | None:
        """Distance from the diameter line to the line of the ``ordinal``-th
        nearest edge, or None when the lines meet."""
        try:
            return common_perpendicular_length(self.diameter, self.edge(ordinal - 1))
        except ValueError:
            return None

    def oh_edge_distance(self, j: int) -> float:
        line = self.edge(0).image(self.about_a(2 * (j - 1)))
        return point_to_geodesic_distance(self.H, line)

    def nonadjacent_edge_distance(self) -> float:
        return common_perpendicular_length(self.edge(self.n - 1), self.edge(1))

    def b1c3_distance(self) -> float:
        b1 = self.vertex(1)
        s = _turn_sign(b1, self.A, self.vertex(2), 2 * self.ap.b)
        c3 = MoebiusMap.rotation(b1, s * 4 * self.ap.b)(self.A)
        return common_perpendicular_length(self.diameter, Geodesic.through(b1, c3))

    def c1c2_distance(self) -> float:
        c1 = self.vertex(2)
        s = _turn_sign(c1, self.O, self.vertex(1), self.ap.b)
        c2 = MoebiusMap.rotation(c1, s * 3 * self.ap.b)(self.O)
        return common_perpendicular_length(self.diameter, Geodesic.through(c1, c2))

    def center_edge_distance(self) -> float:
        return distance(self.O, self.midpoint(0))

    def neighbour_diameter(self) -> Geodesic:
        """Diameter B1B1' of the tile across the edge A V1."""
        o2 = self.half_turn(0)(self.O)
        return Geodesic.through(self.vertex(1), o2)

    def b1b1_distance(self) -> float:
        return common_perpendicular_length(self.diameter, self.neighbour_diameter())

    def h_to_b1b1(self) -> float:
        return point_to_geodesic_distance(self.H, self.neighbour_diameter())

    @cached_property
    def x3(self) -> X3Configuration:
        o_prime = self.about_a(4)(self.O)
        side_ao = Geodesic.through(self.A, o_prime)
        want = side_of(side_ao, self.O)
        for s in (1, -1):
            c6 = MoebiusMap.rotation(o_prime, s * 4 * self.ap.a)(self.A)
            if side_of(side_ao, c6) == want:
                break
        else:  # pragma: no cover
            raise ValueError("could not orient the X3 quadrilateral")
        line = Geodesic.through(o_prime, c6)
        r1, r2 = common_perpendicular(self.diameter, line)
        ar1 = self.m.oa - math.log(r1.im)
        o_r2 = distance(o_prime, r2)
        if o_r2 > 1e-12 and angle_at(o_prime, c6, r2) > math.pi / 2:
            o_r2 = -o_r2
        return X3Configuration(
            A=self.A,
            O=self.O,
            O_prime=o_prime,
            C6=c6,
            R1=r1,
            R2=r2,
            base=distance(r1, r2),
            ar1=ar1,
            c6r2=o_r2 - self.m.oa,
        )

    def x_pair_distance(self, t: float) -> float:
        """|x x'| with x on AO and x' on C6 O', both at distance t from
        their vertex."""
        cfg = self.x3
        x = point_along(self.A, self.O, t)
        xp = point_along(cfg.C6, cfg.O_prime, t)
        return distance(x, xp)

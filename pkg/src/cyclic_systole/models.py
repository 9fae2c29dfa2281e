"""The three polygon models and their closed-form lengths.

``P1`` is the regular 4g-gon with opposite sides glued (angle sum 2 pi),
``P2`` the regular (4g+2)-gon (angle sum 4 pi) and ``P2STAR`` the dual
region made of two regular (2g+1)-gons.  Each model is summarised by the
pair (a, b): ``a`` is the angle at the centre between a vertex and the
adjacent edge midpoint, ``b`` half the interior angle at a vertex.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

from .hyptrig import DomainError, acosh_clamped

__all__ = [
    "ModelKind",
    "AnglePair",
    "PolygonMetrics",
    "MAX_GENUS",
    "angles",
    "metrics",
    "candidate_systole",
    "theorem_systole",
    "circumradius_check",
]

MAX_GENUS = 10**6


class ModelKind(enum.Enum):
    P1 = "p1"
    P2 = "p2"
    P2STAR = "p2star"

    @classmethod
    def parse(cls, name: str) -> "ModelKind":
        key = name.strip().lower().replace("*", "star").replace("_", "")
        for kind in cls:
            if kind.value == key:
                return kind
        raise ValueError(f"unknown model {name!r}")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class AnglePair:
    a: float
    b: float
    genus: int
    kind: ModelKind

    @property
    def sides(self) -> int:
        """Vertex count of the regular polygon the angles describe
        (for P2STAR, one of the two lobes)."""
        return round(math.pi / self.a)


@lru_cache(maxsize=4096)
def angles(kind: ModelKind, genus: int) -> AnglePair:
    if genus < 2:
        raise ValueError(f"genus must be at least 2, got {genus}")
    if genus > MAX_GENUS:
        raise ValueError(f"genus above the supported cap {MAX_GENUS}")
    if kind is ModelKind.P1:
        a = b = math.pi / (4 * genus)
    elif kind is ModelKind.P2:
        a = math.pi / (4 * genus + 2)
        b = 2 * a
    elif kind is ModelKind.P2STAR:
        b = math.pi / (4 * genus + 2)
        a = 2 * b
    else:  # pragma: no cover
        raise ValueError(kind)
    return AnglePair(a, b, genus, kind)


@dataclass(frozen=True)
class PolygonMetrics:
    """Distances in the triangle O A D and around the candidate geodesic.

    O is the polygon centre, A a vertex, D the midpoint of an edge at A,
    E the midpoint of the other edge at A and H the point where DE crosses
    the diameter through A.
    """

    od: float
    ad: float
    oa: float
    dh: float
    de: float
    ah: float
    half_systole: float
    cosh_od: float
    cosh_ad: float
    cosh_oa: float
    sinh_dh: float
    cosh_de: float
    cosh_ah: float
    sinh_ah: float

    @property
    def oh(self) -> float:
        return self.oa - self.ah


@lru_cache(maxsize=4096)
def metrics(ap: AnglePair) -> PolygonMetrics:
    a, b = ap.a, ap.b
    gap = math.cos(a) ** 2 - math.sin(b) ** 2
    if gap <= 0:
        raise DomainError("cos^2 a must exceed sin^2 b")
    cosh_od = math.cos(b) / math.sin(a)
    cosh_ad = math.cos(a) / math.sin(b)
    cosh_oa = 1.0 / (math.tan(a) * math.tan(b))
    sinh_dh = math.sqrt(gap)
    cosh_de = 2 * gap + 1
    root = math.sqrt(math.cos(a) ** 2 + math.cos(b) ** 2)
    cosh_ah = math.cos(a) / (math.sin(b) * root)
    sinh_ah = math.sqrt(gap) / (math.tan(b) * root)
    de = acosh_clamped(cosh_de)
    return PolygonMetrics(
        od=acosh_clamped(cosh_od),
        ad=acosh_clamped(cosh_ad),
        oa=acosh_clamped(cosh_oa),
        dh=math.asinh(sinh_dh),
        de=de,
        ah=math.asinh(sinh_ah),
        half_systole=de,
        cosh_od=cosh_od,
        cosh_ad=cosh_ad,
        cosh_oa=cosh_oa,
        sinh_dh=sinh_dh,
        cosh_de=cosh_de,
        cosh_ah=cosh_ah,
        sinh_ah=sinh_ah,
    )


def candidate_systole(kind: ModelKind, genus: int) -> float:
    """Length 2 arccosh(1 + cos 2a + cos 2b) of the closed geodesic DEE'D'."""
    ap = angles(kind, genus)
    return 2 * acosh_clamped(1 + math.cos(2 * ap.a) + math.cos(2 * ap.b))


def theorem_systole(kind: ModelKind, genus: int) -> float:
    """The systole written directly in terms of the genus."""
    if kind is ModelKind.P1:
        return 2 * math.acosh(1 + 2 * math.cos(math.pi / (2 * genus)))
    t = math.pi / (2 * genus + 1)
    return 2 * math.acosh(1 + math.cos(t) + math.cos(2 * t))


def circumradius_check(ap: AnglePair) -> float:
    """cosh of the circumradius, cot a cot b; exceeds 1 for a hyperbolic polygon."""
    return 1.0 / (math.tan(ap.a) * math.tan(ap.b))

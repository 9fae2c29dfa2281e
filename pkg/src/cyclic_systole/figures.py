"""Static SVG pictures in the Poincaré disk.

Two figures are available: ``polygon`` (the fundamental polygon, the dual
region around a vertex, the diameter AA' and the candidate geodesic) and
``ball`` (the ball of radius h about H together with every translate of it
that reaches the polygon).  Geodesic segments are drawn as polylines of
points sampled along the segment, which keeps the code free of arc-flag
bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .construction import PolygonFrame
from .halfplane import HPoint, MoebiusMap, distance, point_along, to_disk
from .models import ModelKind, angles

__all__ = ["FIGURES", "FigureInfo", "render", "polygon_figure", "ball_figure", "disk_circle"]

SIZE = 640
_SAMPLES = 48


@dataclass(frozen=True)
class FigureInfo:
    figure: str
    kind: ModelKind
    genus: int
    components: int = 0
    min_gap: float = math.nan  # smallest hyperbolic gap between ball translates


def _xy(w: complex) -> tuple[float, float]:
    half = SIZE / 2
    return half + 0.95 * half * w.real, half - 0.95 * half * w.imag


def _segment(p: HPoint, q: HPoint) -> list[complex]:
    d = distance(p, q)
    if d == 0:
        return [to_disk(p)]
    return [to_disk(point_along(p, q, d * i / _SAMPLES)) for i in range(_SAMPLES + 1)]


def _polyline(points: list[complex], cls: str) -> str:
    pts = " ".join("%.3f,%.3f" % _xy(w) for w in points)
    return f'<polyline class="{cls}" points="{pts}"/>'


def _closed_path(vertices: list[HPoint], cls: str) -> str:
    pts: list[complex] = []
    for p, q in zip(vertices, vertices[1:] + vertices[:1]):
        pts.extend(_segment(p, q)[:-1])
    return _polyline(pts + pts[:1], cls)


def disk_circle(center: HPoint, radius: float) -> tuple[complex, float]:
    """Euclidean centre and radius in the disk of the hyperbolic circle."""
    w0 = to_disk(center)
    t = math.tanh(radius / 2)
    r2 = abs(w0) ** 2
    den = 1 - t * t * r2
    return w0 * (1 - t * t) / den, t * (1 - r2) / den


def _circle(center: HPoint, radius: float, cls: str) -> str:
    c, r = disk_circle(center, radius)
    x, y = _xy(c)
    return f'<circle class="{cls}" cx="{x:.3f}" cy="{y:.3f}" r="{0.95 * SIZE / 2 * r:.3f}"/>'


def _dot(p: HPoint, label: str) -> str:
    x, y = _xy(to_disk(p))
    return (
        f'<circle class="pt" cx="{x:.3f}" cy="{y:.3f}" r="2.5"/>'
        f'<text x="{x + 5:.1f}" y="{y - 5:.1f}">{escape(label)}</text>'
    )


def _document(title: str, body: list[str]) -> str:
    style = (
        ".disk{fill:none;stroke:#888;stroke-width:1}"
        ".poly{fill:#f3f1ea;stroke:#222;stroke-width:1.5}"
        ".dual{fill:none;stroke:#3a6ea5;stroke-width:1;stroke-dasharray:5 3}"
        ".diam{fill:none;stroke:#777;stroke-width:1}"
        ".geo{fill:none;stroke:#c0392b;stroke-width:2.5}"
        ".ball{fill:#e67e2233;stroke:#d35400;stroke-width:1}"
        ".ball0{fill:#27ae6044;stroke:#1e8449;stroke-width:1.5}"
        ".pt{fill:#111}"
        "text{font:11px sans-serif}"
    )
    half = SIZE / 2
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">\n<title>{escape(title)}</title>\n<style>{style}</style>\n'
        f'<circle class="disk" cx="{half}" cy="{half}" r="{0.95 * half}"/>\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def _outline(frame: PolygonFrame) -> list[HPoint]:
    return [frame.vertex(k) for k in range(frame.n)]


def _dual_region(frame: PolygonFrame) -> list[list[HPoint]]:
    """Tiles of the dual tessellation centred at A (and, when a vertex carries
    fewer than 2g+2 polygons, also at its neighbour V1)."""
    ap = frame.ap
    around = round(math.pi / ap.b)
    lobes = []
    centres = [frame.A]
    if ap.kind is not ModelKind.P1:
        centres.append(frame.vertex(1))
    for c in centres:
        lobes.append(
            [MoebiusMap.rotation(c, 2 * ap.b * j)(frame.O) for j in range(around)]
        )
    return lobes


def polygon_figure(kind: ModelKind, genus: int) -> tuple[str, FigureInfo]:
    frame = PolygonFrame(angles(kind, genus))
    body = [_closed_path(_outline(frame), "poly")]
    for lobe in _dual_region(frame):
        body.append(_closed_path(lobe, "dual"))
    a_opp = frame.rotation(math.pi)(frame.A)
    body.append(_polyline(_segment(frame.A, a_opp), "diam"))
    d = frame.midpoint(frame.n - 1)
    e = frame.midpoint(0)
    half_turn = frame.rotation(math.pi)
    body.append(_polyline(_segment(d, e), "geo"))
    body.append(_polyline(_segment(half_turn(e), half_turn(d)), "geo"))
    for p, name in [(frame.O, "O"), (frame.A, "A"), (frame.H, "H"), (d, "D"), (e, "E"),
                    (half_turn(d), "D'"), (half_turn(e), "E'")]:
        body.append(_dot(p, name))
    title = f"{kind.value} genus {genus}: polygon, dual region, diameter, candidate geodesic"
    return _document(title, body), FigureInfo("polygon", kind, genus)


def ball_figure(kind: ModelKind, genus: int, max_elements: int | None = None) -> tuple[str, FigureInfo]:
    """The ball B(H, h) and its translates that come within reach of the
    polygon.  The translates are pairwise disjoint exactly when the ball
    embeds; the smallest gap is reported (zero means tangency)."""
    from .fuchsian import DEFAULT_MAX_ELEMENTS, build_generators, enumerate_batch

    kind = ModelKind(kind)
    if kind is ModelKind.P2STAR:
        raise ValueError("the ball figure is drawn for p1 or p2")
    gs = build_generators(kind, genus)
    frame = gs.frame
    h = frame.m.de
    reach = frame.m.oa + frame.m.oh + 2 * h
    batch = enumerate_batch(gs, reach, max_elements or DEFAULT_MAX_ELEMENTS)
    hz = frame.H.z
    centres = []
    for m in batch.matrices:
        w = (m[0, 0] * hz + m[0, 1]) / (m[1, 0] * hz + m[1, 1])
        p = HPoint(w.real, w.imag)
        if distance(p, frame.O) <= frame.m.oa + h:
            centres.append(p)
    gap = math.inf
    pts = np.array([[p.re, p.im] for p in centres])
    for i in range(len(centres)):
        dx = pts[i + 1:, 0] - pts[i, 0]
        dy2 = (pts[i + 1:, 1] - pts[i, 1]) ** 2
        ch = 1 + (dx * dx + dy2) / (2 * pts[i, 1] * pts[i + 1:, 1])
        if len(ch):
            gap = min(gap, float(np.arccosh(ch.min())) - 2 * h)
    body = [_closed_path(_outline(frame), "poly")]
    a_opp = frame.rotation(math.pi)(frame.A)
    body.append(_polyline(_segment(frame.A, a_opp), "diam"))
    for i, p in enumerate(centres):
        body.append(_circle(p, h, "ball0" if i == 0 else "ball"))
    body.append(_dot(frame.H, "H"))
    body.append(_dot(frame.O, "O"))
    title = f"{kind.value} genus {genus}: translates of B(H, h), smallest gap {gap:.3g}"
    info = FigureInfo("ball", kind, genus, components=len(centres), min_gap=gap)
    return _document(title, body), info


FIGURES = {"polygon": polygon_figure, "ball": ball_figure}


def render(figure: str, kind: ModelKind, genus: int, **kw) -> tuple[str, FigureInfo]:
    if figure not in FIGURES:
        raise KeyError(f"unknown figure {figure!r}; choose from {sorted(FIGURES)}")
    return FIGURES[figure](kind, genus, **kw)

"""Signed-margin checks for the numeric inequalities behind the systole bound.

Every check compares a closed-form length (as a cosh, a sinh, or a plain
length) against the same function of h, the half-length of the candidate
systole.  The margin is sign-adjusted so that a positive value means the
claimed inequality holds.  A margin inside the guard band is reported as
INDETERMINATE rather than rounded either way.

Each check is asserted only from the genus where the underlying lemma
applies to that model (see ``THRESHOLDS``); smaller genera are evaluated and
reported as UNASSERTED.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import mpmath

from .construction import PolygonFrame
from .halfplane import GeometryError
from .hyptrig import DomainError, acosh_clamped, birectangle_side
from .models import MAX_GENUS, AnglePair, ModelKind, angles, metrics

__all__ = [
    "CheckId",
    "Status",
    "MarginRecord",
    "SweepReport",
    "FtProfile",
    "GUARD_BAND",
    "EQUALITY_TOL",
    "THRESHOLDS",
    "check_vertex_diameter",
    "check_edge_diameter",
    "check_oh_edge",
    "check_nonadjacent_edges",
    "check_b1c3",
    "check_c1c2",
    "check_center_edge",
    "check_x2",
    "check_x3_diameter",
    "check_x_x3_separation",
    "check_ft_minimum",
    "check_b1c4_perpendicular",
    "check_b1c4_tangency",
    "check_indices",
    "run_check",
    "ft_profile",
    "golden_section_argmin",
    "sweep",
]

GUARD_BAND = 1e-9
EQUALITY_TOL = 1e-10


class CheckId(enum.Enum):
    VERTEX_DIAMETER = "vertex-diameter"
    EDGE_DIAMETER = "edge-diameter"
    OH_EDGE_ABJ = "oh-edge"
    NONADJ_EDGES = "nonadj-edges"
    B1C3_DIAMETER = "b1c3"
    C1C2_DIAMETER = "c1c2"
    CENTER_EDGE = "center-edge"
    X2_DIAMETER = "x2"
    X3_DIAMETER = "x3"
    X_X3_SEPARATION = "x-x3"
    FT_MINIMUM = "ft-minimum"
    B1C4_PERPENDICULAR = "b1c4"

    @classmethod
    def parse(cls, name: str) -> "CheckId":
        key = name.strip()
        for c in cls:
            if key in (c.value, c.name) or key.upper().replace("-", "_") == c.name:
                return c
        raise ValueError(f"unknown check {name!r}")

    def __str__(self) -> str:
        return self.value


class Status(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    UNASSERTED = "UNASSERTED"
    INDETERMINATE = "INDETERMINATE"

    def __str__(self) -> str:
        return self.value


_P1, _P2, _PS = ModelKind.P1, ModelKind.P2, ModelKind.P2STAR
_DEFAULT = {_P1: 4, _P2: 7, _PS: 4}

# first genus at which each check is asserted, per model
THRESHOLDS: dict[CheckId, dict[ModelKind, int]] = {
    CheckId.VERTEX_DIAMETER: {_P1: 4, _P2: 7, _PS: 3},
    CheckId.EDGE_DIAMETER: {_P1: 3, _P2: 2, _PS: 4},
    CheckId.OH_EDGE_ABJ: {_P1: 4, _P2: 7, _PS: 3},
    CheckId.NONADJ_EDGES: dict(_DEFAULT),
    CheckId.B1C3_DIAMETER: dict(_DEFAULT),
    CheckId.C1C2_DIAMETER: dict(_DEFAULT),
    CheckId.CENTER_EDGE: {_P1: 4, _P2: 4, _PS: 4},
    CheckId.X2_DIAMETER: dict(_DEFAULT),
    CheckId.X3_DIAMETER: dict(_DEFAULT),
    CheckId.X_X3_SEPARATION: dict(_DEFAULT),
    CheckId.FT_MINIMUM: dict(_DEFAULT),
    CheckId.B1C4_PERPENDICULAR: dict(_DEFAULT),
}


@dataclass(frozen=True)
class MarginRecord:
    check: CheckId
    kind: ModelKind
    genus: int
    index: int
    lhs: float
    threshold: float
    margin: float
    status: Status
    scale: str = "cosh"  # cosh | sinh | length
    claim: str = ">"  # the relation lhs <claim> threshold
    asserted: bool = True
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    @property
    def failed(self) -> bool:
        return self.status in (Status.FAIL, Status.INDETERMINATE)

    def to_dict(self) -> dict:
        def num(x):
            return None if math.isnan(x) else x

        return {
            "check": self.check.value,
            "model": self.kind.value,
            "genus": self.genus,
            "index": self.index,
            "lhs": num(self.lhs),
            "threshold": num(self.threshold),
            "margin": num(self.margin),
            "status": self.status.value,
            "scale": self.scale,
            "claim": self.claim,
            "asserted": self.asserted,
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MarginRecord":
        def num(x):
            return math.nan if x is None or x == "" else float(x)

        asserted = d.get("asserted", True)
        if isinstance(asserted, str):
            asserted = asserted.strip().lower() in ("1", "true", "yes")
        return cls(
            check=CheckId.parse(d["check"]),
            kind=ModelKind.parse(d["model"]),
            genus=int(d["genus"]),
            index=int(d["index"]),
            lhs=num(d["lhs"]),
            threshold=num(d["threshold"]),
            margin=num(d["margin"]),
            status=Status(d["status"]),
            scale=d.get("scale", "cosh"),
            claim=d.get("claim", ">"),
            asserted=bool(asserted),
            note=d.get("note", "") or "",
        )


def _classify(margin: float, asserted: bool, guard: float, claim: str) -> Status:
    if not asserted:
        return Status.UNASSERTED
    if math.isnan(margin):
        return Status.FAIL
    if claim == "=":
        return Status.PASS if margin >= 0 else Status.FAIL
    if margin > guard:
        return Status.PASS
    if margin < -guard:
        return Status.FAIL
    return Status.INDETERMINATE


def _asserted(check: CheckId, kind: ModelKind, genus: int) -> bool:
    return genus >= THRESHOLDS[check][kind]


def _record(check, ap: AnglePair, index, lhs, threshold, scale, claim, guard, note=""):
    if claim in (">", ">="):
        margin = lhs - threshold
    elif claim in ("<", "<="):
        margin = threshold - lhs
    elif claim == "=":
        margin = EQUALITY_TOL - abs(lhs - threshold)
    else:  # pragma: no cover
        raise ValueError(claim)
    asserted = _asserted(check, ap.kind, ap.genus)
    return MarginRecord(
        check=check,
        kind=ap.kind,
        genus=ap.genus,
        index=index,
        lhs=lhs,
        threshold=threshold,
        margin=margin,
        status=_classify(margin, asserted, guard, claim),
        scale=scale,
        claim=claim,
        asserted=asserted,
        note=note,
    )


def _h(ap: AnglePair) -> float:
    return metrics(ap).de


def _edge_cosh(ap: AnglePair) -> float:
    # cosh of the edge length, cosh 2|AD|
    return 2 * math.cos(ap.a) ** 2 / math.sin(ap.b) ** 2 - 1


def _x3_cosh(ap: AnglePair) -> float:
    a, b = ap.a, ap.b
    return (
        math.sin(4 * a) * math.sin(4 * b) / (math.tan(a) * math.tan(b))
        - math.cos(4 * a) * math.cos(4 * b)
    )


# index ranges


def vertex_indices(ap: AnglePair) -> range:
    return range(1, ap.sides // 4 + 1)


def edge_ordinals(ap: AnglePair) -> range:
    """Edges counted outward from A: ordinal k has its midpoint at angle
    (2k-1)a from the diameter; only angles up to pi/2 are distinct."""
    return range(1, (ap.sides + 2) // 4 + 1)


# the checks


def check_vertex_diameter(kind, genus, k: int, guard: float = GUARD_BAND) -> MarginRecord:
    ap = angles(kind, genus)
    if k not in vertex_indices(ap):
        raise ValueError(f"k={k} outside 1..{ap.sides // 4}")
    sinh_oa = math.sqrt(1 / (math.tan(ap.a) * math.tan(ap.b)) ** 2 - 1)
    lhs = sinh_oa * math.sin(2 * k * ap.a)
    return _record(
        CheckId.VERTEX_DIAMETER, ap, k, lhs, math.sinh(_h(ap)), "sinh", ">=", guard
    )


def check_edge_diameter(kind, genus, k: int, guard: float = GUARD_BAND) -> MarginRecord:
    """``k`` is the ordinal of the edge counted from A (1 = an edge at A)."""
    ap = angles(kind, genus)
    if k not in edge_ordinals(ap):
        raise ValueError(f"edge ordinal {k} outside {edge_ordinals(ap)}")
    lhs = math.cos(ap.b) * math.sin((2 * k - 1) * ap.a) / math.sin(ap.a)
    claim = "<" if k <= 2 else ">="
    return _record(CheckId.EDGE_DIAMETER, ap, k, lhs, math.cosh(_h(ap)), "cosh", claim, guard)


def check_oh_edge(kind, genus, j: int, guard: float = GUARD_BAND) -> MarginRecord:
    if j not in (1, 2, 3):
        raise ValueError("j must be 1, 2 or 3")
    ap = angles(kind, genus)
    lhs = math.sin((2 * j - 1) * ap.b) * metrics(ap).sinh_ah
    claim = "<=" if j <= 2 else ">"
    return _record(CheckId.OH_EDGE_ABJ, ap, j, lhs, math.sinh(_h(ap)), "sinh", claim, guard)


def check_nonadjacent_edges(kind, genus, guard: float = GUARD_BAND) -> MarginRecord:
    ap = angles(kind, genus)
    lhs = _edge_cosh(ap) * math.sin(2 * ap.b) ** 2 - math.cos(2 * ap.b) ** 2
    return _record(CheckId.NONADJ_EDGES, ap, 0, lhs, math.cosh(_h(ap)), "cosh", ">", guard)


def check_b1c3(kind, genus, guard: float = GUARD_BAND) -> MarginRecord:
    ap = angles(kind, genus)
    b = ap.b
    lhs = math.sin(b) * math.sin(4 * b) * _edge_cosh(ap) - math.cos(b) * math.cos(4 * b)
    return _record(CheckId.B1C3_DIAMETER, ap, 0, lhs, math.cosh(_h(ap)), "cosh", ">", guard)


def check_c1c2(kind, genus, guard: float = GUARD_BAND) -> MarginRecord:
    ap = angles(kind, genus)
    a, b = ap.a, ap.b
    lhs = (
        math.sin(4 * a) * math.sin(3 * b) / (math.tan(a) * math.tan(b))
        - math.cos(4 * a) * math.cos(3 * b)
    )
    return _record(CheckId.C1C2_DIAMETER, ap, 0, lhs, math.cosh(_h(ap)), "cosh", ">", guard)


def check_center_edge(kind, genus, guard: float = GUARD_BAND) -> MarginRecord:
    ap = angles(kind, genus)
    lhs = math.cos(ap.b) / math.sin(ap.a)
    return _record(CheckId.CENTER_EDGE, ap, 0, lhs, math.cosh(_h(ap)), "cosh", ">", guard)


def x2_half(ap: AnglePair) -> float:
    """|R1R2| for the disk component X2 (equal to |R3R4| by symmetry)."""
    b = ap.b
    c = _edge_cosh(ap) * math.sin(2 * b) * math.sin(b) - math.cos(2 * b) * math.cos(b)
    return acosh_clamped(c)


def check_x2(kind, genus, guard: float = GUARD_BAND) -> MarginRecord:
    ap = angles(kind, genus)
    lhs = 2 * x2_half(ap)
    return _record(CheckId.X2_DIAMETER, ap, 0, lhs, _h(ap), "length", ">", guard)


def check_x3_diameter(kind, genus, guard: float = GUARD_BAND) -> MarginRecord:
    ap = angles(kind, genus)
    return _record(
        CheckId.X3_DIAMETER, ap, 0, _x3_cosh(ap), math.cosh(_h(ap)), "cosh", ">", guard
    )


def x_x3_chain(ap: AnglePair) -> dict[str, float]:
    """Intermediate lengths of the X versus X3 separation argument.

    The argument takes the angle 4b at the vertex nearer the base to be the
    larger one; when b < a the roles of the two angles are exchanged.
    """
    d = acosh_clamped(_x3_cosh(ap))
    big = max(ap.a, ap.b)
    s = 1 / math.tanh(d / 2) / math.tan(4 * big)
    if s < 0:
        raise DomainError("coth(|R1R2|/2) cot 4b is negative")
    r1s1 = math.asinh(s)
    half_ao = metrics(ap).oa / 2
    # cosh|R1y| = cosh|R1S1| cosh(|AO|/2) - sinh|R1S1| sinh(|AO|/2)
    r1y = abs(r1s1 - half_ao)
    yy0 = math.asinh(math.sinh(d / 2) * math.cosh(r1y))
    return {"r1r2": d, "r1s1": r1s1, "r1y": r1y, "yy0": yy0}


def check_x_x3_separation(kind, genus, guard: float = GUARD_BAND) -> MarginRecord:
    ap = angles(kind, genus)
    yy0 = x_x3_chain(ap)["yy0"]
    return _record(CheckId.X_X3_SEPARATION, ap, 0, yy0, _h(ap), "length", ">", guard)


@dataclass(frozen=True)
class FtProfile:
    """f(t) = cosh|x x'| for x on AO and x' on C6 O' at distance t from A
    and C6 respectively."""

    r1r2: float
    ar1: float
    c6r2: float  # signed; negative when R2 lies between C6 and O'
    ao: float
    t_star: float

    def f(self, t: float) -> float:
        u = self.ar1 - t
        v = self.c6r2 + t
        return math.cosh(self.r1r2) * math.cosh(u) * math.cosh(v) - math.sinh(u) * math.sinh(v)

    def fprime(self, t: float) -> float:
        # both product terms contribute sinh(v - u) with the same sign, so the
        # coefficient is cosh|R1R2| + 1; the zero at t_star is unchanged
        return (math.cosh(self.r1r2) + 1) * math.sinh(2 * t - self.ar1 + self.c6r2)

    def f_mp(self, t):
        """f evaluated in mpmath at the current working precision."""
        t = mpmath.mpf(t)
        u = mpmath.mpf(self.ar1) - t
        v = mpmath.mpf(self.c6r2) + t
        c = mpmath.cosh(mpmath.mpf(self.r1r2))
        return c * mpmath.cosh(u) * mpmath.cosh(v) - mpmath.sinh(u) * mpmath.sinh(v)


def ft_profile(kind, genus) -> FtProfile:
    ap = angles(kind, genus)
    d = acosh_clamped(_x3_cosh(ap))
    ao = metrics(ap).oa
    ar1 = birectangle_side(4 * ap.b, 4 * ap.a, d)
    o_r2 = birectangle_side(4 * ap.a, 4 * ap.b, d)
    c6r2 = o_r2 - ao
    return FtProfile(r1r2=d, ar1=ar1, c6r2=c6r2, ao=ao, t_star=(ar1 - c6r2) / 2)


def golden_section_argmin(f, lo: float, hi: float, tol: float = 1e-12, dps: int = 40) -> float:
    """Golden-section search for the minimum of a unimodal ``f`` on [lo, hi].

    Runs in mpmath so that the bracket can shrink well below the point where
    double-precision values of f stop distinguishing neighbours.
    """
    with mpmath.workdps(dps):
        invphi = (mpmath.sqrt(5) - 1) / 2
        a, b = mpmath.mpf(lo), mpmath.mpf(hi)
        c = b - invphi * (b - a)
        d = a + invphi * (b - a)
        fc, fd = f(c), f(d)
        while b - a > tol:
            if fc < fd:
                b, d, fd = d, c, fc
                c = b - invphi * (b - a)
                fc = f(c)
            else:
                a, c, fc = c, d, fd
                d = a + invphi * (b - a)
                fd = f(d)
        return float((a + b) / 2)


def _fd_mismatch(p: FtProfile, n: int = 5) -> float:
    """Largest relative gap between f' and a central difference of f at
    ``n`` points spread around (not at) the minimiser."""
    span = max(1.0, abs(p.t_star))
    worst = 0.0
    step = 1e-5
    for i in range(n):
        t = p.t_star + span * (0.2 + 0.3 * i) * (-1) ** i
        exact = p.fprime(t)
        with mpmath.workdps(40):
            fd = float((p.f_mp(t + step) - p.f_mp(t - step)) / (2 * step))
        worst = max(worst, abs(fd - exact) / abs(exact))
    return worst


def check_ft_minimum(kind, genus, guard: float = GUARD_BAND, fd_tol: float = 1e-6) -> MarginRecord:
    ap = angles(kind, genus)
    p = ft_profile(kind, genus)
    lhs = p.f(p.t_star)
    threshold = math.cosh(2 * _h(ap))
    rec = _record(CheckId.FT_MINIMUM, ap, 0, lhs, threshold, "cosh", ">", guard)
    mismatch = _fd_mismatch(p)
    if mismatch > fd_tol:
        note = f"f' disagrees with finite differences ({mismatch:.3g})"
        status = Status.FAIL if rec.asserted else Status.UNASSERTED
        return MarginRecord(**{**asdict(rec), "status": status, "note": note})
    return rec


def check_b1c4_perpendicular(kind, genus, guard: float = GUARD_BAND) -> MarginRecord:
    """Distance between AA' and the neighbouring diameter B1B1', built
    explicitly in the half-plane; claimed to equal h exactly."""
    ap = angles(kind, genus)
    d = PolygonFrame(ap).b1b1_distance()
    return _record(CheckId.B1C4_PERPENDICULAR, ap, 0, d, _h(ap), "length", "=", guard)


def check_b1c4_tangency(kind, genus, guard: float = GUARD_BAND) -> MarginRecord:
    """d(H, B1B1') = h: the ball of radius h at H touches B1B1'."""
    ap = angles(kind, genus)
    d = PolygonFrame(ap).h_to_b1b1()
    return _record(CheckId.B1C4_PERPENDICULAR, ap, 1, d, _h(ap), "length", "=", guard)


def check_indices(check: CheckId, kind: ModelKind, genus: int) -> list[int]:
    ap = angles(kind, genus)
    if check is CheckId.VERTEX_DIAMETER:
        return list(vertex_indices(ap))
    if check is CheckId.EDGE_DIAMETER:
        return list(edge_ordinals(ap))
    if check is CheckId.OH_EDGE_ABJ:
        return [1, 2, 3]
    if check is CheckId.B1C4_PERPENDICULAR:
        return [0, 1]
    return [0]


_INDEXED = {
    CheckId.VERTEX_DIAMETER: check_vertex_diameter,
    CheckId.EDGE_DIAMETER: check_edge_diameter,
    CheckId.OH_EDGE_ABJ: check_oh_edge,
}
_PLAIN = {
    CheckId.NONADJ_EDGES: check_nonadjacent_edges,
    CheckId.B1C3_DIAMETER: check_b1c3,
    CheckId.C1C2_DIAMETER: check_c1c2,
    CheckId.CENTER_EDGE: check_center_edge,
    CheckId.X2_DIAMETER: check_x2,
    CheckId.X3_DIAMETER: check_x3_diameter,
    CheckId.X_X3_SEPARATION: check_x_x3_separation,
    CheckId.FT_MINIMUM: check_ft_minimum,
}


def run_check(check: CheckId, kind: ModelKind, genus: int, index: int = 0,
              guard: float = GUARD_BAND) -> MarginRecord:
    """Evaluate one cell; geometric failures become FAIL records."""
    try:
        if check in _INDEXED:
            return _INDEXED[check](kind, genus, index, guard)
        if check is CheckId.B1C4_PERPENDICULAR:
            fn = check_b1c4_tangency if index == 1 else check_b1c4_perpendicular
            return fn(kind, genus, guard)
        return _PLAIN[check](kind, genus, guard)
    except (DomainError, GeometryError, ZeroDivisionError, OverflowError) as exc:
        asserted = _asserted(check, kind, genus)
        nan = math.nan
        return MarginRecord(
            check=check, kind=kind, genus=genus, index=index, lhs=nan, threshold=nan,
            margin=nan, status=Status.FAIL if asserted else Status.UNASSERTED,
            asserted=asserted, note=f"{type(exc).__name__}: {exc}",
        )


@dataclass
class SweepReport:
    records: list[MarginRecord] = field(default_factory=list)

    @property
    def summary(self) -> dict[CheckId, tuple[float, int]]:
        """Per check, the smallest asserted margin and the genus where it
        occurs (ties go to the smallest genus)."""
        out: dict[CheckId, tuple[float, int]] = {}
        for r in self.records:
            if not r.asserted or math.isnan(r.margin):
                continue
            best = out.get(r.check)
            if best is None or r.margin < best[0]:
                out[r.check] = (r.margin, r.genus)
        return out

    @property
    def ok(self) -> bool:
        return not any(r.failed for r in self.records)

    def failures(self) -> list[MarginRecord]:
        return [r for r in self.records if r.failed]

    def counts(self) -> dict[str, int]:
        c = {s.value: 0 for s in Status}
        for r in self.records:
            c[r.status.value] += 1
        return c


def _genus_cells(args) -> list[MarginRecord]:
    checks, kind, genus, guard = args
    out = []
    for check in checks:
        try:
            idx = check_indices(check, kind, genus)
        except ValueError:
            idx = [0]
        for i in idx:
            out.append(run_check(check, kind, genus, i, guard))
    return out


def sweep(checks, kind: ModelKind, genus_range, guard: float = GUARD_BAND,
          workers: int = 1) -> SweepReport:
    """Evaluate ``checks`` at every genus in ``genus_range`` (any iterable of
    integers, typically a ``range``).  Records come back in check order
    within ascending genus, whatever ``workers`` is."""
    checks = sorted(set(checks), key=lambda c: list(CheckId).index(c))
    genera = sorted(set(genus_range))
    if genera and (genera[0] < 2 or genera[-1] > MAX_GENUS):
        raise ValueError(f"genus range must lie within [2, {MAX_GENUS}]")
    jobs = [(checks, kind, g, guard) for g in genera]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_genus_cells, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        chunks = [_genus_cells(j) for j in jobs]
    return SweepReport([r for chunk in chunks for r in chunk])

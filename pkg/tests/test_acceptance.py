"""Acceptance criteria 1-8.  Each test prints one ``criterion N: PASS/FAIL``
line; the lines are also gathered in the terminal summary."""

import math
import os
import re
import time

import numpy as np
import pytest

from acceptance_report import criterion
from cyclic_systole import hyptrig as T
from cyclic_systole.cli import main
from cyclic_systole.construction import PolygonFrame
from cyclic_systole.fuchsian import build_generators, enumerate_batch, injectivity_profile, oracle_systole
from cyclic_systole.fuchsian import _points_on_segment
from cyclic_systole.halfplane import angle_at, birectangle_base_oracle, distance
from cyclic_systole.models import ModelKind, angles, candidate_systole, metrics
from cyclic_systole.verifier import (
    CheckId,
    Status,
    check_b1c4_perpendicular,
    ft_profile,
    golden_section_argmin,
    sweep,
    _fd_mismatch,
)
from geometry_oracles import I, birectangle, lambert, triangle

P1, P2, PS = ModelKind.P1, ModelKind.P2, ModelKind.P2STAR

TABLE = [
    ("p1", 4, "3.41464123"), ("p1", 5, "3.45497357"), ("p1", 6, "3.47667914"),
    ("p1", 7, "3.48969921"), ("p2", 7, "3.44730852"), ("p2", 8, "3.46473555"),
    ("p2", 9, "3.47691634"), ("p2", 10, "3.48576585"),
]


def test_criterion_1_table(capsys):
    with criterion(1, "systole table reproduction") as info:
        t0 = time.perf_counter()
        code = main(["table"])
        elapsed = time.perf_counter() - t0
        out = capsys.readouterr().out
        assert code == 0
        worst = 0.0
        for model, g, value in TABLE:
            m = re.search(rf"^\s*{model}\s+{g}\s+(\d\.\d+)", out, re.M)
            assert m, (model, g)
            assert m.group(1) == value
            worst = max(worst, abs(candidate_systole(ModelKind(model), g) - float(value)))
        info["detail"] = f"8/8 values, worst diff {worst:.1e}, {elapsed:.3f} s"
        assert worst <= 5e-9
        assert elapsed < 1


def test_criterion_2_closed_forms():
    with criterion(2, "closed-form identity for g <= 10^4") as info:
        worst = 0.0
        for g in range(2, 10**4 + 1):
            p1 = 2 * math.acosh(1 + 2 * math.cos(math.pi / (2 * g)))
            t = math.pi / (2 * g + 1)
            p2 = 2 * math.acosh(1 + math.cos(t) + math.cos(2 * t))
            worst = max(worst, abs(candidate_systole(P1, g) - p1),
                        abs(candidate_systole(P2, g) - p2))
        info["detail"] = f"worst diff {worst:.1e}"
        assert worst <= 1e-12


def _rel(a, b):
    return abs(a - b) / abs(b)


def test_criterion_3_formula_oracles():
    with criterion(3, "hyptrig formulas vs half-plane constructions") as info:
        rng = np.random.default_rng(20261016)
        n = 10**4
        worst: dict[str, float] = {}

        def rec(key, got, want):
            worst[key] = max(worst.get(key, 0.0), _rel(got, want))

        t0 = time.perf_counter()
        for _ in range(n):
            a, b = rng.uniform(0.05, 2.5, 2)
            C = rng.uniform(0.05, math.pi - 0.05)
            p, q = triangle(a, b, C)
            rec("cosine law", T.triangle_cosine_law(a, b, C), distance(p, q))

            p, q = triangle(a, b, math.pi / 2)
            c = distance(p, q)
            A, B = angle_at(q, I, p), angle_at(p, I, q)
            rec("hypotenuse", T.right_triangle_hypotenuse(a, b), c)
            rec("right angle", T.right_triangle_angle(a, c), A)
            rec("right cos angle", T.right_triangle_cos_angle(a, B), math.cos(A))
            rec("sine law", T.triangle_sine_law(a, A, B), b)

            while True:
                x, y = rng.uniform(0.05, 1.2, 2)
                if math.sinh(x) * math.sinh(y) < 0.95:
                    break
            L = lambert(x, y)
            rec("trirectangle side", T.trirectangle_a(L["alpha"], L["phi"]), x)
            rec("trirectangle alpha", T.trirectangle_alpha(x, L["beta"]), L["alpha"])
            rec("trirectangle alpha/angle", T.trirectangle_alpha_from_angle(y, L["phi"]), L["alpha"])

            u, v = rng.uniform(-2, 2, 2)
            d = rng.uniform(0.05, 3)
            rec("birectangle diagonal", T.birectangle_diagonal(u, v, d), birectangle(u, v, d)["c"])
            u, v = rng.uniform(0.05, 2, 2)
            Q = birectangle(u, v, d)
            rec("birectangle side", T.birectangle_side(Q["alpha"], Q["beta"], d), u)
            rec("birectangle base", T.birectangle_base(Q["c"], Q["alpha"], Q["beta"]), d)
            rec("birectangle base oracle",
                birectangle_base_oracle(Q["c"], Q["alpha"], Q["beta"]),
                T.birectangle_base(Q["c"], Q["alpha"], Q["beta"]))
        elapsed = time.perf_counter() - t0
        key, top = max(worst.items(), key=lambda kv: kv[1])
        info["detail"] = (f"{len(worst)} formulas x {n}, worst rel {top:.1e} ({key}), "
                          f"{elapsed:.1f} s")
        assert top <= 1e-10
        assert elapsed < 30


SWEEP_RANGES = {"p1": "4..1024", "p2": "7..1024", "p2star": "4..1024"}


@pytest.fixture(scope="module")
def lemma_sweep():
    """Exit code and wall time of ``verify --all`` per model, plus the
    records from the same sweep through the library for inspection."""
    out = {}
    elapsed = 0.0
    for model, genus in SWEEP_RANGES.items():
        t0 = time.perf_counter()
        code = main(["verify", "--all", "--model", model, "--genus", genus,
                     "-o", os.devnull])
        elapsed += time.perf_counter() - t0
        lo, hi = map(int, genus.split(".."))
        recs = sweep(list(CheckId), ModelKind(model), range(lo, hi + 1)).records
        out[model] = (code, recs)
    return out, elapsed


def _sign_pattern_ok(recs):
    for r in recs:
        if r.check is CheckId.EDGE_DIAMETER and r.asserted:
            if r.index <= 2 and not r.lhs < r.threshold:
                return False
            if r.index >= 3 and not r.lhs > r.threshold:
                return False
        if r.check is CheckId.OH_EDGE_ABJ and r.asserted:
            if r.index <= 2 and not r.lhs <= r.threshold:
                return False
            if r.index == 3 and not r.lhs > r.threshold:
                return False
    return True


@pytest.mark.xfail(strict=True, reason="P2 second edge line lies at distance exactly h "
                   "(cos 2a sin 3a / sin a = 1 + cos 2a + cos 4a when b = 2a), so the "
                   "strict inequality cannot clear the guard band")
def test_criterion_4_lemma_sweep(lemma_sweep):
    sweeps, elapsed = lemma_sweep
    with criterion(4, "lemma sweep, verify --all") as info:
        parts = []
        ok = True
        for model, (code, recs) in sweeps.items():
            bad = [r for r in recs if r.failed]
            pattern = _sign_pattern_ok(recs)
            parts.append(f"{model}: exit {code}, {len(bad)} not certified, "
                         f"sign pattern {'ok' if pattern else 'broken'}")
            ok = ok and code == 0 and pattern
        info["detail"] = "; ".join(parts) + f"; {elapsed:.1f} s"
        assert elapsed < 60
        assert ok


def test_lemma_sweep_shortfall_is_only_the_tie(lemma_sweep):
    # what criterion 4 does establish: everything except the exact tie passes
    sweeps, elapsed = lemma_sweep
    assert elapsed < 60
    for model, (code, recs) in sweeps.items():
        bad = [r for r in recs if r.failed]
        if model != "p2":
            assert code == 0 and not bad and _sign_pattern_ok(recs)
            continue
        assert code == 1
        assert all(r.check is CheckId.EDGE_DIAMETER and r.index == 2 for r in bad)
        assert all(r.status is Status.INDETERMINATE and abs(r.margin) < 1e-12 for r in bad)
        assert len(bad) == 1024 - 7 + 1
        rest = [r for r in recs if not (r.check is CheckId.EDGE_DIAMETER and r.index == 2)]
        assert _sign_pattern_ok(rest)


def test_criterion_5_b1c4_equality():
    with criterion(5, "distance(AA', B1B1') = h") as info:
        worst = 0.0
        for kind, genera in [(P1, range(4, 9)), (P2, range(7, 10))]:
            for g in genera:
                frame = PolygonFrame(angles(kind, g))
                h = metrics(angles(kind, g)).de
                worst = max(worst, abs(frame.b1b1_distance() - h))
                assert check_b1c4_perpendicular(kind, g).status is Status.PASS
        info["detail"] = f"8 cases, worst |d - h| {worst:.1e}"
        assert worst <= 1e-10


def test_criterion_6_ft_stationary_point():
    with criterion(6, "f(t) argmin and derivative") as info:
        parts = []
        for kind, g in [(P1, 4), (P2, 7), (PS, 4)]:
            p = ft_profile(kind, g)
            assert p.t_star == pytest.approx((p.ar1 - p.c6r2) / 2, abs=1e-15)
            t = golden_section_argmin(p.f_mp, p.t_star - 2, p.t_star + 3)
            fd = _fd_mismatch(p)
            parts.append(f"{kind.value} g={g}: |dt| {abs(t - p.t_star):.1e}, fd {fd:.1e}")
            assert abs(t - p.t_star) <= 1e-9
            assert fd <= 1e-6
        info["detail"] = "; ".join(parts)


def test_criterion_7_oracle():
    with criterion(7, "oracle length and multiplicity") as info:
        parts = []
        for kind, g, mult in [(P1, 4, 8), (P1, 5, 10), (P1, 6, 12), (P2, 7, 15), (P2, 8, 17)]:
            r = oracle_systole(kind, g)
            diff = abs(r.length - candidate_systole(kind, g))
            parts.append(f"{kind.value} g={g}: x{r.multiplicity}, diff {diff:.0e}, {r.runtime:.0f} s")
            info["detail"] = "; ".join(parts)
            assert diff <= 1e-6
            assert r.multiplicity == mult
            assert r.runtime < 300


def test_criterion_8_ball_probe():
    with criterion(8, "injectivity probe along OH") as info:
        parts = []
        for kind, g in [(P1, 4), (P2, 7)]:
            gs = build_generators(kind, g)
            f = gs.frame
            h = f.m.de
            batch = enumerate_batch(gs, 2 * h + 2 * f.m.oa + 0.1)
            pts = _points_on_segment(f.O, f.H, 33)
            prof = injectivity_profile(gs, pts, batch)
            parts.append(f"{kind.value} g={g}: at H {prof[-1] - h:+.1e}, "
                         f"elsewhere min excess {np.min(prof[:-1] - h):.2e}")
            assert abs(prof[-1] - h) <= 1e-7
            assert np.all(prof[:-1] > h)
        info["detail"] = "; ".join(parts)

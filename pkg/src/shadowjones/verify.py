"""Acceptance checks shared by the test-suite and ``shadowjones verify``."""

from __future__ import annotations

import math
import random
import time
import warnings
from dataclasses import dataclass
from typing import Callable

import mpmath

from . import builders as B
from .qalg import QProduct, qint, qproduct_sum, sixj_symmetric
from .qring import DEFAULT_PRECISION, RATFN_ONE, RATFN_ZERO, LaurentPoly, RationalFunc, i_power
from .shadow import InternalRegionWarning
from .statesum import (
    framing_factor,
    framing_twist,
    jones_numeric,
    jones_symbolic,
    max_color,
    stabilization_threshold,
)
from .volume import (
    binomial_sum_log,
    lobachevsky,
    lobachevsky_quad,
    residual_profile,
    vc_sequence,
    vc_target,
)


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.2f}s / {self.budget:g}s)"


@dataclass(frozen=True)
class Check:
    number: int
    name: str
    suite: str
    budget: float
    fn: Callable


def trefoil_k_sum(d: int) -> RationalFunc:
    """The closed k-sum for the trefoil, independent of the shadow machinery."""
    total = LaurentPoly.from_terms({})
    for k in range(d):
        total = total + qint(2 * k + 1).shift(12 * k * (k + 1)).scale(i_power(-6 * k))
    sign = -1 if (d - 1) % 2 else 1
    pre = qproduct_sum([QProduct(i_power(6 * (d - 1)) * sign, -6 * (d * d - 1), {d: -1})])
    return pre * RationalFunc(total)


def trefoil_j2() -> RationalFunc:
    """``t^(-9/4) (1 - t^4 - t^3 - t^2) / (t^(1/2) + t^(-1/2))`` in u-units."""
    num = LaurentPoly.from_terms({-18: 1, 14: -1, 6: -1, -2: -1})
    return RationalFunc(num, LaurentPoly.from_terms({4: 1, -4: 1}))


def _c1_unknot(precision):
    bad = [d for d in range(2, 13) if jones_symbolic(B.unknot_shadow(), d) != RATFN_ONE]
    return not bad, "J_d = 1 for d in 2..12" if not bad else f"fails at d = {bad}"


def _c2_trefoil(precision):
    got = jones_symbolic(B.trefoil_collapsed_shadow(), 2)
    return got == trefoil_j2(), f"J_2 = {got.to_pretty()}"


def _c3_ksum(precision):
    bad = [d for d in range(2, 9) if jones_symbolic(B.trefoil_collapsed_shadow(), d) != trefoil_k_sum(d)]
    return not bad, "k-sum formula exact for d in 2..8" if not bad else f"fails at d = {bad}"


def framing_offset(range_s=range(-5, 6), ds=(2, 3, 4)):
    """Integer ``s`` with ``J(diagram) = framing_factor(s) * J(collapsed)`` for all ``ds``."""
    pairs = [(d, jones_symbolic(B.trefoil_diagram_shadow(), d),
              jones_symbolic(B.trefoil_collapsed_shadow(), d)) for d in ds]
    for s in range_s:
        if all(a == framing_factor(s, d) * b for d, a, b in pairs):
            return s
    return None


def _c4_independence(precision):
    s = framing_offset()
    return s is not None, f"framing offset s = {s}"


def _c5_tetrahedron(precision):
    bad = []
    for d in range(2, 8):
        want = RATFN_ZERO if d % 2 == 0 else qproduct_sum([QProduct(1, 0, {d: 5})]) * sixj_symmetric((d - 1) // 2)
        if jones_symbolic(B.tetrahedron_shadow(), d) != want:
            bad.append(d)
    return not bad, "J_d = 0 (d even), [d]^5 6j (d odd) for d in 2..7" if not bad else f"fails at d = {bad}"


def _c6_universal(precision):
    bad = []
    for d in (3, 5, 7, 9):
        one = [jones_symbolic(B.universal_shadow(g), d) for g in (B.bouquet_graph(), B.bouquet_graph(True))]
        if any(x != B.universal_jones_closed_form(1, d) for x in one):
            bad.append((1, d))
        if jones_symbolic(B.universal_shadow(B.theta_graph()), d) != B.universal_jones_closed_form(2, d):
            bad.append((2, d))
    return not bad, "c = 1 (two structures), c = 2 match [d]^c 6j^c for odd d <= 9" if not bad else f"fails at {bad}"


def _c7_binomial(precision):
    p = B.universal_for(1)
    worst = 0.0
    for d in range(3, 102, 2):
        val = jones_numeric(p, d, d, precision)
        with mpmath.workprec(precision):
            ref = mpmath.exp(binomial_sum_log((d - 1) // 2, precision))
            worst = max(worst, float(abs(val.to_complex() - ref) / ref))
    return worst <= 1e-9, f"max relative deviation {worst:.3e} over odd d <= 101 (tolerance 1e-9)"


def _c8_volume(precision):
    rows = vc_sequence(1, 501)
    a = {r.record.d: float(r.record.a_d) for r in rows}
    ds = [d for d in sorted(a) if d >= 5]
    increasing = all(a[x] < a[y] for x, y in zip(ds, ds[1:]))
    below = all(v < 1.16625 for v in a.values())
    gaps = [1.16624 - a[d] for d in ds]
    gap_decreasing = all(x > y for x, y in zip(gaps, gaps[1:]))
    scaled = [g * d / math.log(d) for g, d in zip(gaps, ds)]
    bounded = max(scaled[len(scaled) // 2:]) <= max(scaled[: len(scaled) // 2])
    ok = increasing and below and a[501] > 1.10 and gap_decreasing and bounded
    return ok, (f"increasing={increasing} below_limit={below} a_501={a[501]:.6f} "
                f"gap_decreasing={gap_decreasing} sup gap*d/log d = {max(scaled):.4f}")


def _c9_lobachevsky(precision):
    rng = random.Random(2024)
    quad = max(abs(lobachevsky(x) - float(lobachevsky_quad(x)))
               for x in (rng.uniform(-2 * math.pi, 2 * math.pi) for _ in range(100)))
    dup = max(abs(lobachevsky(2 * x) - 2 * lobachevsky(x) - 2 * lobachevsky(x + math.pi / 2))
              for x in (rng.uniform(-math.pi, math.pi) for _ in range(100)))
    target = vc_target(1)
    ok = quad <= 1e-10 and dup <= 1e-10 and abs(target - 1.16624) <= 5e-5
    return ok, f"quadrature {quad:.2e}, duplication {dup:.2e}, 8 Lambda(pi/4)/pi = {target:.8f}"


def _c10_qfact(precision):
    prof = {d: residual_profile(d) for d in (11, 101, 1001)}
    res = [prof[d][0] for d in (11, 101, 1001)]
    scaled = [prof[d][1] for d in (11, 101, 1001)]
    ok = res[0] > res[1] > res[2] and max(scaled) == scaled[0]
    return ok, (f"max residuals {', '.join(f'{x:.3e}' for x in res)}; "
                f"residual*d/log d = {', '.join(f'{x:.4f}' for x in scaled)} (sup {max(scaled):.4f})")


def _t_region(p):
    return next(r.id for r in p.regions if r.boundary == "T")


def _c11_framing(precision):
    rng = random.Random(7)
    pool = [B.unknot_shadow, B.trefoil_collapsed_shadow, B.trefoil_diagram_shadow, B.tetrahedron_shadow,
            lambda: B.diagram_to_shadow(B.kink_diagram()), lambda: B.diagram_to_shadow(B.circle_diagram()),
            lambda: B.universal_for(1)]
    bad = []
    for _ in range(30):
        p = rng.choice(pool)()
        s = rng.randint(-5, 5)
        d = rng.randint(2, 6)
        twisted = framing_twist(p, _t_region(p), s)
        if jones_symbolic(twisted, d) != framing_factor(s, d) * jones_symbolic(p, d):
            bad.append((p.label, s, d))
    return not bad, "30 random (shadow, s, d) cases transform by the framing factor" if not bad else f"fails: {bad}"


def _c12_rt(precision):
    details = []
    ok = True
    for p, d in ((B.trefoil_collapsed_shadow(), 2), (B.unknot_shadow(), 2), (B.unknot_shadow(), 3)):
        r0, _ = stabilization_threshold(p, d, 20, 1e-10, precision)
        bound = 3 * max_color(p, d) + 3
        good = r0 is not None and r0 <= bound
        ok = ok and good
        details.append(f"{p.label} d={d}: r0={r0} (bound {bound:g})")
    return ok, "; ".join(details)


def _c13_determinism(precision):
    panel = [(B.trefoil_collapsed_shadow(), 80), (B.trefoil_diagram_shadow(), 10),
             (B.tetrahedron_shadow(), 5), (B.universal_for(2), 5)]
    same = True
    for p, d in panel:
        outs = {jones_symbolic(p, d, workers=w).to_canonical_text() for w in (1, 4, 8)}
        same = same and len(outs) == 1
    numeric = set()
    for w in (1, 4, 8):
        v = jones_numeric(B.trefoil_collapsed_shadow(), 80, 163, precision, workers=w)
        numeric.add((repr(v.log_mag), repr(v.phase)))
    same_num = len(numeric) == 1
    return same and same_num, f"symbolic identical={same}, numeric identical={same_num} across 1/4/8 workers"


CHECKS = [
    Check(1, "unknot identity", "algebra", 1, _c1_unknot),
    Check(2, "trefoil J_2", "algebra", 1, _c2_trefoil),
    Check(3, "trefoil general d", "algebra", 10, _c3_ksum),
    Check(4, "shadow independence", "invariance", 10, _c4_independence),
    Check(5, "tetrahedron", "algebra", 10, _c5_tetrahedron),
    Check(6, "universal links", "algebra", 30, _c6_universal),
    Check(7, "binomial identity", "vc", 60, _c7_binomial),
    Check(8, "volume conjecture trend", "vc", 60, _c8_volume),
    Check(9, "Lobachevsky function", "vc", 10, _c9_lobachevsky),
    Check(10, "quantum factorial asymptotics", "vc", 60, _c10_qfact),
    Check(11, "framing covariance", "invariance", 30, _c11_framing),
    Check(12, "RT stabilization", "invariance", 30, _c12_rt),
    Check(13, "determinism", "invariance", 60, _c13_determinism),
]

SUITES = ("all", "algebra", "invariance", "vc")


def run_check(check: Check, precision: int = DEFAULT_PRECISION) -> CheckResult:
    start = time.perf_counter()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", InternalRegionWarning)
        try:
            passed, detail = check.fn(precision)
        except Exception as exc:  # a crash is a failed check, with the reason reported
            passed, detail = False, f"error: {type(exc).__name__}: {exc}"
    seconds = time.perf_counter() - start
    if passed and seconds > check.budget:
        passed, detail = False, detail + " [over time budget]"
    return CheckResult(check.number, check.name, passed, detail, seconds, check.budget)


def run_suite(suite: str = "all", precision: int = DEFAULT_PRECISION) -> list[CheckResult]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return [run_check(c, precision) for c in CHECKS if suite in ("all", c.suite)]

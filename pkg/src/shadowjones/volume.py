"""Lobachevsky function, octahedral volume and the colored-Jones growth rates.

Magnitudes of quantum factorials at ``t = exp(2 pi i / d)`` are handled as
sums of ``log sin`` values; ``ev_d([j]!)`` spans hundreds of orders of
magnitude once ``d`` is a few hundred.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
from mpmath import mp

from . import kernels
from .statesum import VCScanRecord, vc_csv


class LobachevskyError(ArithmeticError):
    pass


@dataclass(frozen=True)
class LobParams:
    tolerance: float = 1e-15
    max_terms: int = 200

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


DEFAULT_LOB = LobParams()


@lru_cache(maxsize=None)
def _clausen_coeffs(n: int) -> tuple:
    # zeta(2k) / (k (2k+1) (2 pi)^(2k)), k = 1..n
    with mp.workprec(80):
        return tuple(float(mpmath.zeta(2 * k) / (k * (2 * k + 1) * (2 * mpmath.pi) ** (2 * k)))
                     for k in range(1, n + 1))


def _clausen(theta: float, p: LobParams) -> float:
    """``Cl_2(theta)`` for ``|theta| <= pi`` via its expansion around 0."""
    if theta == 0.0:
        return 0.0
    coeffs = _clausen_coeffs(p.max_terms)
    total = theta - theta * math.log(abs(theta))
    sq = theta * theta
    power = theta
    x = abs(theta) / (2 * math.pi)  # <= 1/2, so the tail is geometric with ratio <= 1/4
    for k, c in enumerate(coeffs, start=1):
        power *= sq
        total += c * power
        # zeta(2m) <= 2: tail after term k is at most |theta| * 2 x^(2k+2) / (1 - x^2) / (k+1)^2 / 2
        tail = abs(theta) * x ** (2 * k + 2) / ((1 - x * x) * (k + 1) ** 2)
        if tail < p.tolerance:
            return total
    raise LobachevskyError(f"tolerance {p.tolerance} not reached within {p.max_terms} terms")


def lobachevsky(x: float, p: LobParams = DEFAULT_LOB) -> float:
    """``Lambda(x) = -int_0^x log|2 sin s| ds``, odd and pi-periodic."""
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    theta = math.remainder(2.0 * x, 2.0 * math.pi)
    return 0.5 * _clausen(theta, p)


def lobachevsky_quad(x, precision: int = 80):
    """Adaptive-quadrature evaluation of the defining integral (reference values)."""
    with mp.workprec(precision):
        x = mpmath.mpf(x)
        if x == 0:
            return mpmath.mpf(0)
        lo, hi = (0, x) if x > 0 else (x, 0)
        k0, k1 = int(mpmath.floor(lo / mpmath.pi)), int(mpmath.ceil(hi / mpmath.pi))
        pts = [lo] + [k * mpmath.pi for k in range(k0, k1 + 1) if lo < k * mpmath.pi < hi] + [hi]
        val = mpmath.quad(lambda s: mpmath.log(abs(2 * mpmath.sin(s))), pts)
        return -val if x > 0 else val


def vol_oct() -> float:
    """Volume of the regular ideal octahedron, ``8 Lambda(pi/4)``."""
    return 8 * lobachevsky(math.pi / 4)


def vc_target(c: int) -> float:
    """``2 c Vol_Oct / (2 pi)``."""
    if c < 1:
        raise ValueError("c must be >= 1")
    return c * vol_oct() / math.pi


def L_alpha_beta(alpha: float, beta: float) -> float:
    return (lobachevsky(alpha) + lobachevsky(math.pi / 2 - alpha + beta)
            - lobachevsky(math.pi / 2 + beta))


def binomial_sum_log(k: int, precision: int | None = None):
    """``log sum_j ev_d([k choose j])**4`` with ``d = 2k+1``.

    All summands are positive reals; they are combined by log-sum-exp.  With
    ``precision`` (bits) the sum is done in mpmath, otherwise in the compiled
    kernel.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    d = 2 * k + 1
    if precision is None:
        return kernels.log_binomial_power_sum(k, d, 4)
    with mp.workprec(precision):
        base = mpmath.log(mpmath.sinpi(mpmath.mpf(1) / d))
        lf = [mpmath.mpf(0)]
        for m in range(1, k + 1):
            lf.append(lf[-1] + mpmath.log(mpmath.sinpi(mpmath.mpf(m) / d)) - base)
        logs = [4 * (lf[k] - lf[j] - lf[k - j]) for j in range(k + 1)]
        top = max(logs)
        return top + mpmath.log(mpmath.fsum(mpmath.exp(x - top) for x in logs))


@dataclass(frozen=True)
class VCRow:
    record: VCScanRecord
    target: float

    @property
    def gap(self) -> float:
        return self.target - float(self.record.a_d)


def vc_sequence(c: int, d_max: int, precision: int | None = None) -> list[VCRow]:
    """Growth rates ``a_d = (c/d) log sum_j ev_d([k choose j])**4`` for odd ``3 <= d <= d_max``."""
    if c < 1:
        raise ValueError("c must be >= 1")
    target = vc_target(c)
    rows = []
    for d in range(3, d_max + 1, 2):
        log_mag = c * binomial_sum_log((d - 1) // 2, precision)
        rows.append(VCRow(VCScanRecord(d, "ok", log_mag, log_mag / d), target))
    return rows


def vc_sequence_csv(rows: list[VCRow]) -> str:
    by_id = {id(r.record): r for r in rows}
    return vc_csv([r.record for r in rows], {
        "target": lambda rec: repr(by_id[id(rec)].target),
        "gap": lambda rec: repr(by_id[id(rec)].gap),
    })


def qfact_asymptotic_residual(d: int, j: int) -> float:
    """``(1/d) |sum_{m<=j} log(2 sin(pi m/d)) + (d/pi) Lambda(pi j/d)|``.

    The sum is ``log((2 sin(pi/d))**j ev_d([j]!))``; the residual is the
    Riemann-sum error, of order ``log(d)/d``.
    """
    if d < 5 or d % 2 == 0:
        raise ValueError("d must be odd and >= 5")
    k = (d - 1) // 2
    if not 1 <= j <= k - 1:
        raise ValueError(f"j must lie in [1, {k - 1}]")
    s = math.fsum(math.log(2 * math.sin(math.pi * m / d)) for m in range(1, j + 1))
    return abs(s + d / math.pi * lobachevsky(math.pi * j / d)) / d


def residual_profile(d: int) -> tuple[float, float]:
    """``(max_j residual, max_j residual * d / log d)`` over ``1 <= j <= k-1``."""
    k = (d - 1) // 2
    worst = max(qfact_asymptotic_residual(d, j) for j in range(1, k))
    return worst, worst * d / math.log(d)

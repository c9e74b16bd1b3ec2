"""Quantum integers, factorials, admissibility, Delta^2 and 6j-symbols.

Everything symbolic lives in :mod:`shadowjones.qring` (variable ``u = t**(1/8)``,
so ``[n]`` has exponents ``4(n-1), 4(n-3), ...``).  Colours and gleams are
:class:`HalfInt`; internally most routines work with doubled integers.
"""

from __future__ import annotations

import math
import threading
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering

import mpmath
from mpmath import mp

from .qring import (
    DEFAULT_PRECISION,
    ONE,
    RATFN_ZERO,
    Germ,
    GaussRat,
    LaurentPoly,
    QRingError,
    RationalFunc,
    RootTable,
    UnitEval,
    _finish,
    exact_divide,
    gauss_to_mpc,
    germ_result,
    germ_sum,
    i_power,
)


@total_ordering
@dataclass(frozen=True)
class HalfInt:
    """An element of Z/2 stored as its double."""

    twice: int

    @classmethod
    def of(cls, x) -> "HalfInt":
        if isinstance(x, HalfInt):
            return x
        f = Fraction(x)
        if (2 * f).denominator != 1:
            raise ValueError(f"{x} is not a half-integer")
        return cls(int(2 * f))

    def __int__(self):
        if self.twice % 2:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def to_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __add__(self, other):
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __neg__(self):
        return HalfInt(-self.twice)

    def __lt__(self, other):
        return self.twice < HalfInt.of(other).twice

    def __eq__(self, other):
        try:
            return self.twice == HalfInt.of(other).twice
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.twice)

    def __str__(self):
        return str(self.twice // 2) if self.twice % 2 == 0 else f"{self.twice}/2"

    def __repr__(self):
        return f"HalfInt({self})"


def _tw(x) -> int:
    return HalfInt.of(x).twice


# ---------------------------------------------------------------------------
# Quantum integers and factorials.


@lru_cache(maxsize=None)
def qint(n: int) -> LaurentPoly:
    """``[n] = t**((n-1)/2) + ... + t**(-(n-1)/2)``; ``[0] = 0``."""
    if n < 0:
        raise ValueError("qint needs n >= 0")
    if n == 0:
        return LaurentPoly.from_terms({})
    if n == 1:
        return ONE
    return LaurentPoly._make(-4 * (n - 1), 8, [1] * n, [0] * n, 1)


_fact_lock = threading.Lock()
_fact_table = [ONE, ONE]


def qfact(n: int) -> LaurentPoly:
    """``[n]! = [1][2]...[n]`` with ``[0]! = 1``."""
    if n < 0:
        raise ValueError("qfact needs n >= 0")
    with _fact_lock:
        while len(_fact_table) <= n:
            _fact_table.append(_fact_table[-1] * qint(len(_fact_table)))
        return _fact_table[n]


def qbinom(l: int, s: int) -> RationalFunc:
    """Quantum binomial ``[l]! / ([s]! [l-s]!)``, a Laurent polynomial."""
    if not 0 <= s <= l:
        raise ValueError(f"qbinom needs 0 <= s <= l, got ({l}, {s})")
    q = exact_divide(qfact(l), qfact(s) * qfact(l - s))
    return RationalFunc(q, _canonical=True)


# ---------------------------------------------------------------------------
# Products of quantum integers.


@lru_cache(maxsize=None)
def _cyclotomic_q(m: int) -> tuple:
    """Integer coefficients of the cyclotomic polynomial Phi_m."""
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _int_divexact(num, list(_cyclotomic_q(d)))
    return tuple(num)


def _int_divexact(a, b):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] // b[-1]
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] -= c * y
    return q


@lru_cache(maxsize=None)
def cyclotomic_u(m: int) -> LaurentPoly:
    """``Phi_m(q)`` with ``q = t**(1/2) = u**4``."""
    c = _cyclotomic_q(m)
    return LaurentPoly._make(0, 4, list(c), [0] * len(c), 1)


def qint_cyclotomic_exponents(n: int) -> Counter:
    """``[n] = q**(1-n) * prod Phi_m(q)`` over ``m | 2n, m > 2``."""
    return Counter(m for m in range(3, 2 * n + 1) if (2 * n) % m == 0)


def factorial_exponents(pos, neg=()) -> Counter:
    """``[n]``-exponents of ``prod [a]! / prod [b]!``."""
    e = Counter()
    for a in pos:
        for n in range(2, a + 1):
            e[n] += 1
    for b in neg:
        for n in range(2, b + 1):
            e[n] -= 1
    return e


class QProduct:
    """``coeff * u**shift * prod [n]**e_n`` with exact Gaussian ``coeff``."""

    __slots__ = ("coeff", "shift", "exps")

    def __init__(self, coeff=1, shift=0, exps=None):
        self.coeff = GaussRat.coerce(coeff)
        self.shift = shift
        self.exps = Counter({n: e for n, e in (exps or {}).items() if e and n > 1})

    def __mul__(self, other: "QProduct") -> "QProduct":
        e = Counter(self.exps)
        e.update(other.exps)
        return QProduct(self.coeff * other.coeff, self.shift + other.shift, e)

    def germ(self, table: RootTable) -> Germ:
        g = table.monomial(self.shift, self.coeff)
        for n, e in self.exps.items():
            q = table.qint(n)
            if e > 0:
                for _ in range(e):
                    g = g * q
            else:
                for _ in range(-e):
                    g = g / q
        return g


def qproduct_sum(terms) -> RationalFunc:
    """Exact sum of :class:`QProduct` terms as a canonical rational function.

    A common denominator is formed from the maximal negative exponents and
    reduced cyclotomic factor by cyclotomic factor.
    """
    terms = [t for t in terms if t.coeff]
    if not terms:
        return RATFN_ZERO
    need = Counter()
    for t in terms:
        for n, e in t.exps.items():
            if e < 0:
                need[n] = max(need[n], -e)
    total = LaurentPoly.from_terms({})
    for t in terms:
        p = LaurentPoly.monomial(t.shift, t.coeff)
        for n in sorted(set(t.exps) | set(need)):
            k = t.exps.get(n, 0) + need.get(n, 0)
            if k:
                p = p * _qint_power(n, k)
        total = total + p
    den_shift = 0
    factors = Counter()
    for n, k in need.items():
        den_shift += 4 * (1 - n) * k
        for m, c in qint_cyclotomic_exponents(n).items():
            factors[m] += c * k
    return reduce_by_cyclotomics(total.shift(-den_shift), factors)


@lru_cache(maxsize=4096)
def _qint_power(n, k):
    return qint(n) ** k


def reduce_by_cyclotomics(num: LaurentPoly, factors: Counter) -> RationalFunc:
    """Canonical ``num / prod Phi_m(u**4)**k``, cancelling one factor at a time."""
    from .qring import poly_divmod, poly_gcd

    den = ONE
    if not num:
        return RATFN_ZERO
    for m in sorted(factors):
        phi = cyclotomic_u(m)
        for _ in range(factors[m]):
            # phi is monic, so reducing num modulo phi first keeps the gcd small
            rem = poly_divmod(num, phi)[1] if num.hi != num.lo else num
            if not rem:
                g = phi
            else:
                g = poly_gcd(rem, phi) if rem.hi != rem.lo else ONE
            if g.hi != g.lo:
                num = exact_divide(num, g)
                den = den * exact_divide(phi, g)
            else:
                den = den * phi
    return _finish(num, den)


# ---------------------------------------------------------------------------
# Admissibility and Delta^2.


def _admissible_tw(a, b, c) -> bool:
    return (a >= 0 and b >= 0 and c >= 0 and (a + b + c) % 2 == 0
            and a <= b + c and b <= a + c and c <= a + b)


def is_admissible(a, b, c) -> bool:
    """Triangle inequalities and integral sum."""
    return _admissible_tw(_tw(a), _tw(b), _tw(c))


def _r_admissible_tw(a, b, c, r) -> bool:
    return (_admissible_tw(a, b, c) and max(a, b, c) <= r - 2 and a + b + c <= 2 * (r - 2))


def is_r_admissible(a, b, c, r: int) -> bool:
    """Admissible, every colour at most (r-2)/2 and the sum at most r-2."""
    if r < 3:
        raise ValueError("r must be >= 3")
    return _r_admissible_tw(_tw(a), _tw(b), _tw(c), r)


@dataclass(frozen=True)
class AdmissibleTriple:
    a: HalfInt
    b: HalfInt
    c: HalfInt

    def __post_init__(self):
        for name in "abc":
            object.__setattr__(self, name, HalfInt.of(getattr(self, name)))
        if not is_admissible(self.a, self.b, self.c):
            raise ValueError(f"non-admissible triple ({self.a}, {self.b}, {self.c})")

    def twice(self):
        return self.a.twice, self.b.twice, self.c.twice


def delta_sq_product(a: int, b: int, c: int) -> QProduct:
    """Delta^2 of a doubled-integer triple as a :class:`QProduct`."""
    if not _admissible_tw(a, b, c):
        raise ValueError(f"non-admissible triple ({a}/2, {b}/2, {c}/2)")
    s = (a + b + c) // 2
    return QProduct(1, 0, factorial_exponents([s - c, s - b, s - a], [s + 1]))


def delta_squared(tr) -> RationalFunc:
    """``[i+j-k]! [i+k-j]! [j+k-i]! / [i+j+k+1]!``."""
    if not isinstance(tr, AdmissibleTriple):
        tr = AdmissibleTriple(*tr)
    return qproduct_sum([delta_sq_product(*tr.twice())])


# ---------------------------------------------------------------------------
# 6j-symbols.


def _tet_check(i, j, k, l, m, n):
    for tri in ((i, j, k), (i, m, n), (j, l, n), (k, l, m)):
        if not _admissible_tw(*tri):
            raise ValueError("6j-symbol needs four admissible triples")


def tet_terms(i, j, k, l, m, n):
    """``(sign, numerator factorial, denominator factorials)`` per z (doubled input)."""
    _tet_check(i, j, k, l, m, n)
    a1 = (i + j + k) // 2
    a2 = (i + m + n) // 2
    a3 = (j + l + n) // 2
    a4 = (k + l + m) // 2
    b1 = (i + j + l + m) // 2
    b2 = (i + k + l + n) // 2
    b3 = (j + k + m + n) // 2
    out = []
    for z in range(max(a1, a2, a3, a4), min(b1, b2, b3) + 1):
        out.append(((-1) ** z, z + 1, (z - a1, z - a2, z - a3, z - a4, b1 - z, b2 - z, b3 - z)))
    return out


def reduced_tet_sum_terms(i, j, k, l, m, n):
    return [QProduct(sign, 0, factorial_exponents([top], bottom))
            for sign, top, bottom in tet_terms(i, j, k, l, m, n)]


_tet_cache: dict = {}
_tet_lock = threading.Lock()


def reduced_tet_sum_tw(i, j, k, l, m, n) -> RationalFunc:
    key = (i, j, k, l, m, n)
    with _tet_lock:
        hit = _tet_cache.get(key)
    if hit is None:
        hit = qproduct_sum(reduced_tet_sum_terms(*key))
        with _tet_lock:
            _tet_cache[key] = hit
    return hit


def reduced_tet_sum(i, j, k, l, m, n) -> RationalFunc:
    """The alternating z-sum of the 6j-symbol without phase and Delta factors."""
    return reduced_tet_sum_tw(*(_tw(x) for x in (i, j, k, l, m, n)))


def tet_germ(table: RootTable, i, j, k, l, m, n) -> Germ:
    """Germ of the reduced z-sum at the table's root (doubled input)."""
    germs = []
    for sign, top, bottom in tet_terms(i, j, k, l, m, n):
        g = table.qfact(top)
        for b in bottom:
            g = g / table.qfact(b)
        germs.append(-g if sign < 0 else g)
    return germ_sum(germs, table.precision)


def sixj_phase_tw(i, j, k, l, m, n) -> GaussRat:
    """``sqrt(-1) ** (-2 (i+j+k+l+m+n))``."""
    return i_power(-(i + j + k + l + m + n))


def sixj_numeric(i, j, k, l, m, n, r: int, precision: int = DEFAULT_PRECISION) -> UnitEval:
    """6j-symbol at ``t = exp(2 pi i / r)`` with the positive branch of each Delta."""
    tw = tuple(_tw(x) for x in (i, j, k, l, m, n))
    a, b, c, d, e, f = tw
    triples = ((a, b, c), (a, e, f), (b, d, f), (c, d, e))
    if not all(_r_admissible_tw(*t, r) for t in triples):
        raise ValueError("sixj_numeric needs r-admissible triples")
    with mp.workprec(precision):
        table = RootTable(r, precision)
        delta_prod = mpmath.mpf(1)
        for t in triples:
            g = delta_sq_product(*t).germ(table)
            if g.order != 0:
                raise QRingError("Delta^2 vanishes under r-admissibility")
            delta_prod *= mpmath.re(g.value)
        if delta_prod <= 0:
            raise QRingError("Delta^2 product not positive")
        u = tet_germ(table, *tw)
        ph = sixj_phase_tw(*tw)
        value = Germ(0, mpmath.sqrt(delta_prod) * gauss_to_mpc(ph)) * u
        res = germ_result(value)
        if not isinstance(res, UnitEval):
            return UnitEval.from_complex(0)
        return res


def sixj_symmetric(k) -> RationalFunc:
    """The 6j-symbol with all entries ``k`` (integer), exactly."""
    kt = _tw(k)
    if kt % 2:
        raise ValueError("sixj_symmetric needs an integer colour")
    d2 = delta_sq_product(kt, kt, kt)
    d4 = d2 * d2
    ph = sixj_phase_tw(*(kt,) * 6)
    return qproduct_sum([QProduct(ph, 0, d4.exps)]) * reduced_tet_sum_tw(*(kt,) * 6)


# ---------------------------------------------------------------------------
# Region weights and the normalisation constants.


def region_weight_product(j_tw: int, euler: int, gleam_tw: int) -> QProduct:
    """``w_j**euler * t**(-j(j+1) gl) * sqrt(-1)**(4 j gl)`` (doubled colour, gleam)."""
    sign = -1 if (j_tw % 2 and euler % 2) else 1
    shift = -j_tw * (j_tw + 2) * gleam_tw
    coeff = i_power(j_tw * gleam_tw) * sign
    return QProduct(coeff, shift, {j_tw + 1: euler} if j_tw + 1 > 1 else {})


def region_weight(j, euler: int, gleam) -> RationalFunc:
    return qproduct_sum([region_weight_product(_tw(j), euler, _tw(gleam))])


def w_const(r: int) -> LaurentPoly:
    """``W = sum_{0 <= i <= (r-2)/2} w_i**2``."""
    if r < 3:
        raise ValueError("r must be >= 3")
    total = LaurentPoly.from_terms({})
    for jt in range(0, r - 1):
        total = total + qint(jt + 1) * qint(jt + 1)
    return total


W_const = w_const


def s_const(r: int) -> RationalFunc:
    """``S = W**-1 sum w_i**2 t**(-i(i+1)) sqrt(-1)**(4i)``."""
    total = LaurentPoly.from_terms({})
    for jt in range(0, r - 1):
        total = total + (qint(jt + 1) * qint(jt + 1)).shift(-2 * jt * (jt + 2)).scale(i_power(2 * jt))
    return RationalFunc(total, w_const(r))


S_const = s_const

"""Exact Laurent polynomials and rational functions in ``u = t**(1/8)``.

Coefficients are Gaussian rationals.  A :class:`LaurentPoly` is stored densely
on an arithmetic progression of exponents ``lo, lo + step, ...`` as two lists of
integers (real and imaginary numerators) over one positive common denominator;
this keeps quantum integers, whose exponents step by 8, compact.

Numeric evaluation happens at ``t = exp(2 pi i / r)`` with the principal root
``u = exp(2 pi i / (8 r))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from .kernels import convolve

DEFAULT_PRECISION = 128


class QRingError(ValueError):
    pass


@dataclass(frozen=True)
class GaussRat:
    """``re + im * sqrt(-1)`` with exact rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def coerce(cls, x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        return cls(Fraction(x), Fraction(0))

    def __bool__(self):
        return bool(self.re or self.im)

    def __add__(self, other):
        o = GaussRat.coerce(other)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussRat.coerce(other))

    def __mul__(self, other):
        o = GaussRat.coerce(other)
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm()
        if not n:
            raise ZeroDivisionError("GaussRat division by zero")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussRat.coerce(other).inverse()

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            if abs(self.im) == 1:
                return "I" if self.im > 0 else "-I"
            return f"{self.im}*I"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*I)"


I_UNIT = GaussRat(Fraction(0), Fraction(1))


def i_power(n: int) -> GaussRat:
    """``sqrt(-1) ** n`` as an exact Gaussian unit."""
    return (GaussRat(Fraction(1)), I_UNIT, GaussRat(Fraction(-1)), -I_UNIT)[n % 4]


def _lcm(a, b):
    return a // math.gcd(a, b) * b


class LaurentPoly:
    """Immutable Laurent polynomial in ``u`` over the Gaussian rationals."""

    __slots__ = ("lo", "step", "re", "im", "den", "_hash")

    def __init__(self, lo, step, re, im, den):
        # Use the constructors below; this trusts its (normalised) input.
        self.lo = lo
        self.step = step
        self.re = re
        self.im = im
        self.den = den
        self._hash = None

    # ---- construction -------------------------------------------------
    @classmethod
    def _make(cls, lo, step, re, im, den=1):
        n = len(re)
        first = last = -1
        for k in range(n):
            if re[k] or im[k]:
                if first < 0:
                    first = k
                last = k
        if first < 0:
            return ZERO
        g = 0
        for k in range(first + 1, last + 1):
            if re[k] or im[k]:
                g = math.gcd(g, k - first)
        new_lo = lo + first * step
        if g == 0:
            new_re, new_im, new_step = (re[first],), (im[first],), 1
        else:
            new_re = tuple(re[first:last + 1:g])
            new_im = tuple(im[first:last + 1:g])
            new_step = step * g
        if den < 0:
            den = -den
            new_re = tuple(-x for x in new_re)
            new_im = tuple(-x for x in new_im)
        c = math.gcd(den, *new_re, *new_im)
        if c > 1:
            den //= c
            new_re = tuple(x // c for x in new_re)
            new_im = tuple(x // c for x in new_im)
        return cls(new_lo, new_step, new_re, new_im, den)

    @classmethod
    def from_terms(cls, terms) -> "LaurentPoly":
        """Build from ``{exponent: coefficient}`` (or an iterable of pairs)."""
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict[int, GaussRat] = {}
        for e, c in items:
            acc[e] = acc.get(e, GaussRat()) + GaussRat.coerce(c)
        acc = {e: c for e, c in acc.items() if c}
        if not acc:
            return ZERO
        den = 1
        for c in acc.values():
            den = _lcm(den, _lcm(c.re.denominator, c.im.denominator))
        lo = min(acc)
        hi = max(acc)
        re = [0] * (hi - lo + 1)
        im = [0] * (hi - lo + 1)
        for e, c in acc.items():
            re[e - lo] = int(c.re * den)
            im[e - lo] = int(c.im * den)
        return cls._make(lo, 1, re, im, den)

    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> "LaurentPoly":
        return cls.from_terms({exponent: coeff})

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls.from_terms({0: c})

    # ---- inspection ---------------------------------------------------
    @property
    def hi(self) -> int:
        return self.lo + self.step * (len(self.re) - 1)

    def __bool__(self):
        return bool(self.re)

    def is_zero(self) -> bool:
        return not self.re

    def is_monomial(self) -> bool:
        return sum(1 for a, b in zip(self.re, self.im) if a or b) == 1

    def terms(self) -> dict[int, GaussRat]:
        out = {}
        for k, (a, b) in enumerate(zip(self.re, self.im)):
            if a or b:
                out[self.lo + k * self.step] = GaussRat(Fraction(a, self.den), Fraction(b, self.den))
        return out

    def coeff(self, exponent: int) -> GaussRat:
        return self.terms().get(exponent, GaussRat())

    def exponents(self) -> list[int]:
        return sorted(self.terms())

    def is_quarter_graded(self) -> bool:
        """True iff every exponent is even, i.e. the poly lies in ``t**(1/4)``."""
        return not self.re or (self.lo % 2 == 0 and (len(self.re) == 1 or self.step % 2 == 0))

    def is_real(self) -> bool:
        return not any(self.im)

    def _key(self):
        return (self.lo, self.step, self.re, self.im, self.den)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction, GaussRat)):
                return self == LaurentPoly.constant(other)
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    # ---- arithmetic ---------------------------------------------------
    def _dense(self, lo, step, length, scale):
        re = [0] * length
        im = [0] * length
        off = (self.lo - lo) // step
        ratio = self.step // step
        for k, (a, b) in enumerate(zip(self.re, self.im)):
            re[off + k * ratio] = a * scale
            im[off + k * ratio] = b * scale
        return re, im

    def _addsub(self, other, sign):
        if not other.re:
            return self
        if not self.re:
            return -other if sign < 0 else other
        g = math.gcd(self.step, other.step, abs(self.lo - other.lo))
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        n = (hi - lo) // g + 1
        den = _lcm(self.den, other.den)
        ar, ai = self._dense(lo, g, n, den // self.den)
        br, bi = other._dense(lo, g, n, sign * (den // other.den))
        return LaurentPoly._make(lo, g, [x + y for x, y in zip(ar, br)],
                                 [x + y for x, y in zip(ai, bi)], den)

    def __add__(self, other):
        return self._addsub(_as_poly(other), 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._addsub(_as_poly(other), -1)

    def __rsub__(self, other):
        return _as_poly(other)._addsub(self, -1)

    def __neg__(self):
        if not self.re:
            return self
        return LaurentPoly(self.lo, self.step, tuple(-x for x in self.re),
                           tuple(-x for x in self.im), self.den)

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.re or not other.re:
            return ZERO
        g = math.gcd(self.step, other.step)
        ar, ai = self._dense(self.lo, g, (self.hi - self.lo) // g + 1, 1)
        br, bi = other._dense(other.lo, g, (other.hi - other.lo) // g + 1, 1)
        a_real = not any(ai)
        b_real = not any(bi)
        rr = convolve(ar, br)
        if a_real and b_real:
            ri = [0] * len(rr)
        elif a_real:
            ri = convolve(ar, bi)
        elif b_real:
            ri = convolve(ai, br)
        else:
            rr = [x - y for x, y in zip(rr, convolve(ai, bi))]
            ri = [x + y for x, y in zip(convolve(ar, bi), convolve(ai, br))]
        return LaurentPoly._make(self.lo + other.lo, g, rr, ri, self.den * other.den)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise QRingError("negative power of a Laurent polynomial; use RationalFunc")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``u**k``."""
        if not self.re or k == 0:
            return self
        return LaurentPoly(self.lo + k, self.step, self.re, self.im, self.den)

    def scale(self, c) -> "LaurentPoly":
        return self * LaurentPoly.constant(c)

    def substitute_power(self, m: int) -> "LaurentPoly":
        """``p(u) -> p(u**m)`` for ``m >= 1``."""
        if not self.re:
            return self
        return LaurentPoly(self.lo * m, self.step * m if len(self.re) > 1 else 1,
                           self.re, self.im, self.den)

    # ---- numerics -----------------------------------------------------
    def evaluate(self, u):
        """Value at the mpmath complex ``u`` (call inside a workprec block)."""
        if not self.re:
            return mpmath.mpc(0)
        v = u ** self.step
        acc = mpmath.mpc(0)
        for a, b in zip(reversed(self.re), reversed(self.im)):
            acc = acc * v + mpmath.mpc(a, b)
        return acc * u ** self.lo / self.den

    def l1_norm(self):
        return mpmath.fsum(mpmath.hypot(a, b) for a, b in zip(self.re, self.im)) / self.den

    # ---- text ---------------------------------------------------------
    def __repr__(self):
        return f"LaurentPoly({self.to_string('u')})"

    def to_string(self, var="u") -> str:
        if not self.re:
            return "0"
        parts = []
        for e, c in sorted(self.terms().items(), reverse=True):
            parts.append(_fmt_term(c, _fmt_power(var, e)))
        return _join_terms(parts)

    def to_t_string(self) -> str:
        """Pretty form in ``t``; exponents shown as multiples of 1/8."""
        if not self.re:
            return "0"
        parts = []
        for e, c in sorted(self.terms().items(), reverse=True):
            parts.append(_fmt_term(c, _fmt_power("t", Fraction(e, 8))))
        return _join_terms(parts)


def _fmt_power(var, e):
    if e == 0:
        return ""
    if e == 1:
        return var
    if isinstance(e, Fraction) and e.denominator != 1:
        return f"{var}^({e})"
    return f"{var}^{e}" if e > 0 else f"{var}^({e})"


def _fmt_term(c: GaussRat, mono: str) -> str:
    if not mono:
        return str(c)
    if c == GaussRat(Fraction(1)):
        return mono
    if c == GaussRat(Fraction(-1)):
        return "-" + mono
    return f"{c}*{mono}"


def _join_terms(parts):
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


ZERO = LaurentPoly(0, 1, (), (), 1)
ONE = LaurentPoly(0, 1, (1,), (0,), 1)


def _as_poly(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction, GaussRat, complex)):
        return LaurentPoly.constant(x)
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


# ---------------------------------------------------------------------------
# Dense Gaussian-integer polynomial helpers (gcd and exact division).
# A dense poly is a list of (re, im) integer pairs, constant term first.


def _g_mul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _g_divmod_round(x, y):
    n = y[0] * y[0] + y[1] * y[1]
    num = _g_mul(x, (y[0], -y[1]))
    q = ((2 * num[0] + n) // (2 * n), (2 * num[1] + n) // (2 * n))
    qy = _g_mul(q, y)
    return q, (x[0] - qy[0], x[1] - qy[1])


def _g_gcd(x, y):
    while y != (0, 0):
        _, rem = _g_divmod_round(x, y)
        x, y = y, rem
    return x


def _g_exact_div(x, y):
    n = y[0] * y[0] + y[1] * y[1]
    num = _g_mul(x, (y[0], -y[1]))
    return (num[0] // n, num[1] // n)


def _content(p):
    z = math.gcd(*(c for pair in p for c in pair))
    if z == 0:
        return (0, 0)
    g = (0, 0)
    for c in p:
        if c != (0, 0):
            g = _g_gcd(g, (c[0] // z, c[1] // z)) if g != (0, 0) else (c[0] // z, c[1] // z)
            if g[0] * g[0] + g[1] * g[1] == 1:
                break
    return (g[0] * z, g[1] * z)


def _primitive(p):
    c = _content(p)
    if c in ((1, 0), (0, 0)):
        return p
    return [_g_exact_div(x, c) for x in p]


def _trim(p):
    while p and p[-1] == (0, 0):
        p.pop()
    return p


def _prem_step(a, b):
    """Pseudo-remainder of ``a`` by ``b`` (both trimmed, deg a >= deg b)."""
    a = list(a)
    beta = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        alpha = a[-1]
        shift = len(a) - 1 - db
        a = [_g_mul(beta, x) for x in a]
        for k, y in enumerate(b):
            t = _g_mul(alpha, y)
            x = a[shift + k]
            a[shift + k] = (x[0] - t[0], x[1] - t[1])
        _trim(a)
        if len(a) > 8:
            a = _primitive(a)
    return a


def _dense_gcd(a, b):
    a = _primitive(_trim(list(a)))
    b = _primitive(_trim(list(b)))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem_step(a, b)
        a, b = b, _primitive(r) if r else r
    return a


def _to_dense(p: LaurentPoly, step: int):
    """Dense Gaussian-integer coefficients of ``p * u**(-p.lo) * den`` in ``u**step``."""
    ratio = p.step // step
    out = [(0, 0)] * ((p.hi - p.lo) // step + 1)
    for k, (a, b) in enumerate(zip(p.re, p.im)):
        out[k * ratio] = (a, b)
    return out


def _from_dense(d, step, lo=0, den=1) -> LaurentPoly:
    return LaurentPoly._make(lo, step, [c[0] for c in d], [c[1] for c in d], den)


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """A gcd in the Laurent ring (defined up to units ``c * u**k``)."""
    if not a:
        return b
    if not b:
        return a
    if len(a.re) == 1 or len(b.re) == 1:
        return ONE
    step = math.gcd(a.step, b.step)
    g = _dense_gcd(_to_dense(a, step), _to_dense(b, step))
    return _from_dense(g, step)


def _divmod_unit_lead(a, b):
    """Integer division of dense Gaussian polys whose divisor has a unit leading coefficient."""
    inv = (b[-1][0], -b[-1][1])
    db = len(b) - 1
    a = list(a)
    q = [(0, 0)] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        c = _g_mul(a[k + db], inv)
        if c != (0, 0):
            q[k] = c
            for j, y in enumerate(b):
                t = _g_mul(c, y)
                x = a[k + j]
                a[k + j] = (x[0] - t[0], x[1] - t[1])
    return q, a[:db]


def poly_divmod(a: LaurentPoly, b: LaurentPoly):
    """Division in ``Q(i)[u]`` after clearing both lowest exponents.

    Returns ``(q, r)`` with ``a * u**(-a.lo) = q * b * u**(-b.lo) + r``.
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ZERO, ZERO
    step = math.gcd(a.step, b.step)
    lead = (b.re[-1], b.im[-1])
    if b.den == 1 and lead[0] * lead[0] + lead[1] * lead[1] == 1:
        q, rem = _divmod_unit_lead(_to_dense(a, step), _to_dense(b, step))
        return _from_dense(q, step, 0, a.den), _from_dense(rem, step, 0, a.den)
    num = [GaussRat(Fraction(x, a.den), Fraction(y, a.den)) for x, y in _to_dense(a, step)]
    dv = [GaussRat(Fraction(x, b.den), Fraction(y, b.den)) for x, y in _to_dense(b, step)]
    inv = dv[-1].inverse()
    db = len(dv) - 1
    q = [GaussRat()] * max(len(num) - db, 0)
    for k in range(len(num) - 1 - db, -1, -1):
        c = num[k + db] * inv
        if c:
            q[k] = c
            for j, y in enumerate(dv):
                num[k + j] = num[k + j] - c * y
    rem = num[:db] if db else []
    qp = LaurentPoly.from_terms({k * step: c for k, c in enumerate(q) if c})
    rp = LaurentPoly.from_terms({k * step: c for k, c in enumerate(rem) if c})
    return qp, rp


def exact_divide(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """``a / b`` in the Laurent ring; raises if ``b`` does not divide ``a``."""
    if len(b.re) == 1:
        c = GaussRat(Fraction(b.re[0], b.den), Fraction(b.im[0], b.den)).inverse()
        return a.scale(c).shift(-b.lo)
    q, r = poly_divmod(a, b)
    if r:
        raise QRingError("inexact polynomial division")
    return q.shift(a.lo - b.lo)


# ---------------------------------------------------------------------------


class RationalFunc:
    """Canonical quotient of Laurent polynomials.

    Canonical form: numerator and denominator coprime, the denominator's
    lowest exponent is 0 and its lowest coefficient is 1.  Equal values have
    identical canonical forms.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _canonical=False):
        num = _as_poly(num)
        den = ONE if den is None else _as_poly(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den

    @classmethod
    def normalize(cls, num, den) -> "RationalFunc":
        return cls(num, den)

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_polynomial(self):
        return self.den == ONE

    def is_quarter_graded(self):
        return self.num.is_quarter_graded() and self.den.is_quarter_graded()

    def __eq__(self, other):
        if not isinstance(other, RationalFunc):
            try:
                other = RationalFunc(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RationalFunc(-self.num, self.den, _canonical=True)

    def __add__(self, other):
        other = _as_ratfn(other)
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return RationalFunc(self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        b1 = exact_divide(self.den, g)
        d1 = exact_divide(other.den, g)
        return RationalFunc(self.num * d1 + other.num * b1, self.den * d1)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_ratfn(other))

    def __rsub__(self, other):
        return _as_ratfn(other) - self

    def __mul__(self, other):
        other = _as_ratfn(other)
        if not self.num or not other.num:
            return RATFN_ZERO
        a, b, c, d = self.num, self.den, other.num, other.den
        if d != ONE:
            g = poly_gcd(a, d)
            if g.hi != g.lo:
                a, d = exact_divide(a, g), exact_divide(d, g)
        if b != ONE:
            g = poly_gcd(c, b)
            if g.hi != g.lo:
                c, b = exact_divide(c, g), exact_divide(b, g)
        return _finish(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return _finish(self.den, self.num)

    def __truediv__(self, other):
        return self * _as_ratfn(other).inverse()

    def __rtruediv__(self, other):
        return _as_ratfn(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return _finish(self.num ** n, self.den ** n)

    def shift(self, k):
        return RationalFunc(self.num.shift(k), self.den, _canonical=True)

    def __repr__(self):
        return f"RationalFunc({self.to_pretty()})"

    def to_pretty(self) -> str:
        """Human form in ``t`` with fractional exponents."""
        if self.den == ONE:
            return self.num.to_t_string()
        return f"({self.num.to_t_string()})/({self.den.to_t_string()})"

    def to_canonical_text(self) -> str:
        """Exact serialisation: ``num | den`` coefficient lists in u-units."""
        return f"{_coeff_list(self.num)} | {_coeff_list(self.den)}"

    def to_json(self) -> dict:
        return {"num": _coeff_json(self.num), "den": _coeff_json(self.den),
                "exponent_unit": "t^(1/8)"}

    @classmethod
    def from_json(cls, data) -> "RationalFunc":
        return cls(_poly_from_json(data["num"]), _poly_from_json(data["den"]))


def _coeff_list(p: LaurentPoly) -> str:
    return "[" + ", ".join(f"({e}: {c})" for e, c in sorted(p.terms().items())) + "]"


def _coeff_json(p: LaurentPoly):
    return [[e, str(c.re), str(c.im)] for e, c in sorted(p.terms().items())]


def _poly_from_json(rows) -> LaurentPoly:
    return LaurentPoly.from_terms({int(e): GaussRat(Fraction(re), Fraction(im)) for e, re, im in rows})


def _finish(num, den):
    """Scale an already coprime pair into canonical form."""
    if not num:
        return RATFN_ZERO
    k = den.lo
    c = GaussRat(Fraction(den.re[0], den.den), Fraction(den.im[0], den.den)).inverse()
    return RationalFunc(num.shift(-k).scale(c), den.shift(-k).scale(c), _canonical=True)


def _canonicalize(num, den):
    if not num:
        return ZERO, ONE
    g = poly_gcd(num, den)
    if g.hi != g.lo:
        num = exact_divide(num, g)
        den = exact_divide(den, g)
    r = _finish(num, den)
    return r.num, r.den


def _as_ratfn(x) -> RationalFunc:
    if isinstance(x, RationalFunc):
        return x
    return RationalFunc(_as_poly(x), _canonical=isinstance(x, (int, Fraction, GaussRat)))


RATFN_ZERO = RationalFunc(ZERO, ONE, _canonical=True)
RATFN_ONE = RationalFunc(ONE, ONE, _canonical=True)


def ratfn_normalize(num, den) -> RationalFunc:
    return RationalFunc(num, den)


def laurent_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Numeric values at roots of unity.


@dataclass(frozen=True)
class UnitEval:
    """A complex number ``exp(log_mag + i * phase)``; ``log_mag = -inf`` is zero."""

    log_mag: mpmath.mpf
    phase: mpmath.mpf

    @classmethod
    def from_complex(cls, z) -> "UnitEval":
        z = mpmath.mpc(z)
        if z == 0:
            return cls(mpmath.ninf, mpmath.mpf(0))
        return cls(mpmath.log(abs(z)), mpmath.arg(z))

    @classmethod
    def one(cls) -> "UnitEval":
        return cls(mpmath.mpf(0), mpmath.mpf(0))

    def is_zero(self):
        return self.log_mag == mpmath.ninf

    def to_complex(self):
        if self.is_zero():
            return mpmath.mpc(0)
        return mpmath.exp(mpmath.mpc(self.log_mag, self.phase))

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return UnitEval(mpmath.ninf, mpmath.mpf(0))
        ph = self.phase + other.phase
        if ph > mpmath.pi:
            ph -= 2 * mpmath.pi
        elif ph <= -mpmath.pi:
            ph += 2 * mpmath.pi
        return UnitEval(self.log_mag + other.log_mag, ph)

    def __add__(self, other):
        return UnitEval.from_complex(mpmath.fsum([self.to_complex(), other.to_complex()]))

    def __complex__(self):
        return complex(self.to_complex())

    @property
    def real(self):
        return float(self.to_complex().real)

    @property
    def imag(self):
        return float(self.to_complex().imag)

    def __repr__(self):
        return f"UnitEval(log_mag={mpmath.nstr(self.log_mag, 15)}, phase={mpmath.nstr(self.phase, 15)})"

    def to_json(self):
        return {"log_mag": mpmath.nstr(self.log_mag, 30), "phase": mpmath.nstr(self.phase, 30)}


def gauss_to_mpc(c: GaussRat):
    return mpmath.mpc(mpmath.mpf(c.re.numerator) / c.re.denominator,
                      mpmath.mpf(c.im.numerator) / c.im.denominator)


class _Special:
    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


ZERO_VALUE = _Special("Zero")
POLE = _Special("Pole")


def root_u(r: int):
    """``u = exp(2 pi i / (8 r))``, the principal eighth root of ``t``."""
    return mpmath.expjpi(mpmath.mpf(1) / (4 * r))


def _near_zero(value, poly: LaurentPoly, precision: int) -> bool:
    scale = poly.l1_norm()
    return abs(value) <= scale * mpmath.ldexp(1, -(precision // 2))


def eval_at_root(f, r: int, precision: int = DEFAULT_PRECISION):
    """Evaluate at ``t = exp(2 pi i / r)``: a :class:`UnitEval`, ``ZERO_VALUE`` or ``POLE``."""
    if r < 1:
        raise ValueError("r must be >= 1")
    f = _as_ratfn(f)
    with mp.workprec(precision):
        u = root_u(r)
        n = f.num.evaluate(u)
        d = f.den.evaluate(u)
        n_zero = _near_zero(n, f.num, precision) if f.num else True
        d_zero = _near_zero(d, f.den, precision)
        if d_zero:
            if n_zero:
                raise QRingError("0/0 after gcd removal")
            return POLE
        if n_zero:
            return ZERO_VALUE
        return UnitEval.from_complex(n / d)


# ---------------------------------------------------------------------------
# Leading-term ("germ") arithmetic for evaluating products of quantum integers
# at a root of unity where some factors vanish.  With t = exp(2 pi i tau) and
# tau = 1/r + delta, each quantity is c * delta**order + O(delta**(order+1)).


@dataclass(frozen=True)
class Germ:
    order: int
    value: object  # mpmath.mpc
    exact: bool = True  # False: order is only a lower bound and value is unknown

    def __mul__(self, other):
        return Germ(self.order + other.order, self.value * other.value, self.exact and other.exact)

    def __truediv__(self, other):
        if not other.exact:
            raise QRingError("division by a germ of unknown order")
        return Germ(self.order - other.order, self.value / other.value, self.exact)

    def __neg__(self):
        return Germ(self.order, -self.value, self.exact)


GERM_ZERO = Germ(10**9, mpmath.mpc(0), True)


class IndeterminateError(QRingError):
    pass


def germ_sum(germs, precision: int) -> Germ:
    """Sum germs keeping the lowest order; cancellation raises the order bound."""
    germs = [g for g in germs if g is not GERM_ZERO]
    if not germs:
        return GERM_ZERO
    low = min(g.order for g in germs)
    lead = [g for g in germs if g.order == low]
    if any(not g.exact for g in lead):
        return Germ(low, mpmath.mpc(0), False)
    total = mpmath.fsum(g.value for g in lead)
    scale = mpmath.fsum(abs(g.value) for g in lead)
    if abs(total) <= scale * mpmath.ldexp(1, -(precision // 2)):
        return Germ(low + 1, mpmath.mpc(0), False)
    return Germ(low, total, True)


def germ_result(g: Germ):
    """Map a germ to an evaluation: value, ``ZERO_VALUE`` or ``POLE``."""
    if g is GERM_ZERO or g.order > 0:
        return ZERO_VALUE
    if not g.exact:
        raise IndeterminateError("leading terms cancelled; value at the root is undetermined")
    if g.order < 0:
        return POLE
    if g.value == 0:
        return ZERO_VALUE
    return UnitEval.from_complex(g.value)


class RootTable:
    """Germs of ``[n]``, ``[n]!`` and monomials at ``t = exp(2 pi i / r)``.

    Build and use inside ``mp.workprec(precision)``.
    """

    def __init__(self, r: int, precision: int = DEFAULT_PRECISION):
        self.r = r
        self.precision = precision
        self.u = root_u(r)
        self._sin1 = mpmath.sinpi(mpmath.mpf(1) / r)
        self._q = [Germ(0, mpmath.mpc(0))]
        self._f = [Germ(0, mpmath.mpc(1))]

    def qint(self, n: int) -> Germ:
        while len(self._q) <= n:
            m = len(self._q)
            if m % self.r == 0:
                # d/d(delta) sin(pi m tau) at tau = 1/r is (-1)**(m/r) * pi * m
                sign = -1 if (m // self.r) % 2 else 1
                self._q.append(Germ(1, mpmath.mpc(sign * mpmath.pi * m / self._sin1)))
            else:
                self._q.append(Germ(0, mpmath.mpc(mpmath.sinpi(mpmath.mpf(m) / self.r) / self._sin1)))
        return self._q[n]

    def qfact(self, n: int) -> Germ:
        while len(self._f) <= n:
            m = len(self._f)
            self._f.append(self._f[-1] * self.qint(m))
        return self._f[n]

    def monomial(self, exponent: int, coeff: GaussRat = None) -> Germ:
        v = mpmath.expjpi(mpmath.mpf(exponent) / (4 * self.r))
        if coeff is not None:
            v *= gauss_to_mpc(coeff)
        return Germ(0, v)

    def poly(self, p: LaurentPoly) -> Germ:
        """Germ of a Laurent polynomial that does not vanish at the root."""
        val = p.evaluate(self.u)
        if _near_zero(val, p, self.precision):
            raise QRingError("polynomial vanishes at the root; use factored germs")
        return Germ(0, val)

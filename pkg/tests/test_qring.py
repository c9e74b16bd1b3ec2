from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from shadowjones.qalg import qint
from shadowjones.qring import (
    ONE,
    POLE,
    RATFN_ONE,
    ZERO,
    ZERO_VALUE,
    GaussRat,
    Germ,
    IndeterminateError,
    LaurentPoly,
    QRingError,
    RationalFunc,
    RootTable,
    UnitEval,
    eval_at_root,
    exact_divide,
    germ_result,
    germ_sum,
    i_power,
    poly_gcd,
)

coeff = st.integers(-5, 5)
polys = st.dictionaries(st.integers(-12, 12), coeff, max_size=6).map(LaurentPoly.from_terms)
gauss_polys = st.dictionaries(st.integers(-12, 12), st.tuples(coeff, coeff), max_size=5).map(
    lambda d: LaurentPoly.from_terms({e: GaussRat(Fraction(a), Fraction(b)) for e, (a, b) in d.items()}))
nonzero = polys.filter(bool)


def _at(p, z):
    with mpmath.workprec(100):
        return complex(p.evaluate(mpmath.mpc(z)))


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(gauss_polys, gauss_polys)
def test_multiplication_matches_evaluation(a, b):
    z = 0.8 + 0.35j
    assert _at(a * b, z) == pytest.approx(_at(a, z) * _at(b, z), rel=1e-9, abs=1e-9)


@given(gauss_polys, nonzero)
def test_exact_division_round_trip(a, b):
    assert exact_divide(a * b, b) == a


def test_inexact_division_raises():
    with pytest.raises(QRingError):
        exact_divide(LaurentPoly.from_terms({0: 1, 1: 1}), LaurentPoly.from_terms({0: 1, 2: 1}))


@given(nonzero, nonzero, nonzero)
def test_canonical_form_is_unique(a, b, c):
    assert RationalFunc(a * c, b * c) == RationalFunc(a, b)
    f = RationalFunc(a, b)
    assert f.den.lo == 0
    assert f.den.coeff(0) == GaussRat(Fraction(1))


@given(nonzero, nonzero)
def test_gcd_divides_both(a, b):
    g = poly_gcd(a, b)
    exact_divide(a, g)
    exact_divide(b, g)


def test_quarter_root_example():
    # (u^4 - 1) / (u^2 - 1) = u^2 + 1 = t^(1/4) + 1
    f = RationalFunc(LaurentPoly.from_terms({4: 1, 0: -1}), LaurentPoly.from_terms({2: 1, 0: -1}))
    assert f == RationalFunc(LaurentPoly.from_terms({2: 1, 0: 1}))
    assert f.to_pretty() == "t^(1/4) + 1"


def test_rational_arithmetic():
    a = RationalFunc(qint(3), qint(2))
    b = RationalFunc(qint(2), qint(3))
    assert a * b == RATFN_ONE
    assert a / a == RATFN_ONE
    assert (a + b) - b == a
    assert a ** 2 * b ** 2 == RATFN_ONE


def test_json_round_trip():
    f = RationalFunc(qint(5).scale(GaussRat(Fraction(1, 3), Fraction(2))), qint(3))
    assert RationalFunc.from_json(f.to_json()) == f


def test_i_power_cycles():
    assert [i_power(k) for k in range(4)] == [GaussRat(Fraction(1)), GaussRat(Fraction(0), Fraction(1)),
                                              GaussRat(Fraction(-1)), GaussRat(Fraction(0), Fraction(-1))]
    assert i_power(-1) == i_power(3)


def test_golden_ratio_at_fifth_root():
    v = eval_at_root(qint(2), 5)
    assert complex(v) == pytest.approx((1 + 5**0.5) / 2)


def test_zero_and_pole_at_roots():
    assert eval_at_root(qint(5), 5) is ZERO_VALUE
    assert eval_at_root(RationalFunc(ONE, qint(5)), 5) is POLE
    assert eval_at_root(RationalFunc(ONE, qint(5)), 7) is not POLE


@pytest.mark.parametrize("n,r", [(3, 7), (4, 9), (6, 13)])
def test_qint_is_sine_ratio(n, r):
    v = eval_at_root(qint(n), r)
    assert complex(v) == pytest.approx(mpmath.sin(mpmath.pi * n / r) / mpmath.sin(mpmath.pi / r))


def test_unit_eval_multiplication():
    a = UnitEval.from_complex(2j)
    b = UnitEval.from_complex(-3)
    assert complex(a * b) == pytest.approx(-6j)
    assert complex(a + b) == pytest.approx(-3 + 2j)


def test_germs_track_vanishing_quantum_integers():
    with mpmath.workprec(128):
        table = RootTable(5)
        q5 = table.qint(5)
        assert q5.order == 1
        # [10]/[5] at a 5th root: limit (-1)^... * 2
        ratio = germ_result(table.qint(10) / q5)
        assert complex(ratio) == pytest.approx(-2)
        assert germ_result(table.qint(5)) is ZERO_VALUE
        assert germ_result(Germ(0, mpmath.mpc(1)) / q5) is POLE


def test_germ_cancellation_is_flagged():
    with mpmath.workprec(128):
        g = germ_sum([Germ(0, mpmath.mpc(1)), Germ(0, mpmath.mpc(-1))], 128)
        assert not g.exact
        assert germ_result(g) is ZERO_VALUE
        h = germ_sum([Germ(-1, mpmath.mpc(1)), Germ(-1, mpmath.mpc(-1))], 128)
        with pytest.raises(IndeterminateError):
            germ_result(h)

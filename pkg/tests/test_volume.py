import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from shadowjones import builders as B
from shadowjones.statesum import jones_numeric
from shadowjones.volume import (
    L_alpha_beta,
    LobachevskyError,
    LobParams,
    binomial_sum_log,
    lobachevsky,
    lobachevsky_quad,
    qfact_asymptotic_residual,
    residual_profile,
    vc_sequence,
    vc_sequence_csv,
    vc_target,
    vol_oct,
)

angles = st.floats(-20, 20, allow_nan=False)


def test_octahedron_volume():
    assert vol_oct() == pytest.approx(3.66386237670887606, abs=1e-14)
    assert vc_target(1) == pytest.approx(1.16624, abs=5e-5)
    assert vc_target(3) == pytest.approx(3 * vc_target(1))


@pytest.mark.parametrize("x", [0.1, 0.5, math.pi / 6, math.pi / 4, 1.2, 2.9, -0.7, 4.0, -5.5])
def test_matches_quadrature(x):
    assert lobachevsky(x) == pytest.approx(float(lobachevsky_quad(x)), abs=1e-13)


def test_known_values():
    assert lobachevsky(math.pi / 6) == pytest.approx(1.5 * lobachevsky(math.pi / 3), abs=1e-14)
    assert lobachevsky(0.0) == 0.0
    assert abs(lobachevsky(math.pi / 2)) < 1e-15


@given(angles)
def test_odd(x):
    assert lobachevsky(-x) == pytest.approx(-lobachevsky(x), abs=1e-14)


@given(angles)
def test_pi_periodic(x):
    assert lobachevsky(x + math.pi) == pytest.approx(lobachevsky(x), abs=1e-12)


@given(angles)
def test_duplication(x):
    assert lobachevsky(2 * x) == pytest.approx(2 * lobachevsky(x) + 2 * lobachevsky(x + math.pi / 2), abs=1e-12)


def test_bad_parameters():
    with pytest.raises(ValueError):
        LobParams(tolerance=0)
    with pytest.raises(LobachevskyError):
        lobachevsky(3.0, LobParams(tolerance=1e-300, max_terms=3))
    with pytest.raises(ValueError):
        lobachevsky(math.inf)


def test_l_alpha_beta_against_quadrature():
    a, b = 0.4, 0.3
    want = lobachevsky_quad(a) + lobachevsky_quad(math.pi / 2 - a + b) - lobachevsky_quad(math.pi / 2 + b)
    assert L_alpha_beta(a, b) == pytest.approx(float(want), abs=1e-13)


@pytest.mark.parametrize("k,value", [(1, 2.0), (2, 8.854101966249685)])
def test_binomial_sum_small(k, value):
    assert math.exp(binomial_sum_log(k)) == pytest.approx(value, rel=1e-13)
    assert float(mpmath.exp(binomial_sum_log(k, 120))) == pytest.approx(value, rel=1e-13)


@pytest.mark.parametrize("d", [3, 7, 15, 31])
def test_binomial_sum_is_bouquet_jones(d):
    val = jones_numeric(B.universal_for(1), d, d, 128)
    assert float(val.log_mag) == pytest.approx(binomial_sum_log((d - 1) // 2), rel=1e-12)


def test_kernel_and_exact_log_agree():
    for k in (10, 100, 250):
        assert binomial_sum_log(k) == pytest.approx(float(binomial_sum_log(k, 200)), rel=1e-12)


def test_vc_sequence_rows_and_csv():
    rows = vc_sequence(2, 11)
    assert [r.record.d for r in rows] == [3, 5, 7, 9, 11]
    assert all(r.gap > 0 for r in rows)
    lines = vc_sequence_csv(rows).splitlines()
    assert lines[0] == "d,status,log_mag,a_d,target,gap"
    assert len(lines) == 6


def test_vc_sequence_scales_with_c():
    one, three = vc_sequence(1, 21), vc_sequence(3, 21)
    for a, b in zip(one, three):
        assert float(b.record.a_d) == pytest.approx(3 * float(a.record.a_d))


def test_qfact_residual_decreases():
    r = [residual_profile(d)[0] for d in (11, 101, 1001)]
    assert r[0] > r[1] > r[2]
    with pytest.raises(ValueError):
        qfact_asymptotic_residual(10, 2)
    with pytest.raises(ValueError):
        qfact_asymptotic_residual(11, 5)

import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

from trapgates.coupling import (
    MAX_PHONON,
    laguerre,
    rabi_frequency,
    rabi_frequency_laguerre,
)


def brute_force(m_lower, k, eta, omega=1.0):
    """Display formula with explicit factorials and binomials."""
    m = m_lower + k
    total = sum((-eta**2) ** n / math.factorial(k + n) * math.comb(m - k, n)
                for n in range(m - k + 1))
    return (omega * eta**k * math.exp(-eta**2 / 2) / 2
            * math.sqrt(math.factorial(m) / math.factorial(m - k)) * total)


def test_ground_carrier_is_single_term():
    for eta in (0.1, 0.5, 0.9):
        assert rabi_frequency(0, 0, eta, 3.0) == pytest.approx(3.0 * math.exp(-eta**2 / 2) / 2, rel=1e-15)


def test_first_sideband_at_table_eta():
    # brute force gives 0.9692 * exp(-0.9692**2 / 2) / 2
    expected = brute_force(0, 1, 0.9692)
    assert expected == pytest.approx(0.302975, abs=1e-6)
    assert rabi_frequency(0, 1, 0.9692) == pytest.approx(expected, rel=1e-14)
    assert rabi_frequency_laguerre(0, 1, 0.9692) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("m_lower", range(6))
def test_small_eta_limit(m_lower):
    eta = 1e-8
    assert rabi_frequency(m_lower, 0, eta) == pytest.approx(0.5, rel=1e-7)
    for k in (1, 2, 3):
        assert abs(rabi_frequency(m_lower, k, eta)) < 1e-7


@pytest.mark.parametrize("eta", [0.05, 0.2355, 0.4819, 0.9064, 0.99])
def test_sideband_ratio(eta):
    r01 = rabi_frequency(0, 1, eta)
    assert r01 == pytest.approx(eta * math.exp(-eta**2 / 2) / 2, rel=1e-14)
    assert rabi_frequency(1, 1, eta) / r01 == pytest.approx((2 - eta**2) / math.sqrt(2), rel=1e-14)


def test_laguerre_low_orders():
    x = 0.37
    assert laguerre(0, 3, x) == 1.0
    assert laguerre(1, 1, x) == pytest.approx(2 - x)
    assert laguerre(2, 0, x) == pytest.approx(1 - 2 * x + x * x / 2)


def test_one_one_identity():
    eta = 0.6
    x = eta**2
    # sum form 1 - x/2 equals (1!/2!) L_1^1(x)
    assert 1 - x / 2 == pytest.approx(0.5 * laguerre(1, 1, x), rel=1e-15)
    assert rabi_frequency(1, 1, eta) == pytest.approx(rabi_frequency_laguerre(1, 1, eta), rel=1e-14)


@pytest.mark.parametrize("k", range(5))
def test_zero_phonon_agrees_exactly(k):
    assert rabi_frequency(0, k, 0.7) == pytest.approx(rabi_frequency_laguerre(0, k, 0.7), rel=1e-15)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 12), st.integers(0, 3), st.floats(0.01, 0.99))
def test_laguerre_matches_sum(m_lower, k, eta):
    a = rabi_frequency(m_lower, k, eta)
    b = rabi_frequency_laguerre(m_lower, k, eta)
    assert abs(a - b) <= 1e-12 * abs(a) + 1e-300
    assert a == pytest.approx(brute_force(m_lower, k, eta), rel=1e-10, abs=1e-15)


def test_finite_over_supported_range():
    for m_lower in range(33):
        for k in range(5):
            if m_lower + k > MAX_PHONON:
                with pytest.raises(ValueError):
                    rabi_frequency(m_lower, k, 0.5)
                continue
            for eta in (0.1, 0.5, 0.95):
                assert math.isfinite(rabi_frequency(m_lower, k, eta))


def test_can_be_negative():
    # Omega_{m,m} ~ L_m(eta^2), which changes sign as m grows at eta near 1
    values = [rabi_frequency(m, 0, 0.95) for m in range(10)]
    assert min(values) < 0


@pytest.mark.parametrize("bad", [0.0, 1.0, -0.3, 1.5, float("nan"), float("inf")])
def test_rejects_bad_eta(bad):
    with pytest.raises(ValueError):
        rabi_frequency(0, 1, bad)


def test_rejects_bad_inputs():
    with pytest.raises(ValueError):
        rabi_frequency(-1, 0, 0.5)
    with pytest.raises(ValueError):
        rabi_frequency(0, -1, 0.5)
    with pytest.raises(ValueError):
        rabi_frequency(0, 0, 0.5, omega=0.0)
    with pytest.raises(ValueError):
        rabi_frequency(30, 3, 0.5)


def test_matches_displacement_operator():
    """Matrix elements of exp(i eta (a + a^dag)) from a large truncated space."""
    eta, size = 0.8, 80
    a = np.diag(np.sqrt(np.arange(1, size)), 1)
    D = scipy.linalg.expm(1j * eta * (a + a.T))
    for m_lower in range(6):
        for k in range(4):
            element = D[m_lower, m_lower + k]  # <m_lower| D |m_lower + k>
            expected = 2 * (1j) ** k * rabi_frequency(m_lower, k, eta)
            assert element == pytest.approx(expected, abs=1e-12)

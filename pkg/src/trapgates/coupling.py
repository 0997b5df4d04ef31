"""Sideband coupling strengths of a trapped ion driven beyond the Lamb-Dicke limit.

The coupling between ``|m, g>`` and ``|m - k, e>`` under a laser tuned to the
``k``-th red sideband is

    Omega_{m-k,m} = (Omega eta^k e^{-eta^2/2} / 2) sqrt(m!/(m-k)!)
                    * sum_{n=0}^{m-k} (-eta^2)^n C(m-k, n) / (k+n)!

Two evaluations are provided: :func:`rabi_frequency` sums that series directly
and :func:`rabi_frequency_laguerre` uses the equivalent associated-Laguerre
closed form.  They share no code so each can check the other.
"""

import math

__all__ = [
    "MAX_PHONON",
    "check_eta",
    "check_omega",
    "check_sideband",
    "laguerre",
    "rabi_frequency",
    "rabi_frequency_laguerre",
]

# m_lower + k must not exceed this.
MAX_PHONON = 32


def check_eta(eta):
    eta = float(eta)
    if not math.isfinite(eta) or not 0.0 < eta < 1.0:
        raise ValueError(f"Lamb-Dicke parameter must lie in (0, 1), got {eta!r}")
    return eta


def check_omega(omega):
    omega = float(omega)
    if not math.isfinite(omega) or omega <= 0.0:
        raise ValueError(f"base Rabi frequency must be positive, got {omega!r}")
    return omega


def check_sideband(k):
    if isinstance(k, bool) or int(k) != k or k < 0:
        raise ValueError(f"sideband index must be a non-negative integer, got {k!r}")
    return int(k)


def _check_range(m_lower, k):
    if isinstance(m_lower, bool) or int(m_lower) != m_lower or m_lower < 0:
        raise ValueError(f"phonon number must be a non-negative integer, got {m_lower!r}")
    m_lower, k = int(m_lower), check_sideband(k)
    if m_lower + k > MAX_PHONON:
        raise ValueError(
            f"m_lower + k = {m_lower + k} exceeds the supported limit {MAX_PHONON}")
    return m_lower, k


def rabi_frequency(m_lower, k, eta, omega=1.0):
    """Coupling rate between ``|m_lower + k, g>`` and ``|m_lower, e>``.

    The series is accumulated term by term, each term obtained from its
    predecessor, so no factorial is ever formed explicitly.  The result is
    signed; for large ``eta`` and ``m_lower`` it can be negative.
    """
    m_lower, k = _check_range(m_lower, k)
    eta, omega = check_eta(eta), check_omega(omega)
    x = eta * eta

    term = 1.0 / math.factorial(k)
    total = term
    for n in range(m_lower):
        term *= -x * (m_lower - n) / ((n + 1) * (k + n + 1))
        total += term

    # sqrt((m_lower + k)! / m_lower!) as a running product
    ratio = 1.0
    for j in range(m_lower + 1, m_lower + k + 1):
        ratio *= j
    prefactor = 0.5 * omega * eta**k * math.exp(-0.5 * x)
    return prefactor * math.sqrt(ratio) * total


def laguerre(n, alpha, x):
    """Associated Laguerre polynomial L_n^alpha(x) by the three-term recurrence."""
    if n == 0:
        return 1.0
    l_prev, l_cur = 1.0, 1.0 + alpha - x
    for j in range(2, n + 1):
        l_prev, l_cur = l_cur, ((2 * j - 1 + alpha - x) * l_cur - (j - 1 + alpha) * l_prev) / j
    return l_cur


def rabi_frequency_laguerre(m_lower, k, eta, omega=1.0):
    """Same quantity as :func:`rabi_frequency`, via
    ``(Omega eta^k e^{-eta^2/2}/2) sqrt(m!/(m+k)!) L_m^k(eta^2)``."""
    m_lower, k = _check_range(m_lower, k)
    eta, omega = check_eta(eta), check_omega(omega)
    log_norm = 0.5 * (math.lgamma(m_lower + 1) - math.lgamma(m_lower + k + 1))
    return (0.5 * omega * eta**k * math.exp(-0.5 * eta * eta + log_norm)
            * laguerre(m_lower, k, eta * eta))

"""Matching conditions: Lamb-Dicke parameter and pulse areas for exact gates.

Every solver picks the member of an infinite solution family addressed by the
caller's integers.  Durations are returned as ``Omega t / pi`` ("tau") so they
compare directly with the published parameter table.
"""

from dataclasses import dataclass
import math

from .coupling import check_eta, rabi_frequency

__all__ = [
    "MatchingError",
    "NoPhysicalEta",
    "InfeasibleBranch",
    "SidebandMatch",
    "CarrierMatch",
    "IonIonMatch",
    "TargetSandwich",
    "TableRow",
    "PRINTED_TABLE",
    "phase_family",
    "solve_eta",
    "solve_tau2",
    "sideband_match",
    "solve_carrier_durations",
    "solve_ion_ion_durations",
    "solve_target_sandwich",
    "solve_single_pulse_controlled",
    "solve_two_pulse_duration",
    "two_pulse_eta",
    "regenerate_table",
    "PrintedRowAudit",
    "audit_printed_table",
    "consistent_table_rows",
]

SQRT2 = math.sqrt(2.0)
HALF_PI = 0.5 * math.pi
THREE_HALF_PI = 1.5 * math.pi


class MatchingError(ValueError):
    pass


class NoPhysicalEta(MatchingError):
    pass


class InfeasibleBranch(MatchingError):
    pass


def _positive_int(name, value):
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def phase_family(phi):
    """Normalize a phase-family selector to ``pi/2`` or ``3pi/2``.

    Accepts the strings ``"pi/2"``/``"3pi/2"`` or any float congruent to one of
    those modulo ``2 pi``.
    """
    if isinstance(phi, str):
        key = phi.replace(" ", "").lower()
        if key in ("pi/2", "half"):
            return HALF_PI
        if key in ("3pi/2", "three_half"):
            return THREE_HALF_PI
        raise ValueError(f"unknown phase family {phi!r}")
    reduced = math.fmod(float(phi), 2 * math.pi)
    if reduced < 0:
        reduced += 2 * math.pi
    for ref in (HALF_PI, THREE_HALF_PI):
        if abs(reduced - ref) < 1e-9:
            return ref
    raise ValueError(f"phase {phi!r} is not in the pi/2 or 3pi/2 family")


@dataclass(frozen=True)
class SidebandMatch:
    """Off-resonant pulse realizing CZ between an ion and the bus."""

    p: int
    q: int
    eta: float
    tau2: float


@dataclass(frozen=True)
class CarrierMatch:
    """Two carrier pulses that turn the bus CZ into a CNOT."""

    p_prime: int
    q_prime: int
    phi1: float
    tau1: float
    tau3: float
    eta: float


@dataclass(frozen=True)
class IonIonMatch:
    """Control-ion sideband pulses around the bus CZ of the target ion.

    ``area1``/``area3`` are the rotation angles ``Omega_{0,1} t' / pi``.
    """

    kk: int
    kk_prime: int
    area1: float
    area3: float
    tau1_p: float
    tau3_p: float
    eta: float


@dataclass(frozen=True)
class TargetSandwich:
    """Target-ion carrier pulses turning an ion-ion CZ into a CNOT.

    ``area1``/``area3`` are ``Omega_{0,0} t'' / pi``.
    """

    pp: int
    pp_prime: int
    phi: float
    area1: float
    area3: float
    tau1_pp: float
    tau3_pp: float
    eta: float


def solve_eta(p, q):
    """Lamb-Dicke parameter for which ``Omega_{1,2}/Omega_{0,1} = (q - 1/2)/p``."""
    p, q = _positive_int("p", p), _positive_int("q", q)
    ratio = (q - 0.5) / p
    if not 1 / SQRT2 < ratio < SQRT2:
        raise NoPhysicalEta(
            f"no physical eta for p={p}, q={q}: (q - 0.5)/p = {ratio:.6g} must lie in "
            f"(1/sqrt(2), sqrt(2)) = ({1 / SQRT2:.6f}, {SQRT2:.6f})")
    return math.sqrt(2.0 - SQRT2 * ratio)


def solve_tau2(p, eta):
    """``Omega t_2 / pi`` with ``Omega_{0,1} t_2 = 2 p pi``."""
    p, eta = _positive_int("p", p), check_eta(eta)
    return 4 * p * math.exp(0.5 * eta * eta) / eta


def sideband_match(p, q):
    eta = solve_eta(p, q)
    return SidebandMatch(p, q, eta, solve_tau2(p, eta))


def solve_carrier_durations(eta, p_prime, q_prime, phi_family=HALF_PI):
    """Carrier pulse areas from the trigonometric conditions

        Omega_{0,0} (t_1 + t_3) = 2 p' pi
        Omega_{1,1} (t_1 - t_3) = (2 q' - 3/2) pi

    for the ``pi/2`` family; the ``3pi/2`` family swaps ``t_1`` and ``t_3``.
    """
    eta = check_eta(eta)
    p_prime, q_prime = _positive_int("p_prime", p_prime), _positive_int("q_prime", q_prime)
    phi = phase_family(phi_family)
    rate00 = rabi_frequency(0, 0, eta)
    rate11 = rabi_frequency(1, 0, eta)
    if rate11 == 0.0:
        raise InfeasibleBranch("Omega_{1,1} vanishes; no carrier solution")
    total = 2 * p_prime / rate00
    diff = (2 * q_prime - 1.5) / rate11
    t_long, t_short = 0.5 * (total + diff), 0.5 * (total - diff)
    if t_short <= 0:
        raise InfeasibleBranch(
            f"branch infeasible for p'={p_prime}, q'={q_prime} at eta={eta:.6g} "
            f"(second pulse would be {t_short:.6g} pi/Omega); increase p'")
    if phi == HALF_PI:
        return CarrierMatch(p_prime, q_prime, phi, t_long, t_short, eta)
    return CarrierMatch(p_prime, q_prime, phi, t_short, t_long, eta)


def solve_ion_ion_durations(eta, kk=1, kk_prime=1):
    """Control-ion sideband areas ``(kk + kk' - 1/2) pi`` and ``(kk - kk' + 1/2) pi``."""
    eta = check_eta(eta)
    kk, kk_prime = _positive_int("kk", kk), _positive_int("kk_prime", kk_prime)
    if kk < kk_prime:
        raise InfeasibleBranch(f"need kk >= kk' for a positive third pulse, got {kk} < {kk_prime}")
    area1 = kk + kk_prime - 0.5
    area3 = kk - kk_prime + 0.5
    rate01 = rabi_frequency(0, 1, eta)
    return IonIonMatch(kk, kk_prime, area1, area3, area1 / rate01, area3 / rate01, eta)


def solve_target_sandwich(eta, pp=1, pp_prime=1, phi_family=HALF_PI):
    """Target-ion carrier areas around an ion-ion CZ."""
    eta = check_eta(eta)
    pp, pp_prime = _positive_int("pp", pp), _positive_int("pp_prime", pp_prime)
    phi = phase_family(phi_family)
    shift = 0.75 if phi == HALF_PI else 0.25
    area1 = pp + pp_prime - shift
    area3 = pp - pp_prime + shift
    if area3 <= 0:
        raise InfeasibleBranch(
            f"branch infeasible for pp={pp}, pp'={pp_prime}: second carrier area {area3} pi <= 0")
    rate00 = rabi_frequency(0, 0, eta)
    return TargetSandwich(pp, pp_prime, phi, area1, area3, area1 / rate00, area3 / rate00, eta)


def solve_single_pulse_controlled(eta, max_index=50, tol=1e-6):
    """Shortest carrier area with ``cos Omega_{0,0} t = 1`` and ``sin Omega_{1,1} t = 1``.

    Scans ``Omega_{0,0} t = 2 a pi`` for ``a = 1..max_index`` and accepts the
    first ``a`` for which ``Omega_{1,1} t`` lands within ``tol`` of
    ``(2 b + 1/2) pi`` with ``0 <= b <= max_index``.  Returns ``tau`` in units
    of ``pi/Omega`` or ``None``.
    """
    eta = check_eta(eta)
    rate00 = rabi_frequency(0, 0, eta)
    rate11 = rabi_frequency(1, 0, eta)
    for a in range(1, max_index + 1):
        tau = 2 * a / rate00
        angle = rate11 * tau  # in units of pi
        b = round((angle - 0.5) / 2)
        if 0 <= b <= max_index and abs(angle - (2 * b + 0.5)) * math.pi < tol:
            return tau
    return None


def two_pulse_eta(p_prime, n):
    """Lamb-Dicke parameter for which two equal sideband pulses of
    ``Omega_{0,1} t' = 2 p' pi`` give ``Omega_{1,2} t' = (2 n + 1/2) pi``."""
    p_prime = _positive_int("p_prime", p_prime)
    ratio = (4 * n + 1) / (4 * p_prime)
    if not 1 / SQRT2 < ratio < SQRT2:
        raise NoPhysicalEta(
            f"no physical eta for p'={p_prime}, n={n}: ratio {ratio:.6g} outside "
            f"(1/sqrt(2), sqrt(2))")
    return math.sqrt(2.0 - SQRT2 * ratio)


def solve_two_pulse_duration(eta, max_index=50, tol=1e-9):
    """Smallest ``p'`` with ``cos Omega_{0,1} t' = 1`` and ``sin Omega_{1,2} t' = 1``.

    Returns ``(p', tau')``; raises :class:`InfeasibleBranch` when no ``p' <=
    max_index`` works.
    """
    eta = check_eta(eta)
    rate01 = rabi_frequency(0, 1, eta)
    rate12 = rabi_frequency(1, 1, eta)
    for p_prime in range(1, max_index + 1):
        tau = 2 * p_prime / rate01
        angle = rate12 * tau
        b = round((angle - 0.5) / 2)
        if abs(angle - (2 * b + 0.5)) * math.pi < tol:
            return p_prime, tau
    raise InfeasibleBranch(
        f"no two-pulse CZ duration with p' <= {max_index} at eta={eta:.6g}")


@dataclass(frozen=True)
class TableRow:
    p: int
    q: int
    p_prime: int
    q_prime: int
    eta: float = math.nan
    tau2: float = math.nan
    tau1: float = math.nan
    tau3: float = math.nan
    error: str = ""

    @property
    def ok(self):
        return not self.error


def regenerate_table(rows, phi_family=HALF_PI):
    """Solve each ``(p, q, p', q')`` row; a failing row carries its error text."""
    out = []
    for p, q, p_prime, q_prime in rows:
        try:
            match = sideband_match(p, q)
            carrier = solve_carrier_durations(match.eta, p_prime, q_prime, phi_family)
        except ValueError as exc:
            out.append(TableRow(p, q, p_prime, q_prime, error=str(exc)))
            continue
        out.append(TableRow(p, q, p_prime, q_prime, match.eta, match.tau2,
                            carrier.tau1, carrier.tau3))
    return out


# Parameter table as published, grouped by Lamb-Dicke parameter:
# ((p, q, printed tau2), ...), printed eta, ((p', q', printed tau1, printed tau3), ...)
PRINTED_TABLE = (
    (((2, 2, 13.2024), (10, 8, 33.0061)), 0.9692,
     ((5, 1, 29.1785, 2.8108), (8, 1, 38.7753, 12.4076), (10, 1, 45.1732, 18.8055))),
    (((2, 3, 18.6448), (6, 8, 55.9343)), 0.4819,
     ((1, 1, 2.9777, 1.5148), (2, 2, 8.1496, 0.8354), (3, 1, 7.4702, 6.0073))),
    (((3, 3, 19.9648), (9, 8, 59.8943)), 0.9064,
     ((2, 1, 10.2554, 1.8081), (3, 1, 13.2713, 4.8239), (8, 2, 45.2453, 3.0088))),
    (((4, 6, 69.8532),), 0.2355,
     ((1, 1, 2.6005, 1.5119), (2, 1, 4.6567, 3.5682), (2, 2, 6.8337, 1.3913))),
    (((14, 20, 16.3571),), 0.1738,
     ((1, 1, 2.5538, 1.5071), (2, 1, 4.5843, 3.5374), (2, 2, 6.6779, 1.4438))),
    (((3, 4, 24.1611),), 0.5919,
     ((1, 1, 3.2991, 1.4661), (2, 1, 5.6817, 3.8487), (2, 2, 9.3477, 0.1827))),
)


@dataclass(frozen=True)
class PrintedRowAudit:
    p: int
    q: int
    printed_eta: float
    printed_tau2: float
    eta: float
    tau2: float
    cos01: float
    cos12: float
    suspect: bool


def audit_printed_table(threshold=0.5):
    """Re-evaluate ``cos Omega_{0,1} t_2`` and ``cos Omega_{1,2} t_2`` at every
    printed sideband duration.

    A row is suspect when either cosine misses its target (``+1``/``-1``) by
    more than ``threshold``.
    """
    audits = []
    for sideband_rows, printed_eta, _ in PRINTED_TABLE:
        for p, q, printed_tau2 in sideband_rows:
            eta = solve_eta(p, q)
            cos01 = math.cos(rabi_frequency(0, 1, eta) * printed_tau2 * math.pi)
            cos12 = math.cos(rabi_frequency(1, 1, eta) * printed_tau2 * math.pi)
            suspect = abs(cos01 - 1) > threshold or abs(cos12 + 1) > threshold
            audits.append(PrintedRowAudit(p, q, printed_eta, printed_tau2, eta,
                                          solve_tau2(p, eta), cos01, cos12, suspect))
    return audits


def consistent_table_rows(threshold=0.5):
    """Published ``(p, q, p', q')`` rows whose sideband duration passes the audit,
    each with its printed ``(eta, tau2, tau1, tau3)``."""
    suspect = {(a.p, a.q) for a in audit_printed_table(threshold) if a.suspect}
    rows = []
    for sideband_rows, printed_eta, companions in PRINTED_TABLE:
        for p, q, tau2 in sideband_rows:
            if (p, q) in suspect:
                continue
            for p_prime, q_prime, tau1, tau3 in companions:
                rows.append(((p, q, p_prime, q_prime), (printed_eta, tau2, tau1, tau3)))
    return rows

"""State-vector dynamics of N two-level ions sharing one vibrational mode.

Basis ordering is phonon-major: the amplitude of ``|m>|s_1 ... s_N>`` sits at
``m * 2**N + sum_j s_j * 2**(N-1-j)`` with ``g = 0`` and ``e = 1``.  For one ion
the first four entries are therefore ``|0g>, |0e>, |1g>, |1e>``.

All durations are dimensionless, ``Omega * t``.  Two propagators exist for a
square pulse: :func:`closed_form_propagator` writes down the exact 2x2 sideband
rotations, and :func:`oracle_propagator` exponentiates the truncated
Hamiltonian numerically without knowing anything about that block structure.
"""

from dataclasses import dataclass, field
import math

import numpy as np
import scipy.linalg

from .coupling import check_eta, check_omega, check_sideband, rabi_frequency

__all__ = [
    "PropagatorError",
    "RegisterConfig",
    "Pulse",
    "RegisterState",
    "hamiltonian_matrix",
    "closed_form_propagator",
    "oracle_propagator",
    "propagator",
    "sequence_unitary",
    "evolve",
    "evolve_sequence",
    "leakage",
    "touches_cutoff",
    "safe_phonon_limit",
    "is_unitary",
    "is_hermitian",
]

MAX_IONS = 8

# i**n for integer n, without floating-point residue
_I_POW = (1.0 + 0j, 1j, -1.0 + 0j, -1j)


def _ipow(n):
    return _I_POW[n % 4]


class PropagatorError(RuntimeError):
    """The numerical exponential of a Hamiltonian could not be formed."""


@dataclass(frozen=True)
class RegisterConfig:
    """Physical register: ion count, Lamb-Dicke parameter, base Rabi rate and
    the highest retained phonon number."""

    n_ions: int
    eta: float
    omega: float = 1.0
    fock_cutoff: int = 4

    def __post_init__(self):
        if int(self.n_ions) != self.n_ions or not 1 <= self.n_ions <= MAX_IONS:
            raise ValueError(f"n_ions must be an integer in [1, {MAX_IONS}], got {self.n_ions!r}")
        if int(self.fock_cutoff) != self.fock_cutoff or self.fock_cutoff < 2:
            raise ValueError(f"fock_cutoff must be an integer >= 2, got {self.fock_cutoff!r}")
        object.__setattr__(self, "n_ions", int(self.n_ions))
        object.__setattr__(self, "fock_cutoff", int(self.fock_cutoff))
        object.__setattr__(self, "eta", check_eta(self.eta))
        object.__setattr__(self, "omega", check_omega(self.omega))

    @property
    def n_phonon(self):
        return self.fock_cutoff + 1

    @property
    def n_spin(self):
        return 2 ** self.n_ions

    @property
    def dim(self):
        return self.n_phonon * self.n_spin

    def index(self, m, spins):
        """Flat index of ``|m>|spins>``.  ``spins`` is a sequence of 0/1 or a
        string of ``g``/``e`` characters, one per ion."""
        spins = _parse_spins(spins)
        if len(spins) != self.n_ions:
            raise ValueError(f"expected {self.n_ions} spin labels, got {len(spins)}")
        if not 0 <= m <= self.fock_cutoff:
            raise ValueError(f"phonon number {m} outside [0, {self.fock_cutoff}]")
        s = 0
        for bit in spins:
            s = 2 * s + bit
        return m * self.n_spin + s

    def phonon_numbers(self):
        """Phonon number of every basis state, in basis order."""
        return np.repeat(np.arange(self.n_phonon), self.n_spin)

    def spin_bits(self, ion):
        """Internal state (0 = g, 1 = e) of ``ion`` for every basis state."""
        s = np.tile(np.arange(self.n_spin), self.n_phonon)
        return (s >> (self.n_ions - 1 - ion)) & 1


def _parse_spins(spins):
    if isinstance(spins, str):
        table = {"g": 0, "e": 1, "0": 0, "1": 1}
        try:
            return tuple(table[c] for c in spins)
        except KeyError:
            raise ValueError(f"bad spin label {spins!r}; use 'g'/'e'") from None
    spins = tuple(int(b) for b in spins)
    if any(b not in (0, 1) for b in spins):
        raise ValueError(f"spin values must be 0 or 1, got {spins!r}")
    return spins


@dataclass(frozen=True)
class Pulse:
    """A square laser pulse on one ion.

    ``k`` is the red-sideband order (0 for the carrier), ``phase`` the laser
    phase in radians, ``duration`` the dimensionless area ``Omega * t``.
    """

    target: int
    k: int
    phase: float
    duration: float

    def __post_init__(self):
        object.__setattr__(self, "k", check_sideband(self.k))
        if int(self.target) != self.target or self.target < 0:
            raise ValueError(f"target must be a non-negative ion index, got {self.target!r}")
        object.__setattr__(self, "target", int(self.target))
        for name in ("phase", "duration"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"pulse {name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.duration < 0:
            raise ValueError(f"pulse duration must be non-negative, got {self.duration!r}")

    @classmethod
    def from_pi_units(cls, target, k, phase, tau):
        """Build a pulse whose duration is given as ``Omega t / pi``."""
        return cls(target, k, phase, tau * math.pi)

    @property
    def tau(self):
        """Duration in units of ``pi / Omega``."""
        return self.duration / math.pi


def _check_pulse(config, pulse):
    if pulse.target >= config.n_ions:
        raise ValueError(f"pulse targets ion {pulse.target} but register has {config.n_ions}")
    if pulse.k > config.fock_cutoff:
        raise ValueError(f"sideband order {pulse.k} exceeds fock cutoff {config.fock_cutoff}")


@dataclass(frozen=True)
class RegisterState:
    """Normalized amplitude vector over the phonon x spins basis."""

    config: RegisterConfig
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (self.config.dim,):
            raise ValueError(f"state has shape {amps.shape}, register needs ({self.config.dim},)")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, config, m=0, spins=None):
        if spins is None:
            spins = (0,) * config.n_ions
        amps = np.zeros(config.dim, dtype=complex)
        amps[config.index(m, spins)] = 1.0
        return cls(config, amps)

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def amplitude(self, m, spins):
        return complex(self.amplitudes[self.config.index(m, spins)])

    def phonon_distribution(self):
        p = np.abs(self.amplitudes) ** 2
        return p.reshape(self.config.n_phonon, self.config.n_spin).sum(axis=1)


def hamiltonian_matrix(config, pulse):
    """Interaction-picture Hamiltonian (units of hbar) for one addressed pulse.

    Built from the normal-ordered operator series
    ``sigma_+ (i eta)^k [sum_n (i eta)^{2n} a^dag^n a^n / (n! (n+k)!)] a^k``
    on the truncated phonon space, times ``(Omega/2) exp(-eta^2/2 - i phi)``,
    plus its Hermitian conjugate.
    """
    _check_pulse(config, pulse)
    eta, k = config.eta, pulse.k
    n_ph = config.n_phonon

    a = np.diag(np.sqrt(np.arange(1, n_ph)), 1).astype(complex)
    ad = a.conj().T
    series = np.zeros((n_ph, n_ph), dtype=complex)
    for n in range(n_ph):
        weight = (1j * eta) ** (2 * n) / (math.factorial(n) * math.factorial(n + k))
        series += weight * np.linalg.matrix_power(ad, n) @ np.linalg.matrix_power(a, n)
    phonon_op = (1j * eta) ** k * series @ np.linalg.matrix_power(a, k)

    sigma_plus = np.array([[0, 0], [1, 0]], dtype=complex)  # |e><g|
    spin_op = np.eye(1, dtype=complex)
    for j in range(config.n_ions):
        spin_op = np.kron(spin_op, sigma_plus if j == pulse.target else np.eye(2))

    coupling = 0.5 * config.omega * np.exp(-0.5 * eta**2 - 1j * pulse.phase)
    raising = coupling * np.kron(phonon_op, spin_op)
    return raising + raising.conj().T


def closed_form_propagator(config, pulse):
    """Exact unitary of one pulse, assembled from independent 2x2 rotations.

    Each pair ``{|m, e_t>, |m+k, g_t>}`` rotates by the angle
    ``Omega_{m,m+k} * t``; ``|m, g_t>`` with ``m < k`` is untouched.  Pairs
    that would need a phonon number above the cutoff are left as identity
    (see :func:`touches_cutoff`).
    """
    _check_pulse(config, pulse)
    k, t, phi = pulse.k, pulse.duration, pulse.phase
    U = np.eye(config.dim, dtype=complex)
    if t == 0.0:
        return U

    # amplitude |m,e> -> |m+k,g| and |m+k,g> -> |m,e>
    # (-i)**(k-1) == i**(1-k)
    lower_to_upper = -_ipow(1 - k) * np.exp(1j * phi)
    upper_to_lower = _ipow(k - 1) * np.exp(-1j * phi)

    phonons = config.phonon_numbers()
    bits = config.spin_bits(pulse.target)
    stride = k * config.n_spin
    flip = 1 << (config.n_ions - 1 - pulse.target)
    for idx_e in np.flatnonzero((bits == 1) & (phonons + k <= config.fock_cutoff)):
        m = int(phonons[idx_e])
        idx_g = idx_e + stride - flip
        theta = rabi_frequency(m, k, config.eta, config.omega) * t
        c, s = math.cos(theta), math.sin(theta)
        U[idx_e, idx_e] = c
        U[idx_g, idx_g] = c
        U[idx_g, idx_e] = lower_to_upper * s
        U[idx_e, idx_g] = upper_to_lower * s
    return U


def oracle_propagator(config, pulse):
    """``exp(-i H t)`` by Hermitian eigendecomposition of the full matrix."""
    H = hamiltonian_matrix(config, pulse)
    try:
        w, V = scipy.linalg.eigh(H)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise PropagatorError(f"eigendecomposition failed for {pulse}") from exc
    return (V * np.exp(-1j * w * pulse.duration)) @ V.conj().T


def propagator(config, pulse, method="closed_form"):
    if method == "closed_form":
        return closed_form_propagator(config, pulse)
    if method == "oracle":
        return oracle_propagator(config, pulse)
    raise ValueError(f"unknown propagation method {method!r}")


def sequence_unitary(config, pulses, method="closed_form"):
    """Unitary of pulses applied in order, i.e. ``U_n ... U_2 U_1``."""
    U = np.eye(config.dim, dtype=complex)
    for pulse in pulses:
        U = propagator(config, pulse, method) @ U
    return U


def evolve(state, pulse, method="closed_form"):
    """Apply one pulse to ``state``.  No renormalization is done."""
    U = propagator(state.config, pulse, method)
    return RegisterState(state.config, U @ state.amplitudes)


def evolve_sequence(state, pulses, method="closed_form"):
    for pulse in pulses:
        state = evolve(state, pulse, method)
    return state


def leakage(state, phonon_limit):
    """Population in basis states with more than ``phonon_limit`` phonons."""
    mask = state.config.phonon_numbers() > phonon_limit
    return float(np.sum(np.abs(state.amplitudes[mask]) ** 2))


def touches_cutoff(config, pulse):
    """True when the pulse would couple some retained state above the cutoff.

    Any nonzero sideband pulse does: ``|n_max, e>`` has no partner inside the
    truncated space and is left alone.
    """
    return pulse.k > 0 and pulse.duration > 0


def safe_phonon_limit(config, pulses):
    """Highest initial phonon number for which truncation is exact."""
    return config.fock_cutoff - sum(p.k for p in pulses)


def is_unitary(U, tol=1e-10):
    U = np.asarray(U)
    return float(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0])))) < tol


def is_hermitian(H, tol=1e-12):
    H = np.asarray(H)
    return float(np.max(np.abs(H - H.conj().T))) < tol

"""Pulse sequences for the gate set and their verification as exact unitaries.

Computational orderings:

* ion-bus gates act on ``|0g>, |0e>, |1g>, |1e>`` (bus first, then the ion);
* ion-ion gates act on ``|g_i g_j>, |g_i e_j>, |e_i g_j>, |e_i e_j>`` with the
  bus in ``|0>``; ``i`` is the control;
* single-ion rotations act on ``|m g>, |m e>`` for a fixed phonon number.

Ions not involved in a gate sit in ``|g>`` when the subspace is extracted.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .coupling import rabi_frequency
from .dynamics import Pulse, RegisterState, evolve, sequence_unitary
from .matching import (
    HALF_PI,
    InfeasibleBranch,
    consistent_table_rows,
    phase_family,
    sideband_match,
    solve_carrier_durations,
    solve_two_pulse_duration,
)

__all__ = [
    "CZ",
    "CN",
    "HADAMARD_HALF_PI",
    "HADAMARD_THREE_HALF_PI",
    "PulseProgram",
    "GateSpec",
    "GateReport",
    "hadamard_tau",
    "seq_rotation",
    "seq_cz_cb",
    "seq_cz_cb_two_pulse",
    "seq_cn_cb",
    "seq_cz_ion_ion",
    "seq_cn_ion_ion",
    "prepare_uniform",
    "project_and_compare",
    "round_durations",
    "pulse_seconds",
    "cn_cb_seconds",
    "shortest_cn_cb",
]

_S = 1 / math.sqrt(2)

CZ = np.array([[1, 0, 0, 0],
               [0, 1, 0, 0],
               [0, 0, 1, 0],
               [0, 0, 0, -1]], dtype=complex)

CN = np.array([[1, 0, 0, 0],
               [0, 1, 0, 0],
               [0, 0, 0, 1],
               [0, 0, 1, 0]], dtype=complex)

HADAMARD_HALF_PI = np.array([[_S, _S],
                             [-_S, _S]], dtype=complex)

HADAMARD_THREE_HALF_PI = np.array([[_S, -_S],
                                   [_S, _S]], dtype=complex)




@dataclass(frozen=True)
class PulseProgram:
    config: object
    pulses: tuple

    def __post_init__(self):
        pulses = tuple(self.pulses)
        if not pulses:
            raise ValueError("a pulse program needs at least one pulse")
        for p in pulses:
            if p.target >= self.config.n_ions:
                raise ValueError(f"pulse targets ion {p.target}, register has {self.config.n_ions}")
        object.__setattr__(self, "pulses", pulses)

    def __len__(self):
        return len(self.pulses)

    def __iter__(self):
        return iter(self.pulses)

    def then(self, other):
        """Program running ``self`` first and ``other`` afterwards."""
        return PulseProgram(self.config, self.pulses + tuple(other.pulses))

    def unitary(self, method="closed_form"):
        return sequence_unitary(self.config, self.pulses, method)

    def run(self, state, method="closed_form"):
        for pulse in self.pulses:
            state = evolve(state, pulse, method)
        return state


def spins_for(config, assign):
    """Spin tuple with every ion in ``g`` except the ``{ion: bit}`` assignments."""
    bits = [0] * config.n_ions
    for ion, bit in assign.items():
        if not 0 <= ion < config.n_ions:
            raise ValueError(f"ion {ion} outside register of {config.n_ions}")
        bits[ion] = bit
    return tuple(bits)


@dataclass(frozen=True)
class GateSpec:
    """Target gate plus the labeled subspace it lives on.

    ``kind`` is ``"bus"`` (ion ``ions[0]`` and the bus), ``"ion_pair"``
    (control ``ions[0]``, target ``ions[1]``, bus in ``|0>``) or ``"single"``
    (ion ``ions[0]`` at phonon number ``phonon``).
    """

    name: str
    ideal: np.ndarray = field(repr=False)
    kind: str
    ions: tuple
    phonon: int = 0

    def __post_init__(self):
        ideal = np.asarray(self.ideal, dtype=complex)
        if ideal.ndim != 2 or ideal.shape[0] != ideal.shape[1]:
            raise ValueError("ideal gate must be a square matrix")
        if np.max(np.abs(ideal.conj().T @ ideal - np.eye(len(ideal)))) > 1e-12:
            raise ValueError(f"ideal matrix for {self.name} is not unitary")
        object.__setattr__(self, "ideal", ideal)
        object.__setattr__(self, "ions", tuple(self.ions))

    def indices(self, config):
        """Basis indices of the subspace, in the ideal matrix's order."""

        if self.kind == "bus":
            (ion,) = self.ions
            return [config.index(m, spins_for(config, {ion: s})) for m in (0, 1) for s in (0, 1)]
        if self.kind == "ion_pair":
            ctrl, tgt = self.ions
            if ctrl == tgt:
                raise ValueError("control and target must differ")
            return [config.index(0, spins_for(config, {ctrl: a, tgt: b}))
                    for a in (0, 1) for b in (0, 1)]
        if self.kind == "single":
            (ion,) = self.ions
            return [config.index(self.phonon, spins_for(config, {ion: s})) for s in (0, 1)]
        raise ValueError(f"unknown subspace kind {self.kind!r}")

    @classmethod
    def cz_cb(cls, ion=0):
        return cls("cz_cb", CZ, "bus", (ion,))

    @classmethod
    def cn_cb(cls, ion=0):
        return cls("cn_cb", CN, "bus", (ion,))

    @classmethod
    def cz_ion_ion(cls, control=0, target=1):
        return cls("cz_ii", CZ, "ion_pair", (control, target))

    @classmethod
    def cn_ion_ion(cls, control=0, target=1):
        return cls("cn_ii", CN, "ion_pair", (control, target))

    @classmethod
    def hadamard(cls, ion=0, phi=HALF_PI, phonon=0):
        ideal = HADAMARD_HALF_PI if phase_family(phi) == HALF_PI else HADAMARD_THREE_HALF_PI
        return cls("hadamard", ideal, "single", (ion,), phonon)


@dataclass(frozen=True)
class GateReport:
    name: str
    achieved: np.ndarray = field(repr=False)
    deviation: float
    phase_deviation: float
    global_phase: float
    leakage: float
    trace_fidelity: float
    bus_restored: object = None


def hadamard_tau(eta, phonon=0):
    """Carrier duration (units of ``pi/Omega``) giving ``Omega_{m,m} t = pi/4``."""
    return 0.25 / rabi_frequency(phonon, 0, eta)


def _check_eta(config, *matches):
    for match in matches:
        if abs(match.eta - config.eta) > 1e-12:
            raise ValueError(f"solution was found for eta={match.eta!r}, register has {config.eta!r}")


def seq_rotation(config, target, phi, tau):
    """One carrier pulse of ``tau`` (units of ``pi/Omega``)."""
    return PulseProgram(config, [Pulse.from_pi_units(target, 0, phi, tau)])


def seq_cz_cb(config, match, target=0, phi=HALF_PI):
    """Single red-sideband pulse realizing CZ between ``target`` and the bus."""
    _check_eta(config, match)
    return PulseProgram(config, [Pulse.from_pi_units(target, 1, phi, match.tau2)])


def seq_cz_cb_two_pulse(config, target=0, phi=HALF_PI, max_index=50):
    """Two equal red-sideband pulses realizing the same bus CZ.

    The first pulse sends ``|1e>`` to ``-|2g>``, the second brings it back to
    ``-|1e>``.  Both pulses must share one phase.
    """
    _, tau = solve_two_pulse_duration(config.eta, max_index)
    pulse = Pulse.from_pi_units(target, 1, phi, tau)
    return PulseProgram(config, [pulse, pulse])


def seq_cn_cb(config, match, carrier, target=0, sideband_phase=HALF_PI, phi3=None):
    """Carrier, red sideband, carrier: CNOT from the bus onto ``target``.

    ``phi3`` defaults to the first carrier phase; other values break the gate
    and exist for negative controls.
    """
    if abs(match.eta - carrier.eta) > 1e-12:
        raise ValueError(f"sideband solution eta={match.eta!r} differs from carrier eta={carrier.eta!r}")
    _check_eta(config, match)
    phi1 = carrier.phi1
    phi3 = phi1 if phi3 is None else phi3
    return PulseProgram(config, [
        Pulse.from_pi_units(target, 0, phi1, carrier.tau1),
        Pulse.from_pi_units(target, 1, sideband_phase, match.tau2),
        Pulse.from_pi_units(target, 0, phi3, carrier.tau3),
    ])


def seq_cz_ion_ion(config, match, ii, control, target, phi=HALF_PI, target_phase=HALF_PI):
    """Three red-sideband pulses: control, target (bus CZ), control again."""
    if control == target:
        raise ValueError("control and target ion must differ")
    _check_eta(config, match, ii)
    return PulseProgram(config, [
        Pulse.from_pi_units(control, 1, phi, ii.tau1_p),
        Pulse.from_pi_units(target, 1, target_phase, match.tau2),
        Pulse.from_pi_units(control, 1, phi, ii.tau3_p),
    ])


def seq_cn_ion_ion(config, match, ii, sandwich, control, target, phi=HALF_PI,
                   target_phase=HALF_PI):
    """Target carrier, three-pulse ion-ion CZ, target carrier."""
    _check_eta(config, sandwich)
    cz = seq_cz_ion_ion(config, match, ii, control, target, phi, target_phase)
    first = Pulse.from_pi_units(target, 0, sandwich.phi, sandwich.tau1_pp)
    last = Pulse.from_pi_units(target, 0, sandwich.phi, sandwich.tau3_pp)
    return PulseProgram(config, (first,) + cz.pulses + (last,))


def prepare_uniform(config, n_ions=None, phi=HALF_PI):
    """Carrier ``pi/4`` pulse on each of the first ``n_ions`` ions, from ``|0, g...g>``."""
    n_ions = config.n_ions if n_ions is None else n_ions
    tau = hadamard_tau(config.eta)
    state = RegisterState.basis(config)
    for ion in range(n_ions):
        state = evolve(state, Pulse.from_pi_units(ion, 0, phi, tau))
    return state


def project_and_compare(program, gate, method="closed_form"):
    """Compose ``program`` and compare it with ``gate`` on the gate's subspace.

    ``deviation`` is the entrywise max-norm with no global-phase freedom;
    ``phase_deviation`` allows the best single global phase.  ``leakage`` is the
    largest population any computational input loses to the rest of the space.
    """
    U = program.unitary(method)
    idx = gate.indices(program.config)
    block = U[np.ix_(idx, idx)]
    ideal = gate.ideal
    if block.shape != ideal.shape:
        raise ValueError(f"subspace has dimension {block.shape[0]}, gate needs {ideal.shape[0]}")

    overlap = np.trace(ideal.conj().T @ block)
    phase = float(np.angle(overlap)) if abs(overlap) > 1e-14 else 0.0
    kept = np.sum(np.abs(block) ** 2, axis=0)
    leak = float(max(0.0, np.max(1.0 - kept)))
    bus_restored = None
    if gate.kind == "ion_pair":
        bus_restored = bool(leak < 1e-9)
    return GateReport(
        name=gate.name,
        achieved=block,
        deviation=float(np.max(np.abs(block - ideal))),
        phase_deviation=float(np.max(np.abs(block - np.exp(1j * phase) * ideal))),
        global_phase=phase,
        leakage=leak,
        trace_fidelity=float(abs(overlap) / len(ideal)),
        bus_restored=bus_restored,
    )


def round_durations(program, digits=4):
    """Copy of ``program`` with every ``Omega t / pi`` rounded as in a printed table."""
    return PulseProgram(program.config, [
        Pulse.from_pi_units(p.target, p.k, p.phase, round(p.tau, digits)) for p in program
    ])


def pulse_seconds(pulses, omega_resonant, omega_sideband):
    """Physical length of each pulse.

    Carrier pulses run at ``omega_resonant`` and sideband pulses at
    ``omega_sideband`` (both in rad/s): ``t = (Omega t) / rate``.
    """
    if omega_resonant <= 0 or omega_sideband <= 0:
        raise ValueError("Rabi rates must be positive")
    return [p.duration / (omega_resonant if p.k == 0 else omega_sideband) for p in pulses]


def cn_cb_seconds(p, q, p_prime, q_prime, omega_resonant, omega_sideband, phi_family=HALF_PI):
    match = sideband_match(p, q)
    carrier = solve_carrier_durations(match.eta, p_prime, q_prime, phi_family)
    pulses = [
        Pulse.from_pi_units(0, 0, carrier.phi1, carrier.tau1),
        Pulse.from_pi_units(0, 1, 0.0, match.tau2),
        Pulse.from_pi_units(0, 0, carrier.phi1, carrier.tau3),
    ]
    return pulse_seconds(pulses, omega_resonant, omega_sideband)


def shortest_cn_cb(omega_resonant, omega_sideband, rows=None):
    """Fastest bus CNOT among ``rows`` of ``(p, q, p', q')``.

    Defaults to the published rows that pass the consistency audit.  Returns
    ``(row, per_pulse_seconds)``.
    """
    if rows is None:
        rows = [row for row, _ in consistent_table_rows()]
    best = None
    for row in rows:
        try:
            secs = cn_cb_seconds(*row, omega_resonant, omega_sideband)
        except (InfeasibleBranch, ValueError):
            continue
        if best is None or sum(secs) < sum(best[1]):
            best = (tuple(row), secs)
    if best is None:
        raise InfeasibleBranch("no feasible bus CNOT among the given rows")
    return best

"""Exact trapped-ion quantum gates outside the Lamb-Dicke regime.

Modules:

``coupling``  sideband Rabi frequencies
``dynamics``  register, pulses, propagators and state evolution
``matching``  Lamb-Dicke parameter and pulse-duration solvers
``gates``     pulse sequences for the gate set and their verification
``program``   pulse-program text files
``cli``       command-line front end
"""

from .coupling import rabi_frequency, rabi_frequency_laguerre
from .dynamics import (
    Pulse,
    RegisterConfig,
    RegisterState,
    closed_form_propagator,
    evolve,
    hamiltonian_matrix,
    leakage,
    oracle_propagator,
)
from .matching import (
    solve_carrier_durations,
    solve_eta,
    solve_ion_ion_durations,
    solve_target_sandwich,
    solve_tau2,
)
from .gates import GateSpec, PulseProgram, project_and_compare

__version__ = "0.1.0"

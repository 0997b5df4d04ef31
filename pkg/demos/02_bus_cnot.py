"""Controlled-NOT between an ion and the vibrational bus, built from three pulses."""
# %%
import numpy as np

from trapgates import RegisterConfig, RegisterState
from trapgates.gates import GateSpec, project_and_compare, seq_cn_cb, seq_cz_cb
from trapgates.matching import sideband_match, solve_carrier_durations

np.set_printoptions(precision=4, suppress=True)

# %% eta and sideband area come from two integers
match = sideband_match(2, 3)
print(match)
cfg = RegisterConfig(1, match.eta, 1.0, fock_cutoff=4)

# %% one sideband pulse is already a controlled-Z on {|0>,|1>} x {|g>,|e>}
cz = project_and_compare(seq_cz_cb(cfg, match), GateSpec.cz_cb())
print(cz.achieved.real)
print("deviation", cz.deviation, "leakage", cz.leakage)

# %% surround it with two carrier pulses to get CNOT
carrier = solve_carrier_durations(match.eta, 1, 1)
prog = seq_cn_cb(cfg, match, carrier)
for p in prog:
    print(f"k={p.k} phase={p.phase:.4f} Omega t/pi={p.tau:.4f}")
cn = project_and_compare(prog, GateSpec.cn_cb())
print(cn.achieved.real)
print("deviation", cn.deviation)

# %% |1 g> flips to |1 e>; the phonon number never leaves {0,1,2}
out = prog.run(RegisterState.basis(cfg, 1, "g"))
print(out.phonon_distribution())
print("amplitude on |1,e>:", out.amplitude(1, "e"))

"""Two-ion gates routed through the bus, and a check that the bus comes back empty."""
# %%
import numpy as np

from trapgates import RegisterConfig
from trapgates.gates import GateSpec, project_and_compare, seq_cn_ion_ion, seq_cz_ion_ion
from trapgates.matching import sideband_match, solve_ion_ion_durations, solve_target_sandwich

np.set_printoptions(precision=3, suppress=True)

match = sideband_match(2, 2)
cfg = RegisterConfig(2, match.eta, 1.0, fock_cutoff=4)
ii = solve_ion_ion_durations(match.eta)
print(ii)

# %% controlled-Z: swap control into the bus, conditional phase on the target, swap back
cz = seq_cz_ion_ion(cfg, match, ii, control=0, target=1)
rep = project_and_compare(cz, GateSpec.cz_ion_ion(0, 1))
print(rep.achieved.real, rep.deviation, rep.bus_restored)

# %% amplitudes that would leave population in the bus are zero
U = cz.unitary()
for label, out, inp in [("|0eg> from |0ge>", (0, "eg"), (0, "ge")),
                        ("|2gg> from |0ee>", (2, "gg"), (0, "ee"))]:
    print(label, abs(U[cfg.index(*out), cfg.index(*inp)]))

# %% controlled-NOT, both phase families of the target rotations
for family in ("pi/2", "3pi/2"):
    sw = solve_target_sandwich(match.eta, 1, 1, family)
    prog = seq_cn_ion_ion(cfg, match, ii, sw, 0, 1)
    rep = project_and_compare(prog, GateSpec.cn_ion_ion(0, 1))
    print(family, len(prog), "pulses, deviation", rep.deviation)

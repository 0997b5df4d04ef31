"""How the sideband coupling depends on phonon number once eta is not small."""
# %%
import numpy as np

from trapgates import rabi_frequency, rabi_frequency_laguerre

# %% carrier rates Omega_{m,m} for a few eta; at small eta they are all ~1/2
for eta in (0.05, 0.3, 0.6, 0.97):
    rates = [rabi_frequency(m, 0, eta) for m in range(6)]
    print(f"eta={eta:<5} carrier", np.round(rates, 4))

# %% first red sideband, lower level m -> m+1
for eta in (0.05, 0.3, 0.6, 0.97):
    rates = [rabi_frequency(m, 1, eta) for m in range(6)]
    print(f"eta={eta:<5} k=1    ", np.round(rates, 4))

# %% the series and the Laguerre form agree
eta = 0.4819
print(max(abs(rabi_frequency(m, k, eta) - rabi_frequency_laguerre(m, k, eta))
          for m in range(12) for k in range(4)))

# %% ratio that the sideband matching works with
print("Omega_12 / Omega_01 at eta=0.4819:",
      rabi_frequency(1, 1, eta) / rabi_frequency(0, 1, eta), "= sqrt(2)(1 - eta^2/2):",
      np.sqrt(2) * (1 - eta ** 2 / 2))

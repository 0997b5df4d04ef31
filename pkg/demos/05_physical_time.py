"""Wall-clock length of the bus CNOT for realistic Rabi rates."""
# %%
import math

from trapgates.gates import cn_cb_seconds, shortest_cn_cb
from trapgates.matching import consistent_table_rows

w_res = 2 * math.pi * 140e3   # carrier Rabi rate, rad/s
w_sb = 2 * math.pi * 30e3     # sideband Rabi rate, rad/s

# %%
for (p, q, pp, qq), _ in consistent_table_rows():
    secs = cn_cb_seconds(p, q, pp, qq, w_res, w_sb)
    print((p, q, pp, qq), " ".join(f"{t * 1e6:7.1f}us" for t in secs),
          f"total {sum(secs) * 1e6:7.1f} us")

# %% the fastest exact realization is a few hundred microseconds
row, secs = shortest_cn_cb(w_res, w_sb)
print("shortest", row, f"{sum(secs):.3e} s")

"""Regenerating the gate parameter table and spotting rows that do not close."""
# %%
from trapgates.matching import audit_printed_table, consistent_table_rows, regenerate_table

# %% each printed row versus the recomputed values
for (p, q, pp, qq), printed in consistent_table_rows():
    (row,) = regenerate_table([(p, q, pp, qq)])
    print(f"{p:>2} {q:>2} {pp:>2} {qq:>2}  eta {row.eta:.4f}/{printed[0]:.4f}  "
          f"tau2 {row.tau2:8.4f}/{printed[1]:8.4f}  tau1 {row.tau1:8.4f}/{printed[2]:8.4f}  "
          f"tau3 {row.tau3:7.4f}/{printed[3]:7.4f}")

# %% the sideband condition needs cos(Omega_12 t2) = -1; two printed rows miss badly
for a in audit_printed_table():
    mark = "  <-- suspect" if a.suspect else ""
    print(f"p={a.p:>2} q={a.q:>2} tau2={a.printed_tau2:8.4f} cos01={a.cos01:+.4f} "
          f"cos12={a.cos12:+.4f}{mark}")

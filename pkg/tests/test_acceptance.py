"""Acceptance criteria.  Each test records one PASS/FAIL line, printed in the summary."""

import math
import time

import numpy as np
import pytest

import conftest
from trapgates.coupling import rabi_frequency, rabi_frequency_laguerre
from trapgates.dynamics import (
    Pulse,
    RegisterConfig,
    RegisterState,
    closed_form_propagator,
    evolve_sequence,
    leakage,
    oracle_propagator,
    safe_phonon_limit,
)
from trapgates.gates import (
    GateSpec,
    prepare_uniform,
    project_and_compare,
    seq_cn_cb,
    seq_cn_ion_ion,
    seq_cz_cb,
    seq_cz_cb_two_pulse,
    seq_cz_ion_ion,
    shortest_cn_cb,
)
from trapgates.matching import (
    InfeasibleBranch,
    audit_printed_table,
    sideband_match,
    solve_carrier_durations,
    solve_ion_ion_durations,
    solve_target_sandwich,
)

# (p, q, eta, tau2) -> [(p', q', tau1, tau3)], four printed decimals
TABLE = {
    (2, 2, 0.9692, 13.2024): [(5, 1, 29.1785, 2.8108), (8, 1, 38.7753, 12.4076),
                              (10, 1, 45.1732, 18.8055)],
    (2, 3, 0.4819, 18.6448): [(1, 1, 2.9777, 1.5148), (2, 2, 8.1496, 0.8354),
                              (3, 1, 7.4702, 6.0073)],
    (6, 8, 0.4819, 55.9343): [(1, 1, 2.9777, 1.5148), (2, 2, 8.1496, 0.8354),
                              (3, 1, 7.4702, 6.0073)],
    (3, 3, 0.9064, 19.9648): [(2, 1, 10.2554, 1.8081), (3, 1, 13.2713, 4.8239),
                              (8, 2, 45.2453, 3.0088)],
    (9, 8, 0.9064, 59.8943): [(2, 1, 10.2554, 1.8081), (3, 1, 13.2713, 4.8239),
                              (8, 2, 45.2453, 3.0088)],
    (4, 6, 0.2355, 69.8532): [(1, 1, 2.6005, 1.5119), (2, 1, 4.6567, 3.5682),
                              (2, 2, 6.8337, 1.3913)],
    (3, 4, 0.5919, 24.1611): [(1, 1, 3.2991, 1.4661), (2, 1, 5.6817, 3.8487),
                              (2, 2, 9.3477, 0.1827)],
}
ROWS = [(p, q, pp, qq) for (p, q, _, _), comp in TABLE.items() for pp, qq, _, _ in comp]
EXACT = 1e-9


def record(n, ok, detail):
    line = f"criterion {n} {'PASS' if ok else 'FAIL'}: {detail}"
    conftest.ACCEPTANCE.append(line)
    print(line)
    assert ok, line


def test_criterion_1_table_reproduction():
    start = time.perf_counter()
    worst_tau = worst_eta = 0.0
    for (p, q, eta, tau2), companions in TABLE.items():
        m = sideband_match(p, q)
        worst_eta = max(worst_eta, abs(m.eta - eta))
        worst_tau = max(worst_tau, abs(m.tau2 - tau2))
        for pp, qq, tau1, tau3 in companions:
            c = solve_carrier_durations(m.eta, pp, qq)
            worst_tau = max(worst_tau, abs(c.tau1 - tau1), abs(c.tau3 - tau3))
    elapsed = time.perf_counter() - start
    ok = worst_tau < 1e-3 and worst_eta < 5e-4 and elapsed < 1.0
    record(1, ok, f"{len(ROWS)} rows, max |dtau| {worst_tau:.2e}, max |deta| {worst_eta:.2e}, "
                  f"{elapsed:.3f} s")


def test_criterion_2_suspect_rows():
    start = time.perf_counter()
    audits = {(a.p, a.q): a for a in audit_printed_table()}
    suspect = {key for key, a in audits.items() if a.suspect}
    targets = {(10, 8): 33.0061, (14, 20): 16.3571}
    gaps = {}
    for key, tau2 in targets.items():
        a = audits[key]
        assert a.printed_tau2 == tau2
        # independent recomputation at the printed digits
        cos12 = math.cos(rabi_frequency(1, 1, a.eta) * tau2 * math.pi)
        assert cos12 == pytest.approx(a.cos12, abs=1e-12)
        gaps[key] = abs(cos12 + 1)
    elapsed = time.perf_counter() - start
    ok = all(g > 0.5 for g in gaps.values()) and suspect == set(targets) and elapsed < 1.0
    detail = ", ".join(f"{k} |cos12+1|={g:.3f}" for k, g in gaps.items())
    record(2, ok, f"{detail}; flagged {sorted(suspect)}")


def test_criterion_3_exact_closure():
    start = time.perf_counter()
    worst = {"cz_cb": 0.0, "cz_cb_two_pulse": 0.0, "cn_cb": 0.0, "cz_ion_ion": 0.0,
             "cn_ion_ion": 0.0}
    counts = dict.fromkeys(worst, 0)
    bus_ok = True

    def check(name, program, gate):
        nonlocal bus_ok
        r = project_and_compare(program, gate)
        worst[name] = max(worst[name], r.deviation, r.leakage)
        counts[name] += 1
        if gate.kind == "ion_pair":
            bus_ok = bus_ok and r.bus_restored

    for p, q, _, _ in TABLE:
        m = sideband_match(p, q)
        cfg = RegisterConfig(2, m.eta, 1.0, 4)
        check("cz_cb", seq_cz_cb(cfg, m), GateSpec.cz_cb())
        try:
            check("cz_cb_two_pulse", seq_cz_cb_two_pulse(cfg), GateSpec.cz_cb())
        except InfeasibleBranch:
            pass
        ii = solve_ion_ion_durations(m.eta)
        check("cz_ion_ion", seq_cz_ion_ion(cfg, m, ii, 0, 1), GateSpec.cz_ion_ion(0, 1))
        for family in ("pi/2", "3pi/2"):
            sw = solve_target_sandwich(m.eta, 1, 1, family)
            check("cn_ion_ion", seq_cn_ion_ion(cfg, m, ii, sw, 0, 1), GateSpec.cn_ion_ion(0, 1))
    for p, q, pp, qq in ROWS:
        m = sideband_match(p, q)
        cfg = RegisterConfig(2, m.eta, 1.0, 4)
        check("cn_cb", seq_cn_cb(cfg, m, solve_carrier_durations(m.eta, pp, qq)),
              GateSpec.cn_cb())
    elapsed = time.perf_counter() - start
    ok = (max(worst.values()) < EXACT and bus_ok and elapsed < 10.0
          and all(counts.values()))
    detail = ", ".join(f"{k} x{counts[k]} {v:.1e}" for k, v in worst.items())
    record(3, ok, f"{detail}; bus restored {bus_ok}; {elapsed:.2f} s")


def test_criterion_4_oracle_equivalence(rng):
    start = time.perf_counter()
    worst = 0.0
    n = 120
    for _ in range(n):
        cfg = RegisterConfig(int(rng.integers(1, 3)), rng.uniform(0.05, 0.99), 1.0, 8)
        pulse = Pulse(int(rng.integers(cfg.n_ions)), int(rng.integers(2)),
                      rng.uniform(0, 2 * math.pi), rng.uniform(0, 20 * math.pi))
        cols = np.flatnonzero(cfg.phonon_numbers() <= safe_phonon_limit(cfg, [pulse]))
        diff = closed_form_propagator(cfg, pulse)[:, cols] - oracle_propagator(cfg, pulse)[:, cols]
        worst = max(worst, float(np.max(np.abs(diff))))
    elapsed = time.perf_counter() - start
    record(4, worst < 1e-8 and elapsed < 10.0,
           f"{n} random pulses, max |closed - oracle| {worst:.2e}, {elapsed:.2f} s")


def test_criterion_5_phase_freedom(rng):
    m = sideband_match(2, 3)
    cfg = RegisterConfig(1, m.eta, 1.0, 4)
    mats = [project_and_compare(seq_cz_cb(cfg, m, phi=phi), GateSpec.cz_cb()).achieved
            for phi in rng.uniform(0, 2 * math.pi, 50)]
    worst = max(float(np.max(np.abs(a - b))) for i, a in enumerate(mats) for b in mats[i + 1:])
    record(5, worst < 1e-10, f"50 phases, max pairwise difference {worst:.2e}")


def test_criterion_6_uniform_superposition():
    cfg = RegisterConfig(3, 0.4819, 1.0, 4)
    state = prepare_uniform(cfg)
    mags = np.abs(state.amplitudes[: cfg.n_spin])
    dev = float(np.max(np.abs(mags - 2 ** -1.5)))
    leak = leakage(state, 0)
    record(6, dev < 1e-12 and leak == 0.0,
           f"8 amplitudes, max |mag - 2^-1.5| {dev:.2e}, leakage {leak:.1e}")


def test_criterion_7_physical_duration():
    row, secs = shortest_cn_cb(2 * math.pi * 140e3, 2 * math.pi * 30e3)
    total = float(sum(secs))
    record(7, 0.5e-4 <= total <= 5e-4, f"shortest CN_cb row {row}, total {total:.3e} s")


def test_criterion_8_property_suite(rng):
    results = {}

    worst = 0.0
    for _ in range(60):
        cfg = RegisterConfig(int(rng.integers(1, 4)), rng.uniform(0.05, 0.99), 1.0,
                             int(rng.integers(2, 9)))
        pulse = Pulse(int(rng.integers(cfg.n_ions)), int(rng.integers(3)),
                      rng.uniform(0, 2 * math.pi), rng.uniform(0, 20 * math.pi))
        for U in (closed_form_propagator(cfg, pulse), oracle_propagator(cfg, pulse)):
            worst = max(worst, float(np.max(np.abs(U.conj().T @ U - np.eye(cfg.dim)))))
    results["unitarity"] = (worst < 1e-10, worst)

    worst = 0.0
    for _ in range(5):
        cfg = RegisterConfig(2, rng.uniform(0.05, 0.99), 1.0, 8)
        pulses = [Pulse(int(rng.integers(2)), int(rng.integers(2)), rng.uniform(0, 2 * math.pi),
                        rng.uniform(0, 20 * math.pi)) for _ in range(50)]
        amps = rng.normal(size=cfg.dim) + 1j * rng.normal(size=cfg.dim)
        state = RegisterState(cfg, amps / np.linalg.norm(amps))
        for method in ("closed_form", "oracle"):
            worst = max(worst, abs(evolve_sequence(state, pulses, method).norm() - 1.0))
    results["norm"] = (worst < 1e-10, worst)

    worst = 0.0
    for _ in range(300):
        m, k, eta = int(rng.integers(0, 20)), int(rng.integers(0, 6)), rng.uniform(0.01, 0.99)
        a, b = rabi_frequency(m, k, eta), rabi_frequency_laguerre(m, k, eta)
        if a != 0:
            worst = max(worst, abs(a - b) / abs(a))
    results["laguerre"] = (worst < 1e-12, worst)

    cfg = RegisterConfig(1, 1e-6, 1.0, 6)
    U = closed_form_propagator(cfg, Pulse(0, 0, 0.7, math.pi / 2))
    c, s = math.cos(math.pi / 4), math.sin(math.pi / 4)  # Omega_00 -> Omega/2
    # carrier rate becomes phonon independent: same rotation on every block
    blocks = [U[2 * m: 2 * m + 2, 2 * m: 2 * m + 2] for m in range(cfg.n_phonon)]
    worst = max(float(np.max(np.abs(b - blocks[0]))) for b in blocks)
    worst = max(worst, abs(abs(blocks[0][0, 0]) - c), abs(abs(blocks[0][1, 0]) - s))
    results["eta_to_0"] = (worst < 1e-9, worst)

    m = sideband_match(2, 2)
    cfg = RegisterConfig(1, m.eta, 1.0, 4)
    carrier = solve_carrier_durations(m.eta, 5, 1)
    broken = seq_cn_cb(cfg, m, carrier, phi3=carrier.phi1 + math.pi)
    dev = project_and_compare(broken, GateSpec.cn_cb()).deviation
    results["negative_control"] = (dev > 0.1, dev)

    ok = all(v[0] for v in results.values())
    record(8, ok, ", ".join(f"{k} {'ok' if v[0] else 'BAD'} ({v[1]:.1e})"
                            for k, v in results.items()))

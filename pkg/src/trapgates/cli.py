"""Command-line front end.

Subcommands: ``solve``, ``table``, ``verify``, ``simulate``, ``physical``.
Every subcommand accepts ``--format text|record``; ``record`` prints one flat
``key=value`` line per result.  Exit status is 0 on success, 1 when a
verification exceeds its threshold and 2 for usage or infeasible-input errors.
"""

import argparse
import math
import sys

import numpy as np

from . import gates, matching
from .dynamics import RegisterConfig, RegisterState, evolve_sequence, leakage
from .program import ProgramError, parse_program

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

GATES = ("cz_cb", "cz_cb2", "cn_cb", "cz_ii", "cn_ii", "hadamard", "uniform")


def fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "na"
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def emit(fields, style, out):
    """Print one result.  ``fields`` is a list of ``(key, value)`` pairs."""
    if style == "record":
        print(" ".join(f"{k}={fmt(v)}" for k, v in fields), file=out)
    else:
        width = max(len(k) for k, _ in fields)
        for k, v in fields:
            print(f"{k:<{width}}  {fmt(v)}", file=out)
        print(file=out)


class UsageError(Exception):
    pass


# --- solve / table ---------------------------------------------------------

def cmd_solve(args, out):
    if args.table:
        return cmd_table(args, out)
    if args.p is None or args.q is None:
        raise UsageError("solve needs --p and --q (or --table)")
    match = matching.sideband_match(args.p, args.q)
    fields = [("p", args.p), ("q", args.q), ("eta", match.eta), ("tau2", match.tau2)]
    if args.pp is not None or args.qq is not None:
        if args.pp is None or args.qq is None:
            raise UsageError("--pp and --qq go together")
        carrier = matching.solve_carrier_durations(match.eta, args.pp, args.qq, args.family)
        fields += [("p_prime", args.pp), ("q_prime", args.qq), ("phi1", carrier.phi1),
                   ("tau1", carrier.tau1), ("tau3", carrier.tau3)]
    emit(fields, args.format, out)
    return EXIT_OK


def cmd_table(args, out):
    """Regenerate every published row and audit the printed sideband durations."""
    audits = {(a.p, a.q): a for a in matching.audit_printed_table()}
    for sideband_rows, printed_eta, companions in matching.PRINTED_TABLE:
        for p, q, printed_tau2 in sideband_rows:
            audit = audits[(p, q)]
            rows = matching.regenerate_table([(p, q, pp, qq) for pp, qq, _, _ in companions])
            for row, (_, _, t1, t3) in zip(rows, companions):
                emit([
                    ("p", p), ("q", q), ("p_prime", row.p_prime), ("q_prime", row.q_prime),
                    ("eta", row.eta), ("printed_eta", printed_eta),
                    ("tau2", row.tau2), ("printed_tau2", printed_tau2),
                    ("tau1", row.tau1), ("printed_tau1", t1),
                    ("tau3", row.tau3), ("printed_tau3", t3),
                    ("cos01_printed", audit.cos01), ("cos12_printed", audit.cos12),
                    ("suspect", audit.suspect),
                ], args.format, out)
    return EXIT_OK


# --- verify ----------------------------------------------------------------

def _eta_and_match(args):
    if args.eta_from is not None:
        args.p, args.q = args.eta_from
    if args.p is not None and args.q is not None:
        match = matching.sideband_match(args.p, args.q)
        return match.eta, match
    if args.eta is not None:
        return args.eta, None
    raise UsageError("give --p/--q, --eta-from P Q, or --eta")


def _build(args):
    """Return ``(program, gate_spec, params)`` for the requested gate."""
    eta, match = _eta_and_match(args)
    cfg = RegisterConfig(args.n_ions, eta, 1.0, args.cutoff)
    g = args.gate
    params = [("eta", eta)]
    if g in ("cz_cb", "cn_cb", "cz_ii", "cn_ii") and match is None:
        raise UsageError(f"{g} needs --p/--q or --eta-from")
    if match is not None:
        params = [("p", match.p), ("q", match.q)] + params
    if g == "cz_cb":
        return gates.seq_cz_cb(cfg, match, args.target, args.phase), gates.GateSpec.cz_cb(args.target), params
    if g == "cz_cb2":
        prog = gates.seq_cz_cb_two_pulse(cfg, args.target, args.phase)
        return prog, gates.GateSpec.cz_cb(args.target), params
    if g == "cn_cb":
        if args.pp is None or args.qq is None:
            raise UsageError("cn_cb needs --pp and --qq")
        carrier = matching.solve_carrier_durations(eta, args.pp, args.qq, args.family)
        params += [("p_prime", args.pp), ("q_prime", args.qq)]
        prog = gates.seq_cn_cb(cfg, match, carrier, args.target, args.phase)
        return prog, gates.GateSpec.cn_cb(args.target), params
    if g in ("cz_ii", "cn_ii"):
        ii = matching.solve_ion_ion_durations(eta, args.kk, args.kkp)
        params += [("kk", args.kk), ("kk_prime", args.kkp)]
        if g == "cz_ii":
            prog = gates.seq_cz_ion_ion(cfg, match, ii, args.control, args.target)
            return prog, gates.GateSpec.cz_ion_ion(args.control, args.target), params
        sandwich = matching.solve_target_sandwich(eta, args.sp, args.spp, args.family)
        params += [("pp", args.sp), ("pp_prime", args.spp)]
        prog = gates.seq_cn_ion_ion(cfg, match, ii, sandwich, args.control, args.target)
        return prog, gates.GateSpec.cn_ion_ion(args.control, args.target), params
    if g == "hadamard":
        phi = matching.phase_family(args.family)
        prog = gates.seq_rotation(cfg, args.target, phi, gates.hadamard_tau(eta))
        return prog, gates.GateSpec.hadamard(args.target, phi), params
    raise UsageError(f"unknown gate {g!r}")


def _verify_uniform(args, out):
    eta, _ = _eta_and_match(args)
    cfg = RegisterConfig(args.n_ions, eta, 1.0, args.cutoff)
    ideal = np.array([1.0], dtype=complex)
    for _ in range(cfg.n_ions):
        ideal = np.kron(ideal, np.array([1, -1]) / math.sqrt(2))
    ideal = np.concatenate([ideal, np.zeros(cfg.dim - cfg.n_spin)])
    state = gates.prepare_uniform(cfg)
    dev = float(np.max(np.abs(state.amplitudes - ideal)))
    fields = [("gate", "uniform"), ("n_ions", cfg.n_ions), ("eta", eta),
              ("deviation", dev), ("leakage", leakage(state, 0)),
              ("norm_error", abs(state.norm() - 1.0))]
    ok = dev <= args.threshold
    emit(fields + [("passed", ok)], args.format, out)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_verify(args, out):
    if args.gate == "uniform":
        return _verify_uniform(args, out)
    prog, spec, params = _build(args)
    if args.use_table_digits:
        prog = gates.round_durations(prog, 4)
    report = gates.project_and_compare(prog, spec, "closed_form")
    oracle = gates.project_and_compare(prog, spec, "oracle")
    fields = [("gate", args.gate)] + params + [
        ("pulses", len(prog)),
        ("deviation", report.deviation),
        ("oracle_deviation", oracle.deviation),
        ("phase_deviation", report.phase_deviation),
        ("global_phase", report.global_phase),
        ("leakage", report.leakage),
        ("trace_fidelity", report.trace_fidelity),
        ("bus_restored", report.bus_restored),
    ]
    for n, pulse in enumerate(prog, start=1):
        fields += [(f"pulse{n}_k", pulse.k), (f"pulse{n}_tau", pulse.tau)]
        if args.omega_rad_s is not None:
            fields.append((f"pulse{n}_seconds", pulse.duration / args.omega_rad_s))
    ok = max(report.deviation, oracle.deviation) <= args.threshold
    emit(fields + [("passed", ok)], args.format, out)
    return EXIT_OK if ok else EXIT_FAILED


# --- simulate --------------------------------------------------------------

def _initial_state(cfg, label):
    m_text, _, spins = label.partition(":")
    if not spins:
        raise UsageError(f"initial state {label!r} should look like '0:gg'")
    try:
        return RegisterState.basis(cfg, int(m_text), spins)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_simulate(args, out):
    with open(args.program, encoding="utf-8") as fh:
        pfile = parse_program(fh.read())
    cfg = pfile.config()
    label = args.initial or "0:" + "g" * cfg.n_ions
    state = evolve_sequence(_initial_state(cfg, label), pfile.to_pulses(), args.method)
    for idx in np.flatnonzero(np.abs(state.amplitudes) > args.cutoff_amplitude):
        m, s = divmod(int(idx), cfg.n_spin)
        spins = "".join("ge"[(s >> (cfg.n_ions - 1 - j)) & 1] for j in range(cfg.n_ions))
        amp = complex(state.amplitudes[idx])
        emit([("m", m), ("spins", spins), ("re", amp.real), ("im", amp.imag),
              ("prob", abs(amp) ** 2)], args.format, out)
    emit([("initial", label), ("pulses", len(pfile.pulses)), ("norm", state.norm()),
          ("leakage_above_1", leakage(state, 1))], args.format, out)
    return EXIT_OK


# --- physical --------------------------------------------------------------

def cmd_physical(args, out):
    w_res = 2 * math.pi * args.omega_resonant_hz
    w_sb = 2 * math.pi * args.omega_sideband_hz
    if w_res <= 0 or w_sb <= 0:
        raise UsageError("frequencies must be positive")
    if args.program:
        with open(args.program, encoding="utf-8") as fh:
            pulses = parse_program(fh.read()).to_pulses()
        secs = gates.pulse_seconds(pulses, w_res, w_sb)
        fields = [("source", args.program)]
    else:
        pulses = None
        if args.p is not None:
            row = (args.p, args.q, args.pp, args.qq)
            if None in row:
                raise UsageError("give all of --p --q --pp --qq, or none for the shortest table row")
            secs = gates.cn_cb_seconds(*row, w_res, w_sb, args.family)
        else:
            row, secs = gates.shortest_cn_cb(w_res, w_sb)
        fields = [("gate", "cn_cb"), ("p", row[0]), ("q", row[1]),
                  ("p_prime", row[2]), ("q_prime", row[3])]
    for n, t in enumerate(secs, start=1):
        fields.append((f"pulse{n}_seconds", t))
    fields.append(("total_seconds", float(sum(secs))))
    emit(fields, args.format, out)
    return EXIT_OK


# --- argument parsing ------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="trapgates",
        description="Exact trapped-ion gates beyond the Lamb-Dicke limit.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "record"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    family = dict(default="pi/2", choices=("pi/2", "3pi/2"),
                  help="carrier phase family (default pi/2)")

    s = sub.add_parser("solve", parents=[common], help="solve matching conditions")
    s.add_argument("--p", type=int)
    s.add_argument("--q", type=int)
    s.add_argument("--pp", type=int, help="p' for the carrier pulses")
    s.add_argument("--qq", type=int, help="q' for the carrier pulses")
    s.add_argument("--family", **family)
    s.add_argument("--table", action="store_true", help="regenerate the published table")
    s.set_defaults(func=cmd_solve)

    t = sub.add_parser("table", parents=[common], help="regenerate the published table")
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", parents=[common], help="build a gate and check it")
    v.add_argument("gate", choices=GATES)
    v.add_argument("--p", type=int)
    v.add_argument("--q", type=int)
    v.add_argument("--eta-from", type=int, nargs=2, metavar=("P", "Q"))
    v.add_argument("--eta", type=float)
    v.add_argument("--pp", type=int)
    v.add_argument("--qq", type=int)
    v.add_argument("--kk", type=int, default=1)
    v.add_argument("--kkp", type=int, default=1)
    v.add_argument("--sp", type=int, default=1, help="target carrier index p")
    v.add_argument("--spp", type=int, default=1, help="target carrier index p'")
    v.add_argument("--family", **family)
    v.add_argument("--phase", type=float, default=math.pi / 2,
                   help="phase of the bus sideband pulse")
    v.add_argument("--n-ions", type=int, default=2)
    v.add_argument("--cutoff", type=int, default=4)
    v.add_argument("--control", type=int, default=0)
    v.add_argument("--target", type=int, default=None)
    v.add_argument("--threshold", type=float, default=1e-6)
    v.add_argument("--use-table-digits", action="store_true",
                   help="round durations to 4 decimals in pi/Omega")
    v.add_argument("--omega-rad-s", type=float, help="base Rabi rate for seconds output")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("simulate", parents=[common], help="run a pulse-program file")
    m.add_argument("program")
    m.add_argument("--initial", help="basis state as 'm:spins', e.g. '1:e'")
    m.add_argument("--method", choices=("closed_form", "oracle"), default="closed_form")
    m.add_argument("--cutoff-amplitude", type=float, default=1e-12)
    m.set_defaults(func=cmd_simulate)

    ph = sub.add_parser("physical", parents=[common], help="pulse durations in seconds")
    ph.add_argument("--omega-resonant-hz", type=float, default=140e3,
                    help="carrier Rabi frequency / 2pi (default 140 kHz)")
    ph.add_argument("--omega-sideband-hz", type=float, default=30e3,
                    help="sideband Rabi frequency / 2pi (default 30 kHz)")
    ph.add_argument("--p", type=int)
    ph.add_argument("--q", type=int)
    ph.add_argument("--pp", type=int)
    ph.add_argument("--qq", type=int)
    ph.add_argument("--family", **family)
    ph.add_argument("--program", help="convert a pulse-program file instead")
    ph.set_defaults(func=cmd_physical)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if getattr(args, "target", 0) is None:
        args.target = 1 if args.gate in ("cz_ii", "cn_ii") else 0
    try:
        return args.func(args, out)
    except (UsageError, matching.MatchingError, ProgramError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

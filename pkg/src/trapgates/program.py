"""Line-oriented pulse-program files.

Example::

    # bus CNOT, eta from p=2, q=3
    register N=1 eta=0.4819056412137454 cutoff=4 omega_rad_s=879645.943
    pulse ion=0 k=0 phase=pi/2 dur=2.9776777pi/omega
    pulse ion=0 k=1 phase=0 dur=18.644757pi/omega
    pulse ion=0 k=0 phase=pi/2 dur=1.5148292pi/omega

Durations end in a unit: ``/omega`` for a dimensionless pulse area
``Omega t`` or ``s`` for seconds (which needs ``omega_rad_s``).  Phases and
duration magnitudes accept pi expressions such as ``3pi/2`` or ``0.25pi``.
"""

from dataclasses import dataclass
import math
import re

from .dynamics import Pulse, RegisterConfig
from .gates import PulseProgram

__all__ = [
    "ProgramError",
    "ProgramSyntaxError",
    "ProgramSemanticError",
    "PulseRecord",
    "PulseProgramFile",
    "parse_program",
    "serialize_program",
    "from_program",
    "parse_pi_expr",
]

_NUMBER = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_PI_EXPR = re.compile(
    rf"^(?:(?P<coef>{_NUMBER})|(?P<sign>[+-]?))(?P<pi>pi)?(?:/(?P<den>{_NUMBER}))?$")
_DUR = re.compile(r"^(?P<value>.+?)(?P<unit>/omega|s)$")

UNITS = {"/omega": "per_omega", "s": "seconds"}

_REGISTER_KEYS = {"N": True, "eta": True, "cutoff": True, "omega_rad_s": False}
_PULSE_KEYS = {"ion": True, "k": True, "phase": True, "dur": True}


class ProgramError(ValueError):
    def __init__(self, message, line, column=None):
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


class ProgramSyntaxError(ProgramError):
    def __init__(self, message, line, column, expected):
        self.expected = expected
        super().__init__(f"{message} (expected {expected})", line, column)


class ProgramSemanticError(ProgramError):
    pass


@dataclass(frozen=True)
class PulseRecord:
    ion: int
    k: int
    phase: float
    duration: float
    unit: str = "per_omega"


@dataclass(frozen=True)
class PulseProgramFile:
    n_ions: int
    eta: float
    cutoff: int
    omega_rad_s: float = None
    pulses: tuple = ()

    def config(self):
        return RegisterConfig(self.n_ions, self.eta, 1.0, self.cutoff)

    def to_pulses(self):
        """Pulses with durations converted to the dimensionless area ``Omega t``."""
        out = []
        for rec in self.pulses:
            area = rec.duration if rec.unit == "per_omega" else rec.duration * self.omega_rad_s
            out.append(Pulse(rec.ion, rec.k, rec.phase, area))
        return out

    def to_program(self):
        return PulseProgram(self.config(), self.to_pulses())


def parse_pi_expr(text):
    """Evaluate ``1.5``, ``pi``, ``-pi/4``, ``3pi/2`` or ``0.25pi``; ``None`` if malformed."""
    m = _PI_EXPR.match(text)
    if not m or (m.group("coef") is None and not m.group("pi")):
        return None
    if m.group("coef") is not None:
        value = float(m.group("coef"))
    else:
        value = -1.0 if m.group("sign") == "-" else 1.0
    if m.group("pi"):
        value *= math.pi
    if m.group("den") is not None:
        den = float(m.group("den"))
        if den == 0:
            return None
        value /= den
    return value


def _tokens(line):
    """Yield ``(column, token)`` for whitespace-separated tokens (1-based columns)."""
    for m in re.finditer(r"\S+", line):
        yield m.start() + 1, m.group()


def _fields(tokens, allowed, lineno):
    values = {}
    for col, tok in tokens:
        key, eq, value = tok.partition("=")
        if not eq or not key:
            raise ProgramSyntaxError(f"malformed field {tok!r}", lineno, col, "key=value")
        if key not in allowed:
            raise ProgramSyntaxError(f"unknown key {key!r}", lineno, col,
                                     " | ".join(allowed))
        if key in values:
            raise ProgramSyntaxError(f"duplicate key {key!r}", lineno, col, "each key once")
        if not value:
            raise ProgramSyntaxError(f"empty value for {key!r}", lineno, col + len(key) + 1,
                                     "a value")
        values[key] = (col + len(key) + 1, value)
    return values


def _require(values, allowed, lineno, end_col):
    for key, required in allowed.items():
        if required and key not in values:
            raise ProgramSyntaxError(f"missing {key!r}", lineno, end_col, f"{key}=...")


def _int(values, key, lineno):
    col, text = values[key]
    if not re.fullmatch(r"[+-]?\d+", text):
        raise ProgramSyntaxError(f"bad integer {text!r} for {key}", lineno, col, "integer")
    return int(text)


def _float(values, key, lineno, pi_ok=False):
    col, text = values[key]
    if pi_ok:
        value = parse_pi_expr(text)
    else:
        value = float(text) if re.fullmatch(_NUMBER, text) else None
    if value is None:
        raise ProgramSyntaxError(f"bad number {text!r} for {key}", lineno, col,
                                 "number or pi expression" if pi_ok else "number")
    return value


def parse_program(text):
    """Parse program text into a :class:`PulseProgramFile`."""
    header = None
    header_line = None
    records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = list(_tokens(line))
        if not toks:
            continue
        (col0, keyword), rest = toks[0], toks[1:]
        end_col = len(line.rstrip()) + 1

        if keyword == "register":
            if header is not None:
                raise ProgramSemanticError(
                    f"duplicate register line (first on line {header_line})", lineno, col0)
            values = _fields(rest, _REGISTER_KEYS, lineno)
            _require(values, _REGISTER_KEYS, lineno, end_col)
            n_ions = _int(values, "N", lineno)
            eta = _float(values, "eta", lineno)
            cutoff = _int(values, "cutoff", lineno)
            omega = _float(values, "omega_rad_s", lineno) if "omega_rad_s" in values else None
            try:
                RegisterConfig(n_ions, eta, 1.0 if omega is None else omega, cutoff)
            except ValueError as exc:
                raise ProgramSemanticError(str(exc), lineno, col0) from None
            header = (n_ions, eta, cutoff, omega)
            header_line = lineno

        elif keyword == "pulse":
            values = _fields(rest, _PULSE_KEYS, lineno)
            _require(values, _PULSE_KEYS, lineno, end_col)
            if header is None:
                raise ProgramSemanticError("pulse before register line", lineno, col0)
            n_ions, _, _, omega = header
            ion = _int(values, "ion", lineno)
            k = _int(values, "k", lineno)
            phase = _float(values, "phase", lineno, pi_ok=True)
            dur_col, dur_text = values["dur"]
            m = _DUR.match(dur_text)
            magnitude = parse_pi_expr(m.group("value")) if m else None
            if magnitude is None:
                raise ProgramSyntaxError(f"bad duration {dur_text!r}", lineno, dur_col,
                                         "<number or pi expression>/omega or <number>s")
            unit = UNITS[m.group("unit")]
            if not 0 <= ion < n_ions:
                raise ProgramSemanticError(f"ion {ion} out of range for N={n_ions}",
                                           lineno, values["ion"][0])
            if k not in (0, 1):
                raise ProgramSemanticError(f"sideband k={k} not supported (0 or 1)",
                                           lineno, values["k"][0])
            if magnitude < 0:
                raise ProgramSemanticError("negative duration", lineno, dur_col)
            if unit == "seconds" and omega is None:
                raise ProgramSemanticError("duration in seconds needs omega_rad_s in register",
                                           lineno, dur_col)
            records.append(PulseRecord(ion, k, phase, magnitude, unit))

        else:
            raise ProgramSyntaxError(f"unknown statement {keyword!r}", lineno, col0,
                                     "'register' or 'pulse'")

    if header is None:
        raise ProgramSemanticError("missing register line", 1)
    n_ions, eta, cutoff, omega = header
    return PulseProgramFile(n_ions, eta, cutoff, omega, tuple(records))


def serialize_program(prog):
    """Canonical text form; floats are written with ``repr`` so they round-trip."""
    head = f"register N={prog.n_ions} eta={prog.eta!r} cutoff={prog.cutoff}"
    if prog.omega_rad_s is not None:
        head += f" omega_rad_s={prog.omega_rad_s!r}"
    lines = [head]
    for rec in prog.pulses:
        unit = "/omega" if rec.unit == "per_omega" else "s"
        lines.append(f"pulse ion={rec.ion} k={rec.k} phase={rec.phase!r} "
                     f"dur={rec.duration!r}{unit}")
    return "\n".join(lines) + "\n"


def from_program(program, omega_rad_s=None):
    """File form of an in-memory :class:`PulseProgram` (areas in ``/omega``)."""
    cfg = program.config
    records = tuple(PulseRecord(p.target, p.k, p.phase, p.duration) for p in program)
    return PulseProgramFile(cfg.n_ions, cfg.eta, cfg.fock_cutoff, omega_rad_s, records)

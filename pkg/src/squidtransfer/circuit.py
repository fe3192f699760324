"""Circuit element values to effective model parameters, and tau to seconds.

This is the only module that carries physical units (SI throughout).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# CODATA 2018 exact values
E_CHARGE = 1.602176634e-19
HBAR = 1.054571817e-34
K_B = 1.380649e-23


@dataclass(frozen=True)
class CircuitParams:
    c_j0: float
    c_g: float
    c_c: float
    c_0: float
    l_o: float
    e_j0: float
    phi_ext: float = 0.0
    v_g: float | None = None

    def __post_init__(self):
        for name in ("c_j0", "c_g", "c_c", "c_0", "l_o"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive, got {v}")
        if not (math.isfinite(self.e_j0) and self.e_j0 >= 0):
            raise DomainError(f"e_j0 must be >= 0, got {self.e_j0}")
        if not math.isfinite(self.phi_ext):
            raise DomainError("phi_ext must be finite")


@dataclass(frozen=True)
class DerivedParams:
    cap_c: float
    cap_c1: float
    cap_c2: float
    det_d: float | None
    omega: float
    rabi_omega: float
    e_j: float
    t_per_tau: float
    charging_energy: float
    gate_offset: float | None = None


def oscillator_frequency(l_o, cap_c2):
    return 1.0 / math.sqrt(l_o * cap_c2)


def rabi_frequency(omega, cap_c1, cap_c2):
    return E_CHARGE * math.sqrt(2.0 * omega * cap_c2 / (HBAR * cap_c1**2))


def josephson_energy(e_j0, phi_ext):
    return 2.0 * e_j0 * math.cos(2.0 * E_CHARGE * phi_ext / HBAR)


def charging_energy(cap_c):
    return E_CHARGE**2 / (2.0 * cap_c)


def derive(p):
    """Effective capacitances, frequencies and energies for a circuit."""
    d = (p.c_0 + p.c_c) * (p.c_g + 2 * p.c_j0) + p.c_c * p.c_0
    cap_c = d / (p.c_0 + p.c_c)
    cap_c1 = d / (p.c_g + 2 * p.c_j0 + p.c_c)
    cap_c2 = d / p.c_c
    omega = oscillator_frequency(p.l_o, cap_c2)
    rabi = rabi_frequency(omega, cap_c1, cap_c2)
    offset = None
    if p.v_g is not None:
        # relative distance from the charge-degeneracy point C_g V_g = e
        offset = (p.c_g * p.v_g - E_CHARGE) / E_CHARGE
    return DerivedParams(
        cap_c=cap_c,
        cap_c1=cap_c1,
        cap_c2=cap_c2,
        det_d=d,
        omega=omega,
        rabi_omega=rabi,
        e_j=josephson_energy(p.e_j0, p.phi_ext),
        t_per_tau=1.0 / rabi,
        charging_energy=charging_energy(cap_c),
        gate_offset=offset,
    )


def derive_effective(cap_c, cap_c1, cap_c2, l_o, e_j):
    """Derived parameters from already-effective capacitances.

    The quoted order-of-magnitude values (C1 ~ 1e-11 F with C2 ~ 1 pF) cannot
    come from any positive set of raw elements, since C1 <= C2 always holds,
    so they are entered here directly.
    """
    for name, v in (("cap_c", cap_c), ("cap_c1", cap_c1), ("cap_c2", cap_c2), ("l_o", l_o)):
        if not (math.isfinite(v) and v > 0):
            raise DomainError(f"{name} must be positive, got {v}")
    omega = oscillator_frequency(l_o, cap_c2)
    rabi = rabi_frequency(omega, cap_c1, cap_c2)
    return DerivedParams(
        cap_c=cap_c,
        cap_c1=cap_c1,
        cap_c2=cap_c2,
        det_d=None,
        omega=omega,
        rabi_omega=rabi,
        e_j=e_j,
        t_per_tau=1.0 / rabi,
        charging_energy=charging_energy(cap_c),
    )


def nominal():
    """Order-of-magnitude design point: C2 = 1 pF, L_o = 10 nH, C1 = 1e-11 F,
    island capacitance from C_J0 ~ 1e-15 F, Josephson energy tuned to resonance."""
    cap_c2, l_o = 1e-12, 1e-8
    return derive_effective(
        cap_c=2e-15,
        cap_c1=1e-11,
        cap_c2=cap_c2,
        l_o=l_o,
        e_j=HBAR * oscillator_frequency(l_o, cap_c2),
    )


@dataclass(frozen=True)
class RegimeThresholds:
    rwa_ratio: float = 0.05
    charge_factor: float = 5.0
    thermal_ratio: float = 0.1
    detuning_ratio: float = 0.05


@dataclass(frozen=True)
class RegimeCheck:
    name: str
    passed: bool
    ratio: float
    limit: float


def regime_check(d, temperature, thresholds=RegimeThresholds()):
    """Named pass/fail checks of the approximations behind the model.

    Never raises; a failed check is reported with its measured ratio.
    """
    ec = d.charging_energy
    ratio_rwa = d.rabi_omega / d.omega
    ratio_charge = abs(d.e_j) / ec if ec > 0 else math.inf
    ratio_thermal = K_B * temperature / ec if ec > 0 else math.inf
    ratio_detune = abs(d.e_j / HBAR - d.omega) / d.omega
    return [
        RegimeCheck("rwa", ratio_rwa < thresholds.rwa_ratio, ratio_rwa, thresholds.rwa_ratio),
        RegimeCheck(
            "charge_regime",
            ratio_charge < 1.0 / thresholds.charge_factor,
            ratio_charge,
            1.0 / thresholds.charge_factor,
        ),
        RegimeCheck(
            "low_temperature",
            ratio_thermal < thresholds.thermal_ratio,
            ratio_thermal,
            thresholds.thermal_ratio,
        ),
        RegimeCheck(
            "resonance",
            ratio_detune < thresholds.detuning_ratio,
            ratio_detune,
            thresholds.detuning_ratio,
        ),
    ]


def tau_to_seconds(tau, d):
    if tau < 0:
        raise DomainError(f"tau must be >= 0, got {tau}")
    return tau / d.rabi_omega


PARAM_KEYS = ("c_j0", "c_g", "c_c", "c_0", "l_o", "e_j0", "phi_ext", "v_g")


def parse_circuit_file(text):
    """Parse ``key = value`` lines (``#`` comments) into :class:`CircuitParams`."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, val = (part.strip() for part in line.split("=", 1))
        if key not in PARAM_KEYS:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        try:
            values[key] = float(val)
        except ValueError:
            raise ValueError(f"line {lineno}: {key} is not a number: {val!r}") from None
        if not math.isfinite(values[key]):
            raise ValueError(f"line {lineno}: {key} must be finite")
    missing = [k for k in PARAM_KEYS[:6] if k not in values]
    if missing:
        raise ValueError(f"missing keys: {', '.join(missing)}")
    return CircuitParams(**values)


def load_circuit_file(path):
    with open(path, encoding="utf-8") as fh:
        return parse_circuit_file(fh.read())

"""Reproduction checks shared by ``squidtransfer verify`` and the test suite.

Every check carries its tolerance inline; nothing here is tuned after the
fact.  Each criterion returns one or more :class:`Check` records.
"""
from __future__ import annotations

import filecmp
import math
import os
import tempfile
from dataclasses import dataclass

import numpy as np

from . import circuit, experiments
from .dynamics import assemble_density, check_density, coefficient_arrays, coefficients, evolve_from_ground
from .errors import IntegrityError, SquidTransferError
from .measures import linearized_entropy, npt_negativity, purified, teleport_useful
from .oracle import GROUND, evolve, max_abs_diff
from .spectrum import DEFAULT_EPSILON_TAIL, build_spectrum

PEAK_R = 0.86
PEAK_TAU = 1.5 * math.pi


@dataclass(frozen=True)
class Check:
    criterion: int
    name: str
    passed: bool
    detail: str

    def line(self):
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.criterion:>2} {self.name}: {self.detail}"


class _Cache:
    """Lazily computed artefacts reused by several criteria."""

    def __init__(self, epsilon_tail):
        self.epsilon_tail = epsilon_tail
        self._sweep = None

    @property
    def sweep(self):
        if self._sweep is None:
            spec = experiments.SweepSpec(epsilon_tail=self.epsilon_tail)
            self._sweep = experiments.sweep_ground(spec)
        return self._sweep


def _within(x, target, tol):
    return abs(x - target) <= tol


def peak_entanglement(cache):
    r, tau, value = experiments.find_peak(cache.sweep, "e_npt")
    detail = f"peak E_NPT={value:.4f} at r={r:.4f}, tau={tau:.4f}"
    return [
        Check(1, "peak value 0.87 +- 0.02", _within(value, 0.87, 0.02), detail),
        Check(1, "peak r 0.86 +- 0.05", _within(r, 0.86, 0.05), f"r={r:.4f}"),
        Check(1, "peak tau 3pi/2 +- 0.05", _within(tau, PEAK_TAU, 0.05),
              f"tau={tau:.4f}, |tau - 3pi/2|={abs(tau - PEAK_TAU):.4f}"),
    ]


def eof_at_peak(cache):
    r, tau, _ = experiments.find_peak(cache.sweep, "e_npt")
    rep = cache.sweep.reports[int(np.argmax(cache.sweep.column("e_npt")))]
    return [Check(0, "EoF at peak 0.82 +- 0.02", _within(rep.eof, 0.82, 0.02),
                  f"EoF={rep.eof:.4f} (C={rep.concurrence:.4f}) at r={r:.4f}, tau={tau:.4f}")]


def oracle_grid(epsilon_tail, n=20):
    return np.linspace(0.0, 2.0, n), np.linspace(0.0, 3.0 * math.pi, n)


def oracle_equivalence(cache):
    rs, taus = oracle_grid(cache.epsilon_tail)
    worst_oracle = worst_kraus = 0.0
    invalid = 0
    for r in rs:
        s = build_spectrum(r, cache.epsilon_tail)
        a, b, c, d = coefficient_arrays(s, taus)
        for i, t in enumerate(taus):
            co = experiments.AbcdCoefficients(a[i], b[i], c[i], d[i], float(r), float(t))
            closed = assemble_density(co, validate=False)
            kraus = evolve_from_ground(s, t)
            full = evolve(GROUND, s, t)
            worst_oracle = max(worst_oracle, max_abs_diff(closed, full))
            worst_kraus = max(worst_kraus, max_abs_diff(closed, kraus))
            for rho in (closed, kraus, full):
                try:
                    check_density(rho)
                except IntegrityError:
                    invalid += 1
    return [
        Check(2, "closed form vs oracle <= 1e-8 (20x20)", worst_oracle <= 1e-8,
              f"max |diff|={worst_oracle:.2e}"),
        Check(2, "series vs Kraus sum <= 1e-12 (20x20)", worst_kraus <= 1e-12,
              f"max |diff|={worst_kraus:.2e}"),
        Check(3, "oracle-grid states valid", invalid == 0, f"{invalid} invalid of {3 * rs.size * taus.size}"),
    ]


def state_validity(cache):
    # every sweep state was validated on assembly; recheck all coefficient sets
    bad = 0
    for co in cache.sweep.coefficients:
        try:
            check_density(assemble_density(co, validate=False))
        except IntegrityError:
            bad += 1
    return [Check(3, "sweep states Hermitian/unit-trace/PSD", bad == 0,
                  f"{bad} invalid of {len(cache.sweep.coefficients)}")]


def structural_identity(cache):
    e = cache.sweep.column("e_npt")
    conc = cache.sweep.column("concurrence")
    worst = float(np.max(np.abs(conc - np.maximum(0.0, e))))
    return [Check(4, "concurrence == max(0, E_NPT) <= 1e-10", worst <= 1e-10, f"max |diff|={worst:.2e}")]


def near_purity(cache):
    s = build_spectrum(PEAK_R, cache.epsilon_tail)
    co = coefficients(s, PEAK_TAU)
    s_pure = linearized_entropy(purified(co))
    s_full = linearized_entropy(assemble_density(co))
    useful = teleport_useful(s_pure, 2)
    return [
        Check(5, "purified S_l <= 0.02", s_pure <= 0.02, f"S_l={s_pure:.4f}"),
        Check(5, "teleportation-useful (S_l < 2/3)", useful, f"S_l={s_pure:.4f}"),
        Check(5, "full-state S_l (reported, no target)", True, f"S_l={s_full:.4f}"),
    ]


def averaged_peak(cache, grid_n=64):
    rho = experiments.averaged_density(PEAK_R, PEAK_TAU, grid_n, cache.epsilon_tail)
    e = npt_negativity(rho)[0]
    conv = experiments.averaged_convergence(PEAK_R, PEAK_TAU, grid_n, cache.epsilon_tail)
    return [
        Check(6, "averaged E_NPT 0.4 +- 0.05", _within(e, 0.4, 0.05), f"E_NPT={e:.4f} (grid_n={grid_n})"),
        Check(6, "quadrature self-convergence < 1e-3", conv < 1e-3, f"|dE|={conv:.2e}"),
        Check(3, "averaged state valid", _valid(rho), "PSD, unit trace, Hermitian"),
    ]


def _valid(rho):
    try:
        check_density(rho)
    except IntegrityError:
        return False
    return True


PLUS_PLUS_R = np.linspace(0.0, 2.0, 41)
PLUS_PLUS_TAU = np.linspace(0.0, 3.0 * math.pi, 41)


def preparation_checks(cache):
    scan = experiments.preparation_scan(PEAK_R, PEAK_TAU, 33, 33, cache.epsilon_tail)
    a, b, value = scan.argmax()
    # alpha or beta = pi, 2pi reproduce |--> up to a sign, so ties at the maximum are expected
    origin_is_max = (a, b) == (0.0, 0.0)
    pp = experiments.PLUS_PLUS
    s = build_spectrum(0.6, cache.epsilon_tail)
    bump = npt_negativity(experiments.evolve_many([pp], s, 1.7)[0])[0]
    grid = experiments.prepared_npt_map(pp, PLUS_PLUS_R, PLUS_PLUS_TAU, cache.epsilon_tail)
    frac = float(np.mean(grid <= 0.0))
    return [
        Check(7, "prep-scan maximum at alpha=beta=0", origin_is_max,
              f"argmax at ({a:.3f}, {b:.3f}), E_NPT(0,0)={scan.e_npt[0, 0]:.4f}"),
        Check(7, "prep-scan maximum 0.87 +- 0.02", _within(value, 0.87, 0.02), f"E_NPT={value:.4f}"),
        Check(7, "|++> E_NPT > 0 at (0.6, 1.7)", bump > 0, f"E_NPT={bump:.4f}"),
        Check(7, "|++> E_NPT <= 0 on majority of r in [0,2], tau in [0,3pi]", frac > 0.5,
              f"fraction <= 0: {frac:.3f} on 41x41"),
    ]


def early_time_and_revival(cache):
    s = build_spectrum(PEAK_R, cache.epsilon_tail)
    early = np.linspace(0.0, 0.1, 11)
    a, b, c, d = coefficient_arrays(s, early)
    e_early = float(np.max(2.0 * (d - b)))
    taus = np.linspace(0.0, 3.0 * math.pi, 400)
    a, b, c, d = coefficient_arrays(s, taus)
    profile = 2.0 * (d - b)
    maxima, minima = experiments.local_extrema(profile)
    revival = len(maxima) >= 2 and any(maxima[0] < m < maxima[-1] for m in minima)
    return [
        Check(8, "E_NPT <= 0 for tau <= 0.1 at r=0.86", e_early <= 0.0, f"max E_NPT={e_early:.4e}"),
        Check(8, "collapse and revival (>= 2 maxima around a minimum)", revival,
              f"{len(maxima)} local maxima, {len(minima)} local minima"),
    ]


def circuit_mapping(cache):
    omega = circuit.oscillator_frequency(1e-8, 1e-12)
    d = circuit.nominal()
    t_lo = circuit.tau_to_seconds(PEAK_TAU, circuit.derive_effective(2e-15, 1e-11, 1e-12, 1e-8, 0.0)) * 1e9
    band = [PEAK_TAU / w * 1e9 for w in (1e8, 3e8)]
    rwa = {c.name: c for c in circuit.regime_check(d, 0.02)}["rwa"]
    return [
        Check(9, "omega(C2=1pF, L=10nH) = 1e10 rad/s", math.isclose(omega, 1e10, rel_tol=1e-15),
              f"omega={omega!r}"),
        Check(9, "nominal Omega in [1e8, 3e8] rad/s", 1e8 <= d.rabi_omega <= 3e8, f"Omega={d.rabi_omega:.4e}"),
        Check(9, "t(3pi/2) in [15, 50] ns", 15 <= t_lo <= 50 and all(15 <= t <= 50 for t in band),
              f"t={t_lo:.2f} ns nominal; band {band[1]:.2f}-{band[0]:.2f} ns"),
        Check(9, "nominal RWA regime", rwa.passed, f"Omega/omega={rwa.ratio:.4f}"),
    ]


def determinism(cache):
    from .cli import main

    results = []
    with tempfile.TemporaryDirectory() as tmp:
        runs = {
            "sweep": ["sweep", "--r-range", "0.5:1.2:12", "--tau-range", "0:9.42:15"],
            "prep-scan": ["prep-scan", "--r", "0.86", "--tau", "4.712", "--grid-n", "16"],
            "average": ["average", "--r", "0.86", "--tau", "4.712", "--grid-n", "16"],
            "point": ["point", "--r", "0.86", "--tau", "4.712"],
        }
        for name, argv in runs.items():
            paths = []
            for k, workers in enumerate(("1", "1", "3")):
                out = os.path.join(tmp, f"{name}-{k}")
                code = main(argv + ["--out", out, "--workers", workers])
                paths.append(out if code == 0 else None)
            same = all(p is not None for p in paths) and all(
                filecmp.cmp(paths[0], p, shallow=False) for p in paths[1:]
            )
            results.append(Check(10, f"byte-identical '{name}' output", same, "3 runs, workers 1/1/3"))
    return results


CRITERIA = (
    peak_entanglement,
    oracle_equivalence,
    state_validity,
    structural_identity,
    near_purity,
    averaged_peak,
    preparation_checks,
    early_time_and_revival,
    circuit_mapping,
    determinism,
    eof_at_peak,
)


def run_all(epsilon_tail=DEFAULT_EPSILON_TAIL, include_determinism=True):
    cache = _Cache(epsilon_tail)
    checks = []
    for fn in CRITERIA:
        if fn is determinism and not include_determinism:
            continue
        try:
            checks.extend(fn(cache))
        except SquidTransferError as exc:
            checks.append(Check(-1, fn.__name__, False, f"{type(exc).__name__}: {exc}"))
    return checks

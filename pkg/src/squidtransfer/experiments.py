"""Parameter sweeps and aggregates over the (r, tau) plane and over preparations."""
from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .dynamics import AbcdCoefficients, assemble_density, check_density, coefficient_arrays
from .errors import ValidationError
from .kernels import BACKEND
from .measures import npt_negativity, report
from .oracle import GROUND, ProductPreparation, evolve, evolve_many
from .spectrum import DEFAULT_EPSILON_TAIL, build_spectrum

MEASURES = ("e_npt", "lambda_min", "concurrence", "eof", "s_linear", "purity")
THREE_PI = 3.0 * math.pi


@dataclass(frozen=True)
class SweepSpec:
    r_min: float = 0.0
    r_max: float = 2.0
    r_steps: int = 200
    tau_min: float = 0.0
    tau_max: float = THREE_PI
    tau_steps: int = 200
    preparation: ProductPreparation = GROUND
    epsilon_tail: float = DEFAULT_EPSILON_TAIL
    measures: tuple = MEASURES

    def validate(self):
        for name in ("r_min", "r_max", "tau_min", "tau_max", "epsilon_tail"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite")
        if self.r_steps < 2 or self.tau_steps < 2:
            raise ValidationError("r_steps and tau_steps must both be >= 2")
        if self.r_min < 0 or self.tau_min < 0:
            raise ValidationError("r_min and tau_min must be >= 0")
        if not (self.r_max > self.r_min and self.tau_max > self.tau_min):
            raise ValidationError("sweep ranges must be non-degenerate")
        if not (0 < self.epsilon_tail < 1):
            raise ValidationError("epsilon_tail must lie in (0, 1)")
        unknown = set(self.measures) - set(MEASURES)
        if unknown:
            raise ValidationError(f"unknown measures {sorted(unknown)}")
        return self

    def r_axis(self):
        return np.linspace(self.r_min, self.r_max, self.r_steps)

    def tau_axis(self):
        return np.linspace(self.tau_min, self.tau_max, self.tau_steps)

    def digest(self):
        blob = json.dumps(asdict(self), sort_keys=True, default=str)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass
class SweepResult:
    r: np.ndarray
    tau: np.ndarray
    reports: list
    coefficients: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    def column(self, measure):
        if measure not in MEASURES:
            raise ValidationError(f"unknown measure {measure!r}")
        vals = [getattr(rep, measure) for rep in self.reports]
        return np.array(vals, dtype=float).reshape(len(self.r), len(self.tau))

    def rows(self):
        """Yield ``(r, tau, report)`` in row-major order, r outer."""
        k = 0
        for r in self.r:
            for t in self.tau:
                yield float(r), float(t), self.reports[k]
                k += 1


def _ground_row(r, taus, epsilon_tail):
    s = build_spectrum(r, epsilon_tail)
    a, b, c, d = coefficient_arrays(s, taus)
    reps, coeffs = [], []
    for i, t in enumerate(taus):
        co = AbcdCoefficients(A=a[i], B=b[i], C=c[i], D=d[i], r=float(r), tau=float(t))
        reps.append(report(assemble_density(co)))
        coeffs.append(co)
    return reps, coeffs, s.n_max


def _prepared_row(r, taus, epsilon_tail, prep):
    s = build_spectrum(r, epsilon_tail)
    reps = [report(check_density(evolve(prep, s, t))) for t in taus]
    return reps, [], s.n_max


def _map(fn, args, workers):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, *zip(*args)))
    return [fn(*a) for a in args]


def run_sweep(spec, workers=1):
    spec.validate()
    r_axis, tau_axis = spec.r_axis(), spec.tau_axis()
    if spec.preparation.is_ground:
        args = [(r, tau_axis, spec.epsilon_tail) for r in r_axis]
        rows = _map(_ground_row, args, workers)
    else:
        args = [(r, tau_axis, spec.epsilon_tail, spec.preparation) for r in r_axis]
        rows = _map(_prepared_row, args, workers)
    reports, coeffs = [], []
    for reps, cos, _ in rows:
        reports.extend(reps)
        coeffs.extend(cos)
    provenance = {
        "spec_hash": spec.digest(),
        "version": __version__,
        "kernel": BACKEND,
        "epsilon_tail": spec.epsilon_tail,
        "n_max_largest": max(row[2] for row in rows),
    }
    return SweepResult(r_axis, tau_axis, reports, coeffs, provenance)


def sweep_ground(spec, workers=1):
    """Closed-form sweep from ``|-->``; rejects non-ground preparations."""
    if not spec.preparation.is_ground:
        raise ValidationError("sweep_ground needs the ground preparation")
    return run_sweep(spec, workers=workers)


def find_peak(result, measure="e_npt"):
    """Grid argmax of ``measure``; ties go to the smallest r, then smallest tau."""
    if measure not in MEASURES:
        raise ValidationError(f"unknown measure {measure!r}")
    if not result.reports:
        raise ValidationError("empty sweep result")
    grid = result.column(measure)
    # argmax returns the first maximum in row-major order
    i, j = np.unravel_index(int(np.argmax(grid)), grid.shape)
    return float(result.r[i]), float(result.tau[j]), float(grid[i, j])


def midpoint_angles(grid_n):
    return (np.arange(grid_n) + 0.5) * (2.0 * math.pi / grid_n)


def averaged_density(r, tau, grid_n=64, epsilon_tail=DEFAULT_EPSILON_TAIL):
    """Mean of the evolved state over alpha, beta uniform on [0, 2pi] with phi = psi = 0."""
    if grid_n < 16:
        raise ValidationError(f"grid_n must be >= 16, got {grid_n}")
    s = build_spectrum(r, epsilon_tail)
    angles = midpoint_angles(grid_n)
    preps = [ProductPreparation(a, b) for a in angles for b in angles]
    rho = evolve_many(preps, s, tau).mean(axis=0)
    rho = 0.5 * (rho + rho.conj().T)
    return check_density(rho)


def averaged_convergence(r, tau, grid_n=64, epsilon_tail=DEFAULT_EPSILON_TAIL):
    """``|E_NPT(2 grid_n) - E_NPT(grid_n)|`` for the averaged state."""
    e1 = npt_negativity(averaged_density(r, tau, grid_n, epsilon_tail))[0]
    e2 = npt_negativity(averaged_density(r, tau, 2 * grid_n, epsilon_tail))[0]
    return abs(e2 - e1)


@dataclass
class PreparationScan:
    r: float
    tau: float
    alpha: np.ndarray
    beta: np.ndarray
    e_npt: np.ndarray

    def rows(self):
        for i, a in enumerate(self.alpha):
            for j, b in enumerate(self.beta):
                yield float(a), float(b), float(self.e_npt[i, j])

    def argmax(self, tie_tol=1e-12):
        """Maximum; values within ``tie_tol`` of it count as ties, smallest (alpha, beta) wins."""
        top = np.flatnonzero(self.e_npt.ravel() >= self.e_npt.max() - tie_tol)
        i, j = np.unravel_index(int(top[0]), self.e_npt.shape)
        return float(self.alpha[i]), float(self.beta[j]), float(self.e_npt[i, j])


def preparation_scan(r, tau, alpha_steps=33, beta_steps=33, epsilon_tail=DEFAULT_EPSILON_TAIL):
    """E_NPT over a closed grid of alpha, beta in [0, 2pi] with phi = psi = 0."""
    if alpha_steps < 1 or beta_steps < 1:
        raise ValidationError("alpha_steps and beta_steps must be >= 1")
    s = build_spectrum(r, epsilon_tail)
    alphas = np.linspace(0.0, 2.0 * math.pi, alpha_steps) if alpha_steps > 1 else np.zeros(1)
    betas = np.linspace(0.0, 2.0 * math.pi, beta_steps) if beta_steps > 1 else np.zeros(1)
    preps = [ProductPreparation(a, b) for a in alphas for b in betas]
    rhos = evolve_many(preps, s, tau)
    e = np.array([npt_negativity(rho)[0] for rho in rhos]).reshape(len(alphas), len(betas))
    return PreparationScan(float(r), float(tau), alphas, betas, e)


PLUS_PLUS = ProductPreparation(math.pi / 2, math.pi / 2)


def prepared_npt_map(prep, r_values, tau_values, epsilon_tail=DEFAULT_EPSILON_TAIL):
    """E_NPT of a fixed preparation on an (r, tau) grid, via the oracle."""
    out = np.empty((len(r_values), len(tau_values)))
    for i, r in enumerate(r_values):
        s = build_spectrum(r, epsilon_tail)
        for j, t in enumerate(tau_values):
            out[i, j] = npt_negativity(evolve(prep, s, t))[0]
    return out


def local_extrema(values):
    """Indices of strict interior local maxima and minima of a 1-D profile."""
    v = np.asarray(values)
    inner = np.arange(1, len(v) - 1)
    maxima = inner[(v[inner] > v[inner - 1]) & (v[inner] > v[inner + 1])]
    minima = inner[(v[inner] < v[inner - 1]) & (v[inner] < v[inner + 1])]
    return maxima, minima

"""Closed-form qubit-pair dynamics from the |-,-> preparation.

Basis order everywhere is ``|--> , |-+>, |+->, |++>``; index 0 of each qubit
is the lower state ``|->``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, IntegrityError, OutOfRangeError
from .kernels import abd_series

BASIS = ("--", "-+", "+-", "++")
MM, MP, PM, PP = range(4)

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10


@dataclass(frozen=True)
class AbcdCoefficients:
    A: float
    B: float
    C: float
    D: float
    r: float
    tau: float

    def check(self, tol=1e-12):
        A, B, C, D = self.A, self.B, self.C, self.D
        if abs(A + 2 * B + C - 1) > tol:
            raise IntegrityError(f"A + 2B + C = {A + 2 * B + C!r} != 1")
        for name, v in (("A", A), ("B", B), ("C", C), ("D", D)):
            if not (-tol <= v <= 1 + tol):
                raise IntegrityError(f"{name} = {v!r} outside [0, 1]")
        if D > math.sqrt(max(A * C, 0.0)) + tol:
            raise IntegrityError(f"D = {D!r} exceeds sqrt(A C); matrix not positive")
        return self


@dataclass(frozen=True)
class KrausFamily:
    m: int
    K1: np.ndarray
    K2: np.ndarray
    K3: np.ndarray

    @property
    def operators(self):
        return (self.K1, self.K2, self.K3)


def check_density(rho, *, herm_tol=HERMITIAN_TOL, trace_tol=TRACE_TOL, psd_tol=PSD_TOL):
    """Raise :class:`IntegrityError` unless ``rho`` is a valid 4x4 state."""
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise IntegrityError(f"expected a 4x4 matrix, got shape {rho.shape}")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > herm_tol:
        raise IntegrityError(f"matrix not Hermitian (max |rho - rho^dag| = {herm:.3e})")
    tr = np.trace(rho).real
    if abs(tr - 1) > trace_tol:
        raise IntegrityError(f"trace {tr!r} differs from 1")
    lmin = np.linalg.eigvalsh(rho)[0]
    if lmin < -psd_tol:
        raise IntegrityError(f"matrix not positive semidefinite (min eigenvalue {lmin:.3e})")
    return rho


def _check_tau(tau):
    tau = float(tau)
    if not math.isfinite(tau) or tau < 0:
        raise DomainError(f"interaction time tau must be >= 0, got {tau}")
    return tau


def coefficient_arrays(s, taus):
    """Vectorised ``(A, B, C, D)`` over an array of ``taus`` at fixed squeezing."""
    taus = np.atleast_1d(np.asarray(taus, dtype=float))
    if np.any(~np.isfinite(taus)) or np.any(taus < 0):
        raise DomainError("interaction times must be finite and >= 0")
    a, b, d = abd_series(s.eta, taus)
    return a, b, 1.0 - 2.0 * b - a, d


def coefficients(s, tau):
    tau = _check_tau(tau)
    a, b, c, d = coefficient_arrays(s, [tau])
    return AbcdCoefficients(A=a[0], B=b[0], C=c[0], D=d[0], r=s.r, tau=tau)


def assemble_density(c, validate=True):
    """Place the coefficients into the X-shaped 4x4 matrix."""
    if validate:
        c.check()
    rho = np.zeros((4, 4), dtype=complex)
    rho[MM, MM] = c.A
    rho[MP, MP] = c.B
    rho[PM, PM] = c.B
    rho[PP, PP] = c.C
    rho[MM, PP] = rho[PP, MM] = -c.D
    if validate:
        check_density(rho)
    return rho


def kraus_family(s, tau, m):
    """The three Kraus operators carrying field outcome index ``m``.

    ``K1`` covers the outcomes where both modes keep equal photon numbers,
    ``K2`` and ``K3`` the ones where one qubit absorbed a photon.
    """
    tau = _check_tau(tau)
    if m < 0 or m > s.n_max:
        raise OutOfRangeError(f"photon index {m} outside 0..{s.n_max}")
    eta_m = s.eta[m]
    eta_next = s.eta[m + 1] if m + 1 <= s.n_max else 0.0
    cm, sm = math.cos(tau * math.sqrt(m)), math.sin(tau * math.sqrt(m))
    s_next = math.sin(tau * math.sqrt(m + 1))
    K1 = np.zeros((4, 4), dtype=complex)
    K1[MM, MM] = eta_m * cm**2
    K1[PP, MM] = -eta_next * s_next**2
    K2 = np.zeros((4, 4), dtype=complex)
    K2[MP, MM] = eta_m * cm * sm
    K3 = np.zeros((4, 4), dtype=complex)
    K3[PM, MM] = eta_m * cm * sm
    return KrausFamily(m=m, K1=K1, K2=K2, K3=K3)


def ground_state():
    rho = np.zeros((4, 4), dtype=complex)
    rho[MM, MM] = 1.0
    return rho


def evolve_from_ground(s, tau):
    """Operator-sum evolution of ``|--><--|`` through every Kraus family."""
    tau = _check_tau(tau)
    rho0 = ground_state()
    rho = np.zeros((4, 4), dtype=complex)
    for m in range(s.n_max + 1):
        for K in kraus_family(s, tau, m).operators:
            rho += K @ rho0 @ K.conj().T
    return rho

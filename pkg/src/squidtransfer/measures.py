"""Entanglement and mixedness of two-qubit states."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .dynamics import check_density
from .errors import DomainError

_SIGMA_YY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


@dataclass(frozen=True)
class EntanglementReport:
    e_npt: float
    lambda_min: float
    concurrence: float
    eof: float
    s_linear: float
    purity: float
    teleport_useful: bool

    def as_dict(self):
        return asdict(self)

    def check(self, tol=1e-12):
        assert self.e_npt == -2.0 * self.lambda_min
        assert -tol <= self.concurrence <= 1 + tol
        assert -tol <= self.eof <= 1 + tol
        assert (self.eof == 0) == (self.concurrence == 0)
        assert abs(self.s_linear - 4.0 / 3.0 * (1 - self.purity)) <= tol
        assert -tol <= self.s_linear <= 1 + tol
        return self


def partial_transpose(rho, qubit=1):
    """Transpose the indices of ``qubit`` (0 or 1) of a 4x4 matrix."""
    t = np.asarray(rho).reshape(2, 2, 2, 2)
    if qubit == 1:
        t = t.transpose(0, 3, 2, 1)
    elif qubit == 0:
        t = t.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"qubit must be 0 or 1, got {qubit}")
    return t.reshape(4, 4)


def npt_negativity(rho, validate=True):
    """Signed negativity ``-2 * lambda_min`` of the partial transpose.

    Positive values certify entanglement; a negative value is the distance
    of the smallest partial-transpose eigenvalue above zero, doubled.

    Returns
    -------
    e_npt, lambda_min : float
    """
    if validate:
        check_density(rho)
    lam = float(np.linalg.eigvalsh(partial_transpose(rho))[0])
    return -2.0 * lam, lam


def npt_negativity_clamped(rho):
    return max(0.0, npt_negativity(rho)[0])


def lambda_from_abcd(c):
    return c.B - c.D


def concurrence(rho, validate=True):
    """Wootters concurrence ``max(0, l1 - l2 - l3 - l4)``.

    The ``l_i`` are the square roots of the eigenvalues of
    ``rho (Y x Y) rho* (Y x Y)``.  Writing ``rho = X X^dag`` they equal the
    singular values of ``X^T (Y x Y) X``, which keeps rank-deficient
    states accurate to rounding instead of its square root.
    """
    if validate:
        check_density(rho)
    w, v = np.linalg.eigh(np.asarray(rho, dtype=complex))
    x = v * np.sqrt(np.clip(w, 0.0, None))
    lam = np.linalg.svd(x.T @ _SIGMA_YY @ x, compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def _binary_entropy(p):
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def eof(c):
    """Entanglement of formation in ebits for concurrence ``c``."""
    if not (0.0 <= c <= 1.0):
        raise DomainError(f"concurrence must lie in [0, 1], got {c}")
    if c == 0.0:
        return 0.0
    return _binary_entropy((1 + math.sqrt(1 - c * c)) / 2)


def purity(rho):
    rho = np.asarray(rho)
    return float(np.real(np.trace(rho @ rho)))


def linearized_entropy(rho, validate=True):
    if validate:
        check_density(rho)
    return 4.0 / 3.0 * (1.0 - purity(rho))


def linearized_entropy_spectral(rho):
    """Same quantity from the eigenvalues; used as a cross-check."""
    w = np.linalg.eigvalsh(rho)
    return 4.0 / 3.0 * (1.0 - float(np.sum(w * w)))


def teleport_threshold(subsystem_dim):
    k = subsystem_dim * (subsystem_dim + 1)
    # one rounding step, so the qubit threshold is exactly the float 2/3
    return (k - 2) / k


def teleport_useful(s_linear, subsystem_dim=2):
    if subsystem_dim < 2:
        raise DomainError(f"subsystem dimension must be >= 2, got {subsystem_dim}")
    return s_linear < teleport_threshold(subsystem_dim)


def purified(c):
    """The X-state with its single-excitation populations ``B`` removed and renormalised."""
    norm = c.A + c.C
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = c.A / norm
    rho[3, 3] = c.C / norm
    rho[0, 3] = rho[3, 0] = -c.D / norm
    return rho


def report(rho, validate=True):
    if validate:
        check_density(rho)
    e, lam = npt_negativity(rho, validate=False)
    conc = min(1.0, concurrence(rho, validate=False))
    p = purity(rho)
    s_l = 4.0 / 3.0 * (1.0 - p)
    return EntanglementReport(
        e_npt=e,
        lambda_min=lam,
        concurrence=conc,
        eof=eof(conc),
        s_linear=s_l,
        purity=p,
        teleport_useful=teleport_useful(s_l, 2),
    )

"""Brute-force evolution in the truncated (qubit x mode) x (qubit x mode) space.

This path shares no dynamics formulas with :mod:`squidtransfer.dynamics`:
each qubit-mode pair is propagated with the matrix exponential of its
interaction matrix, obtained from a symmetric eigendecomposition.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from .errors import DomainError, TruncationError

CUTOFF_SAFETY = 1e-6
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ProductPreparation:
    """``(cos a |-> + e^{i phi} sin a |+>) x (cos b |-> + e^{i psi} sin b |+>)``."""

    alpha: float = 0.0
    beta: float = 0.0
    phi: float = 0.0
    psi: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not (math.isfinite(v) and 0.0 <= v <= TWO_PI):
                raise DomainError(f"{name} must lie in [0, 2pi], got {v}")
        for name in ("phi", "psi"):
            v = getattr(self, name)
            if not (math.isfinite(v) and 0.0 <= v <= math.pi):
                raise DomainError(f"{name} must lie in [0, pi], got {v}")

    def qubit_states(self):
        q1 = np.array([math.cos(self.alpha), np.exp(1j * self.phi) * math.sin(self.alpha)])
        q2 = np.array([math.cos(self.beta), np.exp(1j * self.psi) * math.sin(self.beta)])
        return q1, q2

    def vector(self):
        """Amplitudes in the ``|-->, |-+>, |+->, |++>`` basis."""
        return np.kron(*self.qubit_states())

    def density(self):
        v = self.vector()
        return np.outer(v, v.conj())

    @property
    def is_ground(self):
        return self.alpha == 0.0 and self.beta == 0.0


GROUND = ProductPreparation()


@dataclass(frozen=True)
class FullStateVector:
    """Amplitudes indexed ``[q1, n_a, q2, n_b]``; ``q = 0`` is ``|->``."""

    amplitudes: np.ndarray
    n_cut: int

    def norm(self):
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def cutoff_amplitude(self):
        psi = self.amplitudes
        return float(max(np.abs(psi[:, -1, :, :]).max(), np.abs(psi[:, :, :, -1]).max()))


def build_pair_hamiltonian(n_cut):
    """Matrix of ``a sigma_+ + a^dag sigma_-`` on one qubit x mode factor.

    Index ``q * (n_cut + 1) + n`` labels ``|q, n>``, in units of hbar * Omega.
    """
    if n_cut < 1:
        raise DomainError(f"photon cutoff must be >= 1, got {n_cut}")
    d = n_cut + 1
    h = np.zeros((2 * d, 2 * d))
    for n in range(1, d):
        # <+, n-1| H |-, n> = sqrt(n)
        h[d + n - 1, n] = math.sqrt(n)
        h[n, d + n - 1] = math.sqrt(n)
    return h


@lru_cache(maxsize=32)
def _pair_eigensystem(n_cut):
    """Eigendecomposition of each decoupled block of the pair matrix.

    Blocks are the connected components of the matrix's sparsity graph
    (the excitation-number sectors); each is diagonalised numerically.
    """
    h = build_pair_hamiltonian(n_cut)
    n_comp, labels = connected_components(sparse.csr_matrix(h), directed=False)
    blocks = []
    for c in range(n_comp):
        idx = np.flatnonzero(labels == c)
        w, v = np.linalg.eigh(h[np.ix_(idx, idx)])
        blocks.append((idx, w, v))
    return blocks


def pair_propagator(n_cut, tau):
    """Sparse ``exp(-i H tau)`` for one qubit x mode factor."""
    rows, cols, vals = [], [], []
    for idx, w, v in _pair_eigensystem(n_cut):
        u = (v * np.exp(-1j * w * tau)) @ v.T
        rows.append(np.repeat(idx, idx.size))
        cols.append(np.tile(idx, idx.size))
        vals.append(u.ravel())
    dim = 2 * (n_cut + 1)
    return sparse.csr_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(dim, dim)
    )


def default_cutoff(n_max):
    # one level for photons emitted by a |+> qubit, one spare that must stay empty
    return n_max + 2


def initial_state(prep, eta, n_cut):
    d = n_cut + 1
    eta = np.asarray(eta, dtype=float)
    if eta.shape[0] > d:
        raise DomainError(f"spectrum with {eta.shape[0]} levels exceeds cutoff {n_cut}")
    q1, q2 = prep.qubit_states()
    psi = np.zeros((2, d, 2, d), dtype=complex)
    n = np.arange(eta.shape[0])
    psi[:, n, :, n] = eta[:, None, None] * np.outer(q1, q2)[None, :, :]
    return FullStateVector(psi, n_cut)


def propagate(state, tau, order="ab"):
    """Apply both pair propagators; ``order`` picks which acts first."""
    d = state.n_cut + 1
    u = pair_propagator(state.n_cut, tau)
    m = state.amplitudes.reshape(2 * d, 2 * d)
    if order == "ab":
        m = (u @ m) @ u.T
    elif order == "ba":
        m = u @ (u @ m.T).T
    else:
        raise ValueError(f"unknown order {order!r}")
    return FullStateVector(m.reshape(2, d, 2, d), state.n_cut)


def evolve_state(prep, eta, tau, n_cut=None, order="ab"):
    tau = float(tau)
    if not math.isfinite(tau) or tau < 0:
        raise DomainError(f"interaction time tau must be >= 0, got {tau}")
    eta = np.asarray(eta, dtype=float)
    if n_cut is None:
        n_cut = default_cutoff(eta.shape[0] - 1)
    state = propagate(initial_state(prep, eta, n_cut), tau, order=order)
    leak = state.cutoff_amplitude()
    if leak >= CUTOFF_SAFETY:
        raise TruncationError(leak, n_cut)
    return state


def _qubit_rows(amplitudes):
    # [q1, n_a, q2, n_b] -> rows (q1 q2), columns (n_a n_b)
    d = amplitudes.shape[-1]
    return amplitudes.transpose(0, 2, 1, 3).reshape(4, d * d)


def reduced_qubits(state):
    x = _qubit_rows(state.amplitudes)
    return x @ x.conj().T


def reduced_fields(state):
    psi = state.amplitudes
    d = state.n_cut + 1
    rho = np.einsum("anbm,akbl->nmkl", psi, psi.conj())
    return rho.reshape(d * d, d * d)


def excitation_number(state):
    d = state.n_cut + 1
    q = np.arange(2)[:, None, None, None]
    na = np.arange(d)[None, :, None, None]
    qb = np.arange(2)[None, None, :, None]
    nb = np.arange(d)[None, None, None, :]
    p = np.abs(state.amplitudes) ** 2
    return float(np.sum(p * (q + na + qb + nb)))


def evolve(prep, s, tau, n_cut=None):
    """Reduced two-qubit state after evolving ``prep`` with the squeezed field."""
    return reduced_qubits(evolve_state(prep, s.eta, tau, n_cut=n_cut))


def _basis_state(i, j, eta, n_cut):
    d = n_cut + 1
    psi = np.zeros((2, d, 2, d), dtype=complex)
    n = np.arange(len(eta))
    psi[i, n, j, n] = eta
    return FullStateVector(psi, n_cut)


def evolve_many(preps, s, tau, n_cut=None):
    """Reduced states for many preparations at one ``(r, tau)``.

    The four qubit basis inputs are propagated once; every preparation is a
    linear combination of them, so its reduced state follows from the
    4 x 4 table of cross partial traces.
    """
    tau = float(tau)
    if not math.isfinite(tau) or tau < 0:
        raise DomainError(f"interaction time tau must be >= 0, got {tau}")
    if n_cut is None:
        n_cut = default_cutoff(s.n_max)
    psi = []
    for k in range(4):
        st = propagate(_basis_state(*divmod(k, 2), s.eta, n_cut), tau)
        leak = st.cutoff_amplitude()
        if leak >= CUTOFF_SAFETY:
            raise TruncationError(leak, n_cut)
        psi.append(st.amplitudes)
    x = np.concatenate([_qubit_rows(p) for p in psi])
    # gram[k, l] = Tr_fields |Psi_k><Psi_l|, a 4x4 block of x x^dag
    gram = (x @ x.conj().T).reshape(4, 4, 4, 4).transpose(0, 2, 1, 3)
    w = np.array([p.vector() for p in preps]).reshape(-1, 4)
    return np.einsum("pk,pl,klij->pij", w, w.conj(), gram)


def max_abs_diff(rho1, rho2):
    return float(np.max(np.abs(np.asarray(rho1) - np.asarray(rho2))))

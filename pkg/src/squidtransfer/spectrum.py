"""Truncated photon-number amplitudes of the two-mode squeezed vacuum.

The state is ``sum_n eta_n |n, n>`` with ``eta_n = tanh(r)**n / cosh(r)``.
The ladder is cut at the first index whose geometric tail weight
``tanh(r)**(2 (n_max + 1))`` drops below ``epsilon_tail``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, OutOfRangeError

DEFAULT_EPSILON_TAIL = 1e-12
MAX_N_MAX = 4096


@dataclass(frozen=True)
class SqueezedSpectrum:
    r: float
    n_max: int
    eta: np.ndarray = field(repr=False)
    epsilon_tail: float = DEFAULT_EPSILON_TAIL

    def __post_init__(self):
        self.eta.setflags(write=False)

    @property
    def weights(self):
        """Photon-number probabilities ``eta_n**2``."""
        return self.eta**2


def _cutoff(r, epsilon_tail):
    t = math.tanh(r)
    if t == 0.0:
        return 0
    # smallest n with t**(2(n+1)) < eps; start from the log estimate and fix up
    n = max(0, int(math.floor(math.log(epsilon_tail) / (2.0 * math.log(t)))) - 2)
    while t ** (2 * (n + 1)) >= epsilon_tail:
        n += 1
        if n > MAX_N_MAX:
            raise DomainError(
                f"r={r} needs more than {MAX_N_MAX} photon levels at "
                f"epsilon_tail={epsilon_tail}"
            )
    while n > 0 and t ** (2 * n) < epsilon_tail:
        n -= 1
    return n


def build_spectrum(r, epsilon_tail=DEFAULT_EPSILON_TAIL):
    """Build the truncated amplitude ladder for squeezing ``r``.

    Parameters
    ----------
    r : float
        Squeezing parameter, ``r >= 0``.
    epsilon_tail : float
        Bound on the discarded photon-number probability, in ``(0, 1)``.

    Returns
    -------
    SqueezedSpectrum
    """
    r = float(r)
    epsilon_tail = float(epsilon_tail)
    if not math.isfinite(r) or r < 0:
        raise DomainError(f"squeezing parameter must be >= 0, got {r}")
    if not (0.0 < epsilon_tail < 1.0):
        raise DomainError(f"epsilon_tail must lie in (0, 1), got {epsilon_tail}")
    n_max = _cutoff(r, epsilon_tail)
    t = math.tanh(r)
    n = np.arange(n_max + 1)
    eta = t**n / math.cosh(r)
    return SqueezedSpectrum(r=r, n_max=n_max, eta=eta, epsilon_tail=epsilon_tail)


def chi(s, n, m):
    """Return ``eta_n * eta_m``."""
    for k in (n, m):
        if k < 0 or k > s.n_max:
            raise OutOfRangeError(f"photon index {k} outside 0..{s.n_max}")
    return float(s.eta[n] * s.eta[m])


def truncation_error(s):
    """Exact probability weight above the cutoff, ``tanh(r)**(2 (n_max + 1))``."""
    return math.tanh(s.r) ** (2 * (s.n_max + 1))

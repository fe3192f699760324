"""Pure numpy fallback for the compiled series kernel."""
import numpy as np


def abd_series(eta, taus):
    eta = np.ascontiguousarray(eta, dtype=float)
    taus = np.ascontiguousarray(taus, dtype=float)
    n_terms = eta.shape[0]
    root = np.sqrt(np.arange(n_terms + 1, dtype=float))
    a = np.zeros_like(taus)
    b = np.zeros_like(taus)
    d = np.zeros_like(taus)
    # ascending n, vectorised over tau only, so the summation order matches the C loop
    s = np.sin(taus * root[0])
    for n in range(n_terms):
        c = np.cos(taus * root[n])
        c2 = c * c
        w = eta[n] * eta[n]
        a += w * c2 * c2
        b += w * s * s * c2
        s_next = np.sin(taus * root[n + 1])
        if n + 1 < n_terms:
            d += eta[n] * eta[n + 1] * s_next * s_next * c2
        s = s_next
    return a, b, d

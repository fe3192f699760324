# cython: language_level=3
"""Compiled A/B/D series for the ground-preparation dynamics."""
import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin, sqrt

cnp.import_array()


def abd_series(const double[::1] eta, const double[::1] taus):
    cdef Py_ssize_t n_terms = eta.shape[0]
    cdef Py_ssize_t n_tau = taus.shape[0]
    cdef Py_ssize_t i, n
    cdef double tau, c, s, c2, s_next, w, a, b, d
    roots = np.sqrt(np.arange(n_terms + 1, dtype=np.float64))
    cdef double[::1] root = roots
    out_a = np.empty(n_tau)
    out_b = np.empty(n_tau)
    out_d = np.empty(n_tau)
    cdef double[::1] va = out_a
    cdef double[::1] vb = out_b
    cdef double[::1] vd = out_d
    for i in range(n_tau):
        tau = taus[i]
        a = 0.0
        b = 0.0
        d = 0.0
        s = sin(tau * root[0])
        for n in range(n_terms):
            c = cos(tau * root[n])
            c2 = c * c
            w = eta[n] * eta[n]
            a += w * c2 * c2
            b += w * s * s * c2
            s_next = sin(tau * root[n + 1])
            if n + 1 < n_terms:
                d += eta[n] * eta[n + 1] * s_next * s_next * c2
            s = s_next
        va[i] = a
        vb[i] = b
        vd[i] = d
    return out_a, out_b, out_d

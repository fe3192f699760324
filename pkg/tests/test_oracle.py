import math

import numpy as np
import pytest

from squidtransfer.errors import DomainError, TruncationError
from squidtransfer.oracle import (
    GROUND,
    ProductPreparation,
    build_pair_hamiltonian,
    evolve,
    evolve_many,
    evolve_state,
    excitation_number,
    initial_state,
    max_abs_diff,
    pair_propagator,
    reduced_fields,
    reduced_qubits,
)


def idx(q, n, n_cut):
    return q * (n_cut + 1) + n


def test_pair_matrix_elements():
    h = build_pair_hamiltonian(1)
    assert h[idx(1, 0, 1), idx(0, 1, 1)] == 1.0
    h = build_pair_hamiltonian(4)
    assert h[idx(1, 3, 4), idx(0, 4, 4)] == 2.0
    assert not h[idx(0, 0, 4)].any()
    assert np.array_equal(h, h.T)


def test_pair_matrix_conserves_excitations():
    n_cut = 6
    h = build_pair_hamiltonian(n_cut)
    exc = np.array([q + n for q in range(2) for n in range(n_cut + 1)])
    rows, cols = np.nonzero(h)
    assert np.array_equal(exc[rows], exc[cols])


def test_pair_matrix_cutoff_domain():
    with pytest.raises(DomainError):
        build_pair_hamiltonian(0)


def test_propagator_is_unitary():
    u = pair_propagator(12, 2.7).toarray()
    assert np.allclose(u @ u.conj().T, np.eye(u.shape[0]), atol=1e-13)


def test_propagator_matches_dense_expm():
    from scipy.linalg import expm

    h = build_pair_hamiltonian(9)
    assert np.allclose(pair_propagator(9, 1.3).toarray(), expm(-1j * 1.3 * h), atol=1e-13)


@pytest.mark.parametrize("prep", [GROUND, ProductPreparation(0.4, 2.0, 0.3, 1.0), ProductPreparation(math.pi / 2, math.pi / 2)])
def test_identity_at_zero_time(peak_spectrum, prep):
    rho = evolve(prep, peak_spectrum, 0.0)
    assert max_abs_diff(rho, prep.density()) <= 1e-12


def test_full_rabi_flop_on_single_photons():
    # field |1, 1>: both qubits absorb one photon after tau = pi / 2
    rho = reduced_qubits(evolve_state(GROUND, [0.0, 1.0], math.pi / 2))
    expected = np.zeros((4, 4))
    expected[3, 3] = 1
    assert max_abs_diff(rho, expected) <= 1e-10


def test_ground_preparation_matches_closed_form(peak_spectrum):
    from squidtransfer.dynamics import assemble_density, coefficients

    closed = assemble_density(coefficients(peak_spectrum, 1.5 * math.pi))
    assert max_abs_diff(closed, evolve(GROUND, peak_spectrum, 1.5 * math.pi)) <= 1e-8


@pytest.mark.parametrize("prep", [GROUND, ProductPreparation(0.7, 5.1, 0.2, 2.9), ProductPreparation(math.pi / 2, math.pi / 2)])
@pytest.mark.parametrize("tau", [0.5, 3.3, 8.0])
def test_conservation_laws(peak_spectrum, prep, tau):
    st0 = initial_state(prep, peak_spectrum.eta, peak_spectrum.n_max + 2)
    st = evolve_state(prep, peak_spectrum.eta, tau)
    assert abs(st.norm() - st0.norm()) <= 1e-12
    assert abs(st.norm() - 1) <= 1e-12
    assert abs(excitation_number(st) - excitation_number(st0)) <= 1e-10
    assert abs(np.trace(reduced_fields(st)).real - 1) <= 1e-12
    other = evolve_state(prep, peak_spectrum.eta, tau, order="ba")
    assert max_abs_diff(reduced_qubits(st), reduced_qubits(other)) <= 1e-12


def test_cutoff_violation_detected():
    # a populated top level with a |+> qubit leaks onto the cutoff
    with pytest.raises(TruncationError) as info:
        evolve_state(ProductPreparation(math.pi / 2, math.pi / 2), [0.6, 0.8], 1.0, n_cut=1)
    assert info.value.magnitude > 1e-6


def test_evolve_many_matches_single(peak_spectrum):
    preps = [ProductPreparation(a, b, p, q) for a, b, p, q in [(0, 0, 0, 0), (0.3, 1.2, 0.5, 2.0), (3.0, 6.0, 3.1, 0.0)]]
    many = evolve_many(preps, peak_spectrum, 2.4)
    for prep, rho in zip(preps, many):
        assert max_abs_diff(rho, evolve(prep, peak_spectrum, 2.4)) <= 1e-12


def test_preparation_ranges():
    with pytest.raises(DomainError):
        ProductPreparation(alpha=7.0)
    with pytest.raises(DomainError):
        ProductPreparation(phi=4.0)
    v = ProductPreparation(0.3, 1.1, 0.4, 2.2).vector()
    assert np.vdot(v, v).real == pytest.approx(1.0, abs=1e-15)


def test_max_abs_diff():
    a = np.zeros((4, 4))
    a[0, 0] = 1
    b = np.zeros((4, 4))
    b[3, 3] = 1
    assert max_abs_diff(a, a) == 0.0
    assert max_abs_diff(a, b) == 1.0

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from squidtransfer.dynamics import (
    AbcdCoefficients,
    assemble_density,
    check_density,
    coefficient_arrays,
    coefficients,
    evolve_from_ground,
    ground_state,
    kraus_family,
)
from squidtransfer.errors import DomainError, IntegrityError, OutOfRangeError
from squidtransfer.oracle import GROUND, evolve, max_abs_diff
from squidtransfer.spectrum import build_spectrum

PEAK_TAU = 1.5 * math.pi
# 30-digit mpmath sums (200 terms) at r = 0.86, tau = 3pi/2
A_PEAK = 0.6390087916422263966
B_PEAK = 0.0233738406733549692
C_PEAK = 0.3142435270110636650
D_PEAK = 0.4437264943702494840


def test_no_evolution():
    for r in (0.0, 0.86, 2.0):
        c = coefficients(build_spectrum(r), 0.0)
        assert (c.A, c.B, c.C, c.D) == pytest.approx((1, 0, 0, 0), abs=1e-12)


@pytest.mark.parametrize("tau", [0.1, 1.0, 4.2, 9.0])
def test_vacuum_is_stationary(tau):
    c = coefficients(build_spectrum(0.0), tau)
    assert (c.A, c.B, c.C, c.D) == (1.0, 0.0, 0.0, 0.0)
    assert max_abs_diff(evolve_from_ground(build_spectrum(0.0), tau), ground_state()) == 0.0


def test_peak_coefficients(peak_spectrum):
    c = coefficients(peak_spectrum, PEAK_TAU)
    assert (c.A, c.B, c.C, c.D) == pytest.approx((A_PEAK, B_PEAK, C_PEAK, D_PEAK), abs=1e-12)
    assert c.D == pytest.approx(0.446, abs=0.01)


def test_peak_of_coherence_gap(peak_spectrum):
    # the local maximum near 3pi/2 carries the quoted E_NPT ~ 0.87
    taus = np.linspace(PEAK_TAU - 0.3, PEAK_TAU + 0.3, 601)
    a, b, c, d = coefficient_arrays(peak_spectrum, taus)
    assert np.max(d - b) == pytest.approx(0.435, abs=0.01)


def test_negative_tau():
    with pytest.raises(DomainError):
        coefficients(build_spectrum(0.5), -0.1)


def test_assemble_layout():
    rho = assemble_density(AbcdCoefficients(0.4, 0.1, 0.4, 0.3, r=0.0, tau=0.0))
    expected = np.array([[0.4, 0, 0, -0.3], [0, 0.1, 0, 0], [0, 0, 0.1, 0], [-0.3, 0, 0, 0.4]])
    assert np.array_equal(rho, expected)


def test_assemble_pure_and_mixed():
    assert np.array_equal(assemble_density(AbcdCoefficients(1, 0, 0, 0, 0, 0)), ground_state())
    rho = assemble_density(AbcdCoefficients(0.25, 0.25, 0.25, 0, 0, 0))
    assert np.allclose(rho, np.eye(4) / 4)


@pytest.mark.parametrize(
    "abcd",
    [(0.5, 0.1, 0.5, 0.0), (0.5, 0.0, 0.5, 0.6), (1.2, -0.1, 0.0, 0.0)],
)
def test_assemble_rejects_invalid(abcd):
    with pytest.raises(IntegrityError):
        assemble_density(AbcdCoefficients(*abcd, r=0, tau=0))


def test_kraus_vacuum():
    fam = kraus_family(build_spectrum(0.0), 2.3, 0)
    expected = np.zeros((4, 4))
    expected[0, 0] = 1
    assert np.array_equal(fam.K1, expected)
    assert not fam.K2.any() and not fam.K3.any()


def test_kraus_peak_entry(peak_spectrum):
    fam = kraus_family(peak_spectrum, PEAK_TAU, 0)
    assert fam.K1[3, 0] == pytest.approx(-peak_spectrum.eta[1], abs=1e-15)


def test_kraus_out_of_range(peak_spectrum):
    with pytest.raises(OutOfRangeError):
        kraus_family(peak_spectrum, 1.0, peak_spectrum.n_max + 1)


@pytest.mark.parametrize("r, tau", [(0.3, 1.0), (0.86, PEAK_TAU), (1.9, 7.7)])
def test_kraus_completeness(r, tau):
    s = build_spectrum(r)
    total = 0.0
    for m in range(s.n_max + 1):
        for K in kraus_family(s, tau, m).operators:
            total += (K.conj().T @ K)[0, 0].real
    assert abs(total - 1) <= s.epsilon_tail


def test_kraus_only_acts_on_ground_column(peak_spectrum):
    for m in range(peak_spectrum.n_max + 1):
        for K in kraus_family(peak_spectrum, 2.0, m).operators:
            assert not K[:, 1:].any()


def test_peak_state_matches_oracle(peak_spectrum):
    closed = assemble_density(coefficients(peak_spectrum, PEAK_TAU))
    assert max_abs_diff(closed, evolve(GROUND, peak_spectrum, PEAK_TAU)) <= 1e-8
    assert max_abs_diff(closed, evolve_from_ground(peak_spectrum, PEAK_TAU)) <= 1e-12


def test_kraus_and_series_paths_on_grid():
    worst = 0.0
    for r in np.linspace(0, 2, 20):
        s = build_spectrum(r)
        for tau in np.linspace(0, 3 * math.pi, 20):
            series = assemble_density(coefficients(s, tau))
            kraus = evolve_from_ground(s, tau)
            check_density(kraus)
            worst = max(worst, max_abs_diff(series, kraus))
    assert worst <= 1e-12


@settings(max_examples=80, deadline=None)
@given(r=st.floats(0.0, 2.0), tau=st.floats(0.0, 3 * math.pi))
def test_coefficient_invariants(r, tau):
    c = coefficients(build_spectrum(r), tau)
    c.check()
    assert c.B >= 0
    check_density(assemble_density(c))

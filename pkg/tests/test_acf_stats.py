import itertools

import numpy as np
import pytest

from isacpulse.acf_stats import (
    alpha_coefficients,
    self_cross_variances,
    theoretical_islr,
    theoretical_stats,
)
from isacpulse.constellation import make_psk, make_qam
from isacpulse.spectrum import rrc_spectrum, spectrum_to_acf

from helpers import small_grid


def test_alpha_paper_scale_value():
    a = alpha_coefficients(256, 1.32)
    assert abs(a.alpha0 - 65617.92) < 1e-9
    assert abs(a.alpha0 - (256**2 + 256 * 0.32)) < 1e-9


def test_alpha_single_symbol():
    a = alpha_coefficients(1, 1.7)
    assert a.tilde.shape == (1,)
    assert abs(a.alpha0 - 1.7) < 1e-15


def test_alpha_direct_substitution_table():
    a = alpha_coefficients(3, 2.0).alpha()
    assert np.allclose(a, [1.0, 2.0, 12.0, 2.0, 1.0], atol=1e-15)


def test_alpha_symmetry_positivity_and_edge():
    a = alpha_coefficients(16, 1.32)
    arr = a.alpha()
    assert np.allclose(arr, arr[::-1])
    assert np.min(arr) > 0
    assert arr[0] == 1.0 and arr[-1] == 1.0


def test_alpha_rejects_bad_arguments():
    with pytest.raises(ValueError):
        alpha_coefficients(0, 1.32)
    with pytest.raises(ValueError):
        alpha_coefficients(4, 0.5)


def _enumerate_frame_moments(psi, nt, constellation, length):
    """Exact moments of the frame ACF by enumeration over all symbol tuples.

    The frame ACF on the circular grid is chi[u] = sum_d rho_d psi[(u+d*nt) % lg]
    with rho_d the symbol correlation at index difference d; the self part is
    the d=0 term, the cross part collects d != 0.
    """
    lg = psi.size
    pts = constellation.points
    tuples = np.array(list(itertools.product(pts, repeat=length)))
    shifts = {d: np.roll(psi, -d * nt) for d in range(-(length - 1), length)}

    chi_s = (np.abs(tuples) ** 2).sum(axis=1)[:, None] * psi[None, :]
    chi_c = np.zeros((tuples.shape[0], lg), dtype=complex)
    for d in range(-(length - 1), length):
        if d == 0:
            continue
        lo, hi = max(0, -d), length - max(0, d)
        rho = (tuples[:, lo:hi] * np.conj(tuples[:, lo + d : hi + d])).sum(axis=1)
        chi_c += rho[:, None] * shifts[d][None, :]

    e_s, e_c = chi_s.mean(0), chi_c.mean(0)
    return {
        "mean_self": e_s,
        "mean_cross": e_c,
        "var_self": (np.abs(chi_s) ** 2).mean(0) - np.abs(e_s) ** 2,
        "var_cross": (np.abs(chi_c) ** 2).mean(0) - np.abs(e_c) ** 2,
        "cross_corr": (chi_s * np.conj(chi_c)).mean(0) - e_s * np.conj(e_c),
        "sacf": (np.abs(chi_s + chi_c) ** 2).mean(0),
    }


@pytest.mark.parametrize(
    "length,constellation",
    [(2, make_qam(4)), (2, make_qam(16)), (3, make_qam(4)), (3, make_qam(16))],
)
def test_enumeration_oracle_reproduces_closed_forms(length, constellation):
    g = small_grid()
    acf = spectrum_to_acf(rrc_spectrum(g)).normalized()
    alpha = alpha_coefficients(length, constellation.mu4)
    stats = theoretical_stats(acf, alpha)
    var_self, var_cross = self_cross_variances(acf, alpha)
    mom = _enumerate_frame_moments(acf.psi, g.nt, constellation, length)

    scale = float(np.max(mom["sacf"]))
    assert np.max(np.abs(mom["mean_self"] - length * acf.psi)) < 1e-10 * length
    assert np.max(np.abs(mom["mean_cross"])) < 1e-10
    assert np.max(np.abs(mom["var_self"] - var_self)) < 1e-10 * scale
    assert np.max(np.abs(mom["var_cross"] - var_cross)) < 1e-10 * scale
    assert np.max(np.abs(mom["cross_corr"])) < 1e-10 * scale
    assert np.max(np.abs(mom["sacf"] - stats.expected_sacf)) < 1e-10 * scale


def test_enumeration_oracle_with_circular_wraparound():
    # frame longer than the circle would allow without wrapping: for a proper
    # constellation (zero pseudo-variance) the closed forms still hold exactly
    # even when distinct symbol shifts alias onto the same circular lag
    g = small_grid()
    acf = spectrum_to_acf(rrc_spectrum(g)).normalized()
    c = make_qam(4)
    length = 9  # 9 * nt = 36 > lg = 32
    alpha = alpha_coefficients(length, c.mu4)
    stats = theoretical_stats(acf, alpha)
    mom = _enumerate_frame_moments(acf.psi, g.nt, c, length)
    scale = float(np.max(mom["sacf"]))
    assert np.max(np.abs(mom["sacf"] - stats.expected_sacf)) < 1e-10 * scale


def test_constant_modulus_variance_vanishes_at_zero_lag():
    # mu4 = 1 kills the self-variance; Nyquist zeros kill the cross part at lag 0
    g = small_grid()
    acf = spectrum_to_acf(rrc_spectrum(g)).normalized()
    alpha = alpha_coefficients(8, 1.0)
    stats = theoretical_stats(acf, alpha)
    assert abs(stats.var_profile[0]) < 1e-12 * alpha.alpha0


def test_expected_sacf_at_zero_lag_is_alpha0():
    g = small_grid()
    acf = spectrum_to_acf(rrc_spectrum(g)).normalized()
    alpha = alpha_coefficients(8, 1.32)
    stats = theoretical_stats(acf, alpha)
    assert abs(stats.expected_sacf[0] - alpha.alpha0) < 1e-9 * alpha.alpha0


def test_mean_acf_is_normalized_pulse_acf():
    g = small_grid()
    acf = spectrum_to_acf(rrc_spectrum(g)).normalized()
    stats = theoretical_stats(acf, alpha_coefficients(4, 1.32))
    assert np.array_equal(stats.mean_acf, acf.psi)


def test_stats_require_normalized_acf():
    g = small_grid()
    acf = spectrum_to_acf(rrc_spectrum(g))  # psi[0] = nt * slots / lg = 1 here
    scaled = spectrum_to_acf(rrc_spectrum(g)).normalized()
    bad = type(scaled)(psi=scaled.psi * 2.0, grid=g)
    with pytest.raises(ValueError, match="normalized"):
        theoretical_stats(bad, alpha_coefficients(4, 1.32))
    theoretical_stats(acf, alpha_coefficients(4, 1.32))  # feasible spectra pass as-is


def test_islr_mainlobe_region_is_unity():
    g = small_grid()
    acf = spectrum_to_acf(rrc_spectrum(g)).normalized()
    alpha = alpha_coefficients(8, 1.32)
    val = theoretical_islr(acf, alpha, np.array([0]))
    assert abs(val - 1.0) < 1e-9


def test_islr_region_validation():
    g = small_grid()
    acf = spectrum_to_acf(rrc_spectrum(g)).normalized()
    alpha = alpha_coefficients(4, 1.32)
    with pytest.raises(ValueError, match="nonempty"):
        theoretical_islr(acf, alpha, np.array([], dtype=int))
    with pytest.raises(ValueError, match="region"):
        theoretical_islr(acf, alpha, np.array([g.lg]))

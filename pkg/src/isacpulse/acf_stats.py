"""Closed-form statistics of the random-frame ACF.

For a frame of L i.i.d. unit-energy symbols shaped by a pulse with
normalized ACF psi, the frame ACF splits into a self part (symbol energies
riding on psi) and a cross part (inter-symbol products riding on
symbol-spaced shifts of psi).  The two parts are uncorrelated, giving

    mean  = L * psi
    var   = sum_{|n|<L} tilde_alpha_n * psi(. + n*nt)^2
    E|.|^2 = var + (L * psi)^2 = sum_{|n|<L} alpha_n * psi(. + n*nt)^2

with tilde_alpha_0 = L*(mu4-1), tilde_alpha_n = L-|n| otherwise, and
alpha_n = tilde_alpha_n + L^2*delta[n].  Shifts are circular on the grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import GridSpec
from .spectrum import DiscreteAcf

__all__ = [
    "AlphaCoefficients",
    "AcfStatistics",
    "alpha_coefficients",
    "theoretical_stats",
    "self_cross_variances",
    "theoretical_islr",
]


@dataclass(frozen=True)
class AlphaCoefficients:
    """SACF combination weights for shifts n = -(L-1) .. L-1."""

    length: int
    mu4: float
    tilde: np.ndarray  # tilde[L-1+n] = tilde_alpha_n

    @property
    def alpha0(self) -> float:
        """Weight at n=0, L^2 + L*(mu4 - 1); also the approximate squared frame energy."""
        return float(self.tilde[self.length - 1] + self.length**2)

    def alpha(self) -> np.ndarray:
        """alpha_n = tilde_alpha_n + L^2 * delta[n], indexed like `tilde`."""
        a = self.tilde.copy()
        a[self.length - 1] += self.length**2
        return a


def alpha_coefficients(length: int, mu4: float) -> AlphaCoefficients:
    if length < 1:
        raise ValueError(f"frame length must be >= 1, got {length}")
    if mu4 < 1.0:
        raise ValueError(f"mu4 must be >= 1, got {mu4}")
    n = np.arange(-(length - 1), length)
    tilde = (length - np.abs(n)).astype(float)
    tilde[length - 1] = length * (mu4 - 1.0)
    return AlphaCoefficients(length=length, mu4=mu4, tilde=tilde)


@dataclass(frozen=True)
class AcfStatistics:
    """Theoretical mean ACF, variance profile and expected SACF on the grid."""

    mean_acf: np.ndarray
    var_profile: np.ndarray
    expected_sacf: np.ndarray
    grid: GridSpec
    alpha: AlphaCoefficients

    def __post_init__(self) -> None:
        L = self.alpha.length
        recon = self.var_profile + (L * self.mean_acf) ** 2
        scale = np.max(np.abs(self.expected_sacf))
        if scale > 0 and np.max(np.abs(recon - self.expected_sacf)) > 1e-9 * scale:
            raise ValueError("expected SACF must equal variance plus squared mean")
        if np.min(self.var_profile) < -1e-12 * max(scale, 1.0):
            raise ValueError("variance profile must be nonnegative")

    def normalized_sacf_db(self) -> np.ndarray:
        ref = self.expected_sacf[0]
        return 10.0 * np.log10(np.maximum(self.expected_sacf / ref, 1e-300))


def _shift_weighted_sum(psi2: np.ndarray, weights: np.ndarray, length: int, nt: int) -> np.ndarray:
    """sum_n weights[L-1+n] * psi2 circularly shifted by n*nt, for |n| < L."""
    out = weights[length - 1] * psi2
    for n in range(1, length):
        pair = np.roll(psi2, -n * nt)
        pair += np.roll(psi2, n * nt)
        # weights are symmetric in n by construction
        out += weights[length - 1 + n] * pair
    return out


def _check_normalized(acf: DiscreteAcf) -> np.ndarray:
    psi = acf.psi
    if abs(psi[0] - 1.0) > 1e-9:
        raise ValueError(
            f"ACF must be normalized to psi[0]=1 before computing statistics (got {psi[0]})"
        )
    return psi


def theoretical_stats(acf: DiscreteAcf, alpha: AlphaCoefficients) -> AcfStatistics:
    """Mean, variance and expected SACF of the random frame ACF on the lag grid."""
    psi = _check_normalized(acf)
    nt = acf.grid.nt
    psi2 = psi**2
    var = _shift_weighted_sum(psi2, alpha.tilde, alpha.length, nt)
    sacf = var + (alpha.length * psi) ** 2
    return AcfStatistics(
        mean_acf=psi, var_profile=var, expected_sacf=sacf, grid=acf.grid, alpha=alpha
    )


def self_cross_variances(acf: DiscreteAcf, alpha: AlphaCoefficients) -> tuple[np.ndarray, np.ndarray]:
    """Separate variance profiles of the self and cross parts of the frame ACF.

    The self part contributes L*(mu4-1)*psi^2; the cross part contributes
    the symbol-spaced shifts.  They add up to the total variance profile.
    """
    psi = _check_normalized(acf)
    psi2 = psi**2
    var_self = alpha.tilde[alpha.length - 1] * psi2
    cross = alpha.tilde.copy()
    cross[alpha.length - 1] = 0.0
    var_cross = _shift_weighted_sum(psi2, cross, alpha.length, acf.grid.nt)
    return var_self, var_cross


def theoretical_islr(acf: DiscreteAcf, alpha: AlphaCoefficients, region: np.ndarray) -> float:
    """Expected integrated sidelobe level over a one-sided lag region.

    Computes (1/alpha_0) * sum over the region of the expected SACF, the
    ratio-of-expectations form used by the design objective.  Region indices
    must lie in [0, ceil(lg/2)]; the mirrored negative lags are implied.
    """
    region = np.asarray(region, dtype=int)
    if region.size == 0:
        raise ValueError("ISLR region must be nonempty")
    half = -(-acf.grid.lg // 2)
    if np.min(region) < 0 or np.max(region) > half:
        raise ValueError(f"region indices must lie in [0, {half}]")
    stats = theoretical_stats(acf, alpha)
    return float(np.sum(stats.expected_sacf[region]) / alpha.alpha0)

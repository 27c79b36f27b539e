"""Sampled pulse power spectra, their ACFs, and the root-raised-cosine baseline.

DFT convention: the discrete ACF is ``psi = ifft(folded spectrum)`` with
numpy's default 1/lg inverse scaling.  With the constraint normalization
``omega = nt`` on the flat band, every Nyquist-feasible spectrum then has
``psi[0] == 1`` exactly, which is the energy normalization assumed by the
statistics and the design objective.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import GridSpec

__all__ = [
    "SpectrumVector",
    "DiscreteAcf",
    "SpectralConsistencyError",
    "fold_spectrum",
    "spectrum_to_acf",
    "spectrum_to_pulse",
    "rrc_spectrum",
]


class SpectralConsistencyError(RuntimeError):
    """Raised when a numerically-real quantity comes out with a complex residue."""


@dataclass(frozen=True)
class SpectrumVector:
    """One-sided sampled power spectrum; the design decision variable.

    ``omega[k]`` is the power-spectral-density sample at bin ``k`` for
    ``0 <= k <= grid.nb``.  Entries must be nonnegative.
    """

    omega: np.ndarray
    grid: GridSpec

    def __post_init__(self) -> None:
        omega = np.asarray(self.omega, dtype=float)
        object.__setattr__(self, "omega", omega)
        if omega.ndim != 1 or omega.shape[0] != self.grid.nb + 1:
            raise ValueError(
                f"omega must have length nb+1={self.grid.nb + 1}, got shape {omega.shape}"
            )
        if np.min(omega) < 0.0:
            raise ValueError(f"power spectrum must be nonnegative; min entry {np.min(omega)}")


@dataclass(frozen=True)
class DiscreteAcf:
    """Circularly symmetric discretized pulse ACF on the full grid."""

    psi: np.ndarray
    grid: GridSpec

    def __post_init__(self) -> None:
        psi = np.asarray(self.psi, dtype=float)
        object.__setattr__(self, "psi", psi)
        if psi.ndim != 1 or psi.shape[0] != self.grid.lg:
            raise ValueError(f"psi must have length lg={self.grid.lg}, got shape {psi.shape}")
        scale = max(abs(psi[0]), np.max(np.abs(psi)))
        if scale == 0.0:
            return
        sym_err = np.max(np.abs(psi[1:] - psi[:0:-1]))
        if sym_err > 1e-12 * scale:
            raise ValueError(f"ACF is not circularly symmetric: max asymmetry {sym_err:.3e}")
        if psi[0] < np.max(np.abs(psi)) - 1e-12 * scale:
            raise ValueError("ACF peak must sit at zero lag")

    def normalized(self) -> "DiscreteAcf":
        """Rescale so the zero-lag value equals 1."""
        if self.psi[0] == 0.0:
            raise ValueError("cannot normalize an all-zero ACF")
        return DiscreteAcf(psi=self.psi / self.psi[0], grid=self.grid)


def fold_spectrum(s: SpectrumVector) -> np.ndarray:
    """Expand the one-sided spectrum onto the full grid (Hermitian real layout).

    Bin k of the output carries omega[k] for k <= nb, omega[lg-k] mirrors
    omega[k] for 1 <= k <= nb, and everything in between is zero.
    """
    lg, nb = s.grid.lg, s.grid.nb
    full = np.zeros(lg)
    full[: nb + 1] = s.omega
    full[lg - nb :] = s.omega[1:][::-1]
    return full


def spectrum_to_acf(s: SpectrumVector) -> DiscreteAcf:
    """Discrete ACF as the inverse DFT of the folded power spectrum."""
    full = fold_spectrum(s)
    psi_c = np.fft.ifft(full)
    scale = np.max(np.abs(psi_c))
    if scale > 0 and np.max(np.abs(psi_c.imag)) > 1e-10 * scale:
        raise SpectralConsistencyError(
            f"imaginary residue {np.max(np.abs(psi_c.imag)):.3e} exceeds tolerance"
        )
    return DiscreteAcf(psi=psi_c.real, grid=s.grid)


def spectrum_to_pulse(s: SpectrumVector) -> np.ndarray:
    """Zero-phase transmit pulse whose power spectrum equals the input.

    The amplitude spectrum is taken as the nonnegative real square root
    (the design never constrains pulse phase), the pulse is circularly
    shifted so its peak sits at lg//2, and energy is normalized so the
    discrete ACF at lag 0 equals 1.
    """
    amp = np.sqrt(fold_spectrum(s))
    pulse_c = np.fft.ifft(amp)
    scale = np.max(np.abs(pulse_c))
    if scale > 0 and np.max(np.abs(pulse_c.imag)) > 1e-10 * scale:
        raise SpectralConsistencyError("pulse came out complex for a symmetric spectrum")
    pulse = np.roll(pulse_c.real, s.grid.lg // 2)
    energy = float(np.dot(pulse, pulse))
    if energy == 0.0:
        return pulse
    return pulse / np.sqrt(energy)


def rrc_spectrum(grid: GridSpec) -> SpectrumVector:
    """Raised-cosine power spectrum (the RRC pulse baseline), scaled to nt.

    Flat at nt up to the flat-band edge, cosine-squared roll-off across the
    transition band, zero at the band edge.  Satisfies the Nyquist
    constraint system by construction.  At beta=0 the band edge aliases onto
    its own mirror image, so it carries nt/2 (the sampled value of the
    brick-wall discontinuity); for beta>0 the cosine roll-off hits nt/2 at
    the self-aliasing bin automatically.
    """
    nb, nt = grid.nb, grid.nt
    k1 = grid.flat_end
    omega = np.zeros(nb + 1)
    omega[: k1 + 1] = nt
    if nb > k1:
        k = np.arange(k1 + 1, nb + 1)
        omega[k1 + 1 :] = nt * np.cos(np.pi * (k - k1) / (2.0 * (nb - k1))) ** 2
    else:
        omega[nb] = nt / 2.0
    return SpectrumVector(omega=omega, grid=grid)

"""Independent Nyquist verification, decoupled from the optimizer.

Two equivalent views of the zero-ISI requirement: the folded power
spectrum is constant across every symbol-rate alias class, and the pulse
ACF vanishes at all nonzero symbol-spaced lags.  Both are checked directly
from the data, not from the constraint system used in the design.
"""

from __future__ import annotations

import numpy as np

from .spectrum import DiscreteAcf, SpectrumVector, fold_spectrum

__all__ = ["check_folded_spectrum", "check_acf_zeros", "DEFAULT_TOL"]

# residuals are linear in the spectrum, so they inherit solver feasibility
DEFAULT_TOL = 1e-8


def check_folded_spectrum(s: SpectrumVector) -> float:
    """Max deviation of the alias-class sums from nt.

    Bins j and j + k*(lg/nt) alias onto the same post-sampling frequency;
    a Nyquist pulse spectrum sums to exactly nt over each such class.
    """
    grid = s.grid
    full = fold_spectrum(s)
    class_sums = full.reshape(grid.nt, grid.symbol_slots).sum(axis=0)
    return float(np.max(np.abs(class_sums - grid.nt)))


def check_acf_zeros(acf: DiscreteAcf) -> float:
    """Max |psi[n*nt]| over nonzero symbol-spaced lags, relative to psi[0]."""
    grid = acf.grid
    taps = acf.psi[:: grid.nt][1:]
    return float(np.max(np.abs(taps)) / abs(acf.psi[0]))

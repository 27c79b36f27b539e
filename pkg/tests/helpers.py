"""Shared test utilities: small valid grids and feasible-set samplers."""

import numpy as np

from isacpulse.grid import GridSpec
from isacpulse.spectrum import SpectrumVector


def small_grid() -> GridSpec:
    # lg=32, nb=6, nt=4, beta=0.5: flat_end=2, fold_index=8
    return GridSpec(lg=32, nb=6, nt=4, beta=0.5)


def tiny_grid_beta1() -> GridSpec:
    # beta=1: no flat section beyond DC; 9 design variables
    return GridSpec(lg=64, nb=8, nt=8, beta=1.0)


def grid_beta0() -> GridSpec:
    return GridSpec(lg=32, nb=4, nt=4, beta=0.0)


def mc_grid() -> GridSpec:
    # reduced-scale grid for Monte-Carlo statistics tests
    return GridSpec.for_rolloff(0.5, nt=4, lg_target=256)


def random_feasible_omega(grid: GridSpec, rng: np.random.Generator) -> np.ndarray:
    """Uniform sample of the Nyquist-feasible set.

    Flat-band bins are pinned at nt; each transition-bin pair (n, fold-n)
    splits nt randomly; the band-edge bin paired with the pinned flat edge
    is forced to zero.
    """
    nt, nb = grid.nt, grid.nb
    k1, k2 = grid.flat_end, grid.fold_index
    omega = np.zeros(nb + 1)
    omega[: k1 + 1] = nt
    if k2 == 2 * k1:  # beta=0: band edge aliases onto itself
        omega[k1] = nt / 2.0
    for n in range(k1 + 1, nb + 1):
        j = k2 - n
        if j == n:
            omega[n] = nt / 2.0
        elif j > n:
            t = float(rng.uniform())
            omega[n] = t * nt
            omega[j] = (1.0 - t) * nt
        elif j == k1:
            omega[n] = 0.0
    return omega


def random_feasible_spectrum(grid: GridSpec, rng: np.random.Generator) -> SpectrumVector:
    return SpectrumVector(omega=random_feasible_omega(grid, rng), grid=grid)

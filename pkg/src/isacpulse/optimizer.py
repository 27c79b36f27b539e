"""Sidelobe-minimizing pulse spectrum design as a convex QP.

The expected integrated sidelobe level of the random-frame ACF is a convex
quadratic form w'Qw of the one-sided power spectrum w.  Minimizing it over
the affine Nyquist/bandwidth constraint set Aw = nt*1 with w >= 0 yields
the optimized pulse.  Q is assembled from rank-one contributions of
inverse-DFT rows restricted to the in-band bins, without materializing the
full DFT matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .acf_stats import AlphaCoefficients
from .grid import GridSpec
from .qp import QpConvergenceError, QpInfeasibleError, kkt_residual, solve_qp
from .spectrum import SpectrumVector, rrc_spectrum

__all__ = [
    "QpProblem",
    "DesignResult",
    "sidelobe_region",
    "build_q",
    "build_constraints",
    "build_problem",
    "solve",
]


def sidelobe_region(grid: GridSpec, lo_symbols: int = 1, hi_symbols: int = 8) -> np.ndarray:
    """Lag indices [lo*nt, hi*nt] (inclusive), the delay region of interest."""
    if not 0 <= lo_symbols <= hi_symbols:
        raise ValueError(f"invalid region bounds [{lo_symbols}, {hi_symbols}]")
    return np.arange(lo_symbols * grid.nt, hi_symbols * grid.nt + 1)


def _idft_rows(grid: GridSpec, lags: np.ndarray) -> np.ndarray:
    """Real rows r_m with r_m . w = psi[m] for the folded one-sided spectrum w.

    psi[m] = (1/lg) * (w_0 + 2 * sum_k w_k cos(2 pi k m / lg)), the inverse
    DFT of the Hermitian-symmetric layout collapsed onto bins 0..nb.
    """
    k = np.arange(grid.nb + 1)
    rows = 2.0 * np.cos(2.0 * np.pi * np.outer(lags, k) / grid.lg) / grid.lg
    rows[:, 0] = 1.0 / grid.lg
    return rows


def build_q(grid: GridSpec, alpha: AlphaCoefficients, region: np.ndarray) -> np.ndarray:
    """Objective matrix: w'Qw = expected ISLR over the region (alpha_0-normalized).

    Each lag u in the region and each symbol shift n contributes the
    rank-one form of the ACF sample at (u + n*nt) mod lg, with weight
    alpha_n / alpha_0.  Mirrored lags are mapped to their canonical index
    in [0, lg/2] (the ACF is circularly symmetric), so every contribution
    is accumulated exactly once.
    """
    region = np.asarray(region, dtype=int)
    nb, lg, nt = grid.nb, grid.lg, grid.nt
    if region.size == 0:
        return np.zeros((nb + 1, nb + 1))
    half = -(-lg // 2)
    if np.min(region) < 0 or np.max(region) > half:
        raise ValueError(f"region indices must lie in [0, {half}]")

    weights = np.zeros(half + 1)
    alpha_arr = alpha.alpha() / alpha.alpha0
    for n in range(-(alpha.length - 1), alpha.length):
        v = (region + n * nt) % lg
        m = np.minimum(v, lg - v)
        np.add.at(weights, m, alpha_arr[alpha.length - 1 + n])

    lags = np.nonzero(weights)[0]
    rows = _idft_rows(grid, lags)
    q = (rows * weights[lags, None]).T @ rows
    return 0.5 * (q + q.T)


def build_constraints(grid: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """Nyquist constraint system A w = nt * 1 on the in-band bins.

    Fixed rows pin the flat passband at nt; pairwise rows tie each
    transition bin to its mirror about the symbol-rate frequency.  Duplicate
    mirrored rows are emitted once so A has full row rank.
    """
    nt, nb = grid.nt, grid.nb
    k1, k2 = grid.flat_end, grid.fold_index
    rows: list[np.ndarray] = []
    seen: set[tuple] = set()
    # at beta=0 the band edge coincides with the flat-band edge and aliases
    # onto its own mirror; it takes the self-pair row (2*w = nt), not a fixed
    # row, so the folded spectrum stays exactly constant
    pair_start = k1 if k2 == 2 * k1 else k1 + 1
    for n in range(0, k1 + 1):
        if 2 * n == k2:
            continue
        row = np.zeros(nb + 1)
        row[n] = 1.0
        rows.append(row)
        seen.add((n,))
    for n in range(pair_start, nb + 1):
        j = k2 - n
        key = tuple(sorted((n, j)))
        if key in seen:
            continue
        seen.add(key)
        row = np.zeros(nb + 1)
        row[n] += 1.0
        row[j] += 1.0
        rows.append(row)
    a = np.vstack(rows)
    b = np.full(a.shape[0], float(nt))
    return a, b


@dataclass(frozen=True)
class QpProblem:
    """Assembled design QP: min w'Qw  s.t.  A w = b, w >= 0."""

    q_matrix: np.ndarray
    a_matrix: np.ndarray
    rhs: np.ndarray
    grid: GridSpec
    alpha: AlphaCoefficients
    region: np.ndarray

    def __post_init__(self) -> None:
        q = self.q_matrix
        scale = max(np.max(np.abs(q)), 1e-300)
        if np.max(np.abs(q - q.T)) > 1e-12 * scale:
            raise ValueError("Q must be symmetric")
        if np.min(np.linalg.eigvalsh(q)) < -1e-9 * scale:
            raise ValueError("Q must be positive semidefinite")
        m = self.a_matrix.shape[0]
        if np.linalg.matrix_rank(self.a_matrix) != m:
            raise ValueError("constraint matrix must have full row rank after deduplication")


def build_problem(grid: GridSpec, alpha: AlphaCoefficients, region: np.ndarray) -> QpProblem:
    a, b = build_constraints(grid)
    return QpProblem(
        q_matrix=build_q(grid, alpha, region),
        a_matrix=a,
        rhs=b,
        grid=grid,
        alpha=alpha,
        region=np.asarray(region, dtype=int),
    )


@dataclass(frozen=True)
class DesignResult:
    """Optimized spectrum plus optimality evidence."""

    omega_opt: SpectrumVector
    objective: float
    kkt_residual: float
    baseline_objective: float
    iterations: int

    def __post_init__(self) -> None:
        if self.objective > self.baseline_objective + 1e-9:
            raise ValueError(
                f"optimized objective {self.objective} exceeds feasible RRC baseline "
                f"{self.baseline_objective}"
            )


def _presolve(a: np.ndarray, b: np.ndarray):
    """Eliminate variables pinned by (chains of) single-variable rows.

    Returns fixed values, surviving row indices, and the elimination trace
    (row index, fixed variable or None) in order, used afterwards to
    reconstruct exact multipliers for the full system.
    """
    m, n = a.shape
    fixed: dict[int, float] = {}
    dropped: list[tuple[int, int | None]] = []
    alive = list(range(m))
    changed = True
    while changed:
        changed = False
        for r in list(alive):
            idx = np.nonzero(a[r])[0]
            unfixed = [i for i in idx if i not in fixed]
            rhs_eff = b[r] - sum(a[r, i] * fixed[i] for i in idx if i in fixed)
            if len(unfixed) == 0:
                if abs(rhs_eff) > 1e-9 * (1.0 + abs(b[r])):
                    raise QpInfeasibleError(f"constraint row {r} is inconsistent after presolve")
                alive.remove(r)
                dropped.append((r, None))
                changed = True
            elif len(unfixed) == 1:
                i = unfixed[0]
                val = rhs_eff / a[r, i]
                if val < -1e-9:
                    raise QpInfeasibleError(f"presolve fixes w[{i}] = {val} < 0")
                fixed[i] = max(val, 0.0)
                alive.remove(r)
                dropped.append((r, i))
                changed = True
    return fixed, alive, dropped


def solve(problem: QpProblem) -> DesignResult:
    """Minimize w'Qw over the Nyquist-feasible set and certify optimality.

    Variables pinned by the constraint structure are eliminated first, the
    remaining problem is solved by the interior-point method, and KKT
    multipliers for the full system are reconstructed exactly so the
    reported residual refers to the original problem.
    """
    q, a, b = problem.q_matrix, problem.a_matrix, problem.rhs
    grid = problem.grid
    n = q.shape[0]
    p_full = 2.0 * q

    fixed, alive, dropped = _presolve(a, b)
    free = [i for i in range(n) if i not in fixed]

    omega = np.zeros(n)
    for i, val in fixed.items():
        omega[i] = val

    y = np.zeros(a.shape[0])
    z = np.zeros(n)
    iters = 0
    if free:
        a_red = a[np.ix_(alive, free)]
        b_red = np.array([b[r] - a[r] @ omega for r in alive])
        p_red = p_full[np.ix_(free, free)]
        q_lin = (p_full @ omega)[free]
        sol = solve_qp(p_red, q_lin, a_red, b_red)
        iters = sol.iterations
        omega[free] = sol.x
        y[alive] = sol.y
        z[np.array(free)] = sol.z

    # multiplier reconstruction for eliminated rows, in reverse elimination
    # order: each dropped row finalizes the stationarity of the variable it
    # fixed (dual slack must vanish off the bound and stay >= 0 on it)
    act_tol = 1e-7 * max(1.0, float(np.max(np.abs(b))) if b.size else 1.0)
    for r, i in reversed(dropped):
        if i is None:
            continue
        g_i = p_full[i] @ omega + a[:, i] @ y - z[i]
        if omega[i] > act_tol:
            y[r] = -g_i / a[r, i]
        elif g_i >= 0.0:
            z[i] = z[i] + g_i
        else:
            y[r] = -g_i / a[r, i]

    if np.min(omega) < -1e-9:
        raise QpConvergenceError(
            f"solution violates nonnegativity: min entry {np.min(omega)}", omega, np.inf
        )
    omega = np.maximum(omega, 0.0)

    resid = kkt_residual(p_full, np.zeros(n), a, b, omega, y, z)
    objective = float(omega @ q @ omega)
    baseline = float(rrc_spectrum(grid).omega @ q @ rrc_spectrum(grid).omega)
    return DesignResult(
        omega_opt=SpectrumVector(omega=omega, grid=grid),
        objective=objective,
        kkt_residual=resid,
        baseline_objective=baseline,
        iterations=iters,
    )

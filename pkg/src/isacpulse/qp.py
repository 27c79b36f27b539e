"""Dense primal-dual interior-point solver for small convex QPs.

Solves   min  0.5 * x'Px + q'x   s.t.  Ax = b,  x >= 0

with a Mehrotra predictor-corrector iteration.  The problems produced by
the pulse design are small (a few hundred variables), so all linear algebra
is dense and deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

__all__ = ["QpInfeasibleError", "QpConvergenceError", "QpSolution", "solve_qp"]


class QpInfeasibleError(RuntimeError):
    """The equality system Ax = b has no solution."""


class QpConvergenceError(RuntimeError):
    """Iteration limit hit; carries the best iterate found so far."""

    def __init__(self, message: str, x: np.ndarray, residual: float):
        super().__init__(message)
        self.x = x
        self.residual = residual


@dataclass(frozen=True)
class QpSolution:
    x: np.ndarray
    y: np.ndarray  # equality multipliers
    z: np.ndarray  # nonnegativity multipliers, z >= 0
    iterations: int
    duality_gap: float


def kkt_residual(P, q, A, b, x, y, z) -> float:
    """Max-norm KKT residual: stationarity, feasibility, complementarity, signs."""
    stat = P @ x + q + A.T @ y - z
    return float(
        max(
            np.max(np.abs(stat)),
            np.max(np.abs(A @ x - b)) if A.size else 0.0,
            np.max(np.abs(x * z)) if x.size else 0.0,
            max(0.0, -np.min(x)) if x.size else 0.0,
            max(0.0, -np.min(z)) if z.size else 0.0,
        )
    )


def _step_length(v: np.ndarray, dv: np.ndarray, frac: float) -> float:
    neg = dv < 0
    if not np.any(neg):
        return 1.0
    return min(1.0, frac * np.min(-v[neg] / dv[neg]))


def solve_qp(
    P: np.ndarray,
    q: np.ndarray,
    A: np.ndarray,
    b: np.ndarray,
    *,
    tol: float = 1e-11,
    max_iter: int = 100,
) -> QpSolution:
    P = np.asarray(P, dtype=float)
    q = np.asarray(q, dtype=float)
    b = np.asarray(b, dtype=float).ravel()
    n = P.shape[0]
    if n == 0:
        return QpSolution(np.zeros(0), np.zeros(b.size), np.zeros(0), 0, 0.0)
    A = np.asarray(A, dtype=float).reshape(-1, n)
    m = A.shape[0]

    # consistency of the equality system (catches contradictory rows early)
    if m:
        x_ls, *_ = np.linalg.lstsq(A, b, rcond=None)
        if np.max(np.abs(A @ x_ls - b)) > 1e-8 * (1.0 + np.max(np.abs(b))):
            raise QpInfeasibleError("equality constraints are inconsistent")

    # objective scaling keeps the augmented system well conditioned
    obj_scale = max(np.max(np.abs(P)), np.max(np.abs(q)), 1e-300)
    Ps = P / obj_scale
    qs = q / obj_scale

    x_ref = max(1.0, np.max(np.abs(b)) if m else 1.0)
    x = np.full(n, x_ref)
    y = np.zeros(m)
    z = np.ones(n)

    r_scale_d = 1.0 + np.max(np.abs(qs))
    r_scale_p = 1.0 + (np.max(np.abs(b)) if m else 0.0)

    best_x, best_res = x.copy(), np.inf
    iters = 0
    for iters in range(1, max_iter + 1):
        rd = Ps @ x + qs + A.T @ y - z
        rp = A @ x - b if m else np.zeros(0)
        mu = float(x @ z) / n

        res = max(
            np.max(np.abs(rd)) / r_scale_d,
            (np.max(np.abs(rp)) / r_scale_p) if m else 0.0,
            mu / (1.0 + abs(float(x @ (Ps @ x)) / 2 + float(qs @ x))),
        )
        if res < best_res:
            best_res, best_x = res, x.copy()
        if res <= tol:
            return QpSolution(
                x=x, y=y * obj_scale, z=z * obj_scale, iterations=iters - 1, duality_gap=mu * n * obj_scale
            )

        d = z / x
        K = np.zeros((n + m, n + m))
        K[:n, :n] = Ps + np.diag(d)
        if m:
            K[:n, n:] = A.T
            K[n:, :n] = A
            K[n:, n:] = -1e-13 * np.eye(m)
        lu, piv = scipy.linalg.lu_factor(K)

        # predictor (affine scaling) direction
        rhs = np.concatenate([-rd - z, -rp])
        sol = scipy.linalg.lu_solve((lu, piv), rhs)
        dx_a, dy_a = sol[:n], sol[n:]
        dz_a = -z - d * dx_a
        ap = _step_length(x, dx_a, 1.0)
        ad = _step_length(z, dz_a, 1.0)
        mu_aff = float((x + ap * dx_a) @ (z + ad * dz_a)) / n
        sigma = (max(mu_aff, 0.0) / mu) ** 3 if mu > 0 else 0.0

        # corrector
        rc = (sigma * mu - dx_a * dz_a) / x
        rhs = np.concatenate([-rd - z + rc, -rp])
        sol = scipy.linalg.lu_solve((lu, piv), rhs)
        dx, dy = sol[:n], sol[n:]
        dz = -z + rc - d * dx

        frac = max(0.99, 1.0 - mu)
        ap = _step_length(x, dx, frac)
        ad = _step_length(z, dz, frac)
        x = x + ap * dx
        y = y + ad * dy
        z = z + ad * dz

    raise QpConvergenceError(
        f"interior-point iteration did not converge in {max_iter} steps "
        f"(best scaled residual {best_res:.3e})",
        x=best_x,
        residual=best_res,
    )

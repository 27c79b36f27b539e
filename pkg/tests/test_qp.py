import numpy as np
import pytest

from isacpulse.qp import QpInfeasibleError, kkt_residual, solve_qp


def test_hand_worked_two_variable_problem():
    # min (x0-1)^2 + (x1-2)^2  s.t.  x0 + x1 = 1, x >= 0  ->  x = (0, 1)
    p = 2.0 * np.eye(2)
    q = np.array([-2.0, -4.0])
    a = np.array([[1.0, 1.0]])
    b = np.array([1.0])
    sol = solve_qp(p, q, a, b)
    # the bound is degenerate (x0 and z0 both vanish), which caps interior-point
    # accuracy near sqrt(tol)
    assert np.allclose(sol.x, [0.0, 1.0], atol=1e-5)
    assert kkt_residual(p, q, a, b, sol.x, sol.y, sol.z) < 1e-7


def test_equality_free_problem():
    # min (x-3)^2 with x >= 0 -> x = 3
    sol = solve_qp(np.array([[2.0]]), np.array([-6.0]), np.zeros((0, 1)), np.zeros(0))
    assert abs(sol.x[0] - 3.0) < 1e-8


def test_active_bound():
    # min (x+2)^2 with x >= 0 -> x = 0, multiplier z = 4
    sol = solve_qp(np.array([[2.0]]), np.array([4.0]), np.zeros((0, 1)), np.zeros(0))
    assert abs(sol.x[0]) < 1e-8
    assert abs(sol.z[0] - 4.0) < 1e-6


def test_empty_problem():
    sol = solve_qp(np.zeros((0, 0)), np.zeros(0), np.zeros((0, 0)), np.zeros(0))
    assert sol.x.size == 0


def test_inconsistent_equalities_raise():
    p = 2.0 * np.eye(2)
    a = np.array([[1.0, 1.0], [1.0, 1.0]])
    b = np.array([1.0, 2.0])
    with pytest.raises(QpInfeasibleError):
        solve_qp(p, np.zeros(2), a, b)


def _random_qp(rng, n, m):
    g = rng.standard_normal((n, n))
    p = g @ g.T + 0.1 * np.eye(n)
    q = rng.standard_normal(n)
    a = rng.standard_normal((m, n))
    x0 = rng.uniform(0.5, 2.0, n)  # strictly feasible point defines b
    b = a @ x0
    return p, q, a, b


@pytest.mark.parametrize("seed", range(8))
def test_random_problems_match_cvxpy_oracle(seed):
    cvxpy = pytest.importorskip("cvxpy")
    rng = np.random.default_rng(seed)
    n, m = 12, 4
    p, q, a, b = _random_qp(rng, n, m)

    x = cvxpy.Variable(n)
    prob = cvxpy.Problem(
        cvxpy.Minimize(0.5 * cvxpy.quad_form(x, p) + q @ x), [a @ x == b, x >= 0]
    )
    ref = prob.solve()

    sol = solve_qp(p, q, a, b)
    obj = 0.5 * sol.x @ p @ sol.x + q @ sol.x
    assert abs(obj - ref) < 1e-6 * (1.0 + abs(ref))
    assert np.max(np.abs(a @ sol.x - b)) < 1e-8
    assert np.min(sol.x) > -1e-9


@pytest.mark.parametrize("seed", range(5))
def test_kkt_residual_certifies_solution(seed):
    rng = np.random.default_rng(100 + seed)
    p, q, a, b = _random_qp(rng, 10, 3)
    sol = solve_qp(p, q, a, b)
    assert kkt_residual(p, q, a, b, sol.x, sol.y, sol.z) < 1e-7 * max(
        1.0, np.max(np.abs(p)), np.max(np.abs(q))
    )


def test_deterministic():
    rng = np.random.default_rng(42)
    p, q, a, b = _random_qp(rng, 10, 3)
    s1 = solve_qp(p, q, a, b)
    s2 = solve_qp(p, q, a, b)
    assert np.array_equal(s1.x, s2.x)
    assert s1.iterations == s2.iterations


def test_badly_scaled_objective():
    # objective scaled by 1e8: solver must still converge and rescale duals
    p = 1e8 * 2.0 * np.eye(2)
    q = 1e8 * np.array([-2.0, -4.0])
    a = np.array([[1.0, 1.0]])
    b = np.array([1.0])
    sol = solve_qp(p, q, a, b)
    assert np.allclose(sol.x, [0.0, 1.0], atol=1e-5)
    assert kkt_residual(p, q, a, b, sol.x, sol.y, sol.z) < 1e-7 * 1e8

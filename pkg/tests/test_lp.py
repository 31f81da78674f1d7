import numpy as np
import pytest
from scipy.optimize import linprog

from lpdecode.lp import LinearProgram, Status, solve_lp


def test_max_single_variable():
    sol = solve_lp(LinearProgram([1.0], A_ub=[[1.0]], b_ub=[1.0], sense="max"))
    assert sol.status is Status.OPTIMAL
    assert sol.x[0] == pytest.approx(1.0)
    assert sol.objective_value == pytest.approx(1.0)


def test_equality_constraint():
    sol = solve_lp(LinearProgram([1.0, 1.0], A_eq=[[1.0, 1.0]], b_eq=[1.0]))
    assert sol.status is Status.OPTIMAL
    assert sol.objective_value == pytest.approx(1.0)
    assert sol.x.sum() == pytest.approx(1.0)


def test_infeasible():
    sol = solve_lp(LinearProgram([1.0], A_ub=[[-1.0], [1.0]], b_ub=[-2.0, 1.0], sense="max"))
    assert sol.status is Status.INFEASIBLE
    assert not sol.optimal


def test_unbounded():
    sol = solve_lp(LinearProgram([1.0, 0.0], A_ub=[[0.0, 1.0]], b_ub=[1.0], sense="max"))
    assert sol.status is Status.UNBOUNDED


def test_box_bounds():
    sol = solve_lp(LinearProgram([-1.0, 2.0], lower=[0.5, -1.0], upper=[2.0, 3.0]))
    assert np.allclose(sol.x, [2.0, -1.0])
    assert sol.objective_value == pytest.approx(-4.0)


def test_tight_set_reports_active_rows():
    sol = solve_lp(LinearProgram([1.0, 1.0], A_ub=[[1.0, 0.0], [0.0, 1.0]], b_ub=[1.0, 5.0], sense="max",
                                 upper=[np.inf, 2.0]))
    assert sol.objective_value == pytest.approx(3.0)
    assert 0 in sol.tight_set and 1 not in sol.tight_set


def random_primal_dual(rng, m, n):
    """Feasible, bounded instance min c.x, Ax <= b, x >= 0 by construction."""
    A = rng.integers(-3, 4, size=(m, n)).astype(float)
    b = A @ rng.random(n) + rng.random(m)
    c = -A.T @ rng.random(m) + rng.random(n)  # dual feasible: A^T y0 + c >= 0 at y0
    return A, b, c


@pytest.mark.parametrize("seed", range(40))
def test_strong_duality(seed):
    rng = np.random.default_rng(seed)
    m, n = int(rng.integers(2, 12)), int(rng.integers(2, 12))
    A, b, c = random_primal_dual(rng, m, n)
    primal = solve_lp(LinearProgram(c, A_ub=A, b_ub=b))
    # dual: max -b.y  s.t.  -A^T y <= c,  y >= 0
    dual = solve_lp(LinearProgram(-b, A_ub=-A.T, b_ub=c, sense="max"))
    assert primal.optimal and dual.optimal
    assert primal.objective_value == pytest.approx(dual.objective_value, abs=1e-7)


@pytest.mark.parametrize("seed", range(40))
def test_matches_scipy(seed):
    rng = np.random.default_rng(1000 + seed)
    m, n = int(rng.integers(1, 10)), int(rng.integers(1, 10))
    A = rng.standard_normal((m, n))
    b = rng.standard_normal(m)
    Aeq = rng.standard_normal((1, n))
    beq = rng.standard_normal(1)
    c = rng.standard_normal(n)
    ub = rng.uniform(0.5, 3.0, n)
    ours = solve_lp(LinearProgram(c, A, b, Aeq, beq, np.zeros(n), ub))
    ref = linprog(c, A_ub=A, b_ub=b, A_eq=Aeq, b_eq=beq, bounds=list(zip(np.zeros(n), ub)), method="highs")
    assert ours.optimal == (ref.status == 0)
    if ref.status == 0:
        assert ours.objective_value == pytest.approx(ref.fun, abs=1e-7)


def test_deterministic():
    rng = np.random.default_rng(5)
    A, b, c = random_primal_dual(rng, 8, 10)
    a = solve_lp(LinearProgram(c, A_ub=A, b_ub=b))
    z = solve_lp(LinearProgram(c, A_ub=A, b_ub=b))
    assert np.array_equal(a.x, z.x)


def test_degenerate_problem_terminates():
    # many redundant constraints through one vertex
    n = 6
    A = np.vstack([np.eye(n), np.ones((1, n)), np.ones((1, n)), -np.eye(n)])
    b = np.concatenate([np.ones(n), [n], [n], np.zeros(n)])
    sol = solve_lp(LinearProgram(-np.ones(n), A_ub=A, b_ub=b))
    assert sol.objective_value == pytest.approx(-n)


def test_rejects_infinite_lower():
    with pytest.raises(ValueError):
        LinearProgram([1.0], lower=[-np.inf])

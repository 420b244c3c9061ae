import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from steerlab import simplex


def test_small_known_lp():
    # min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
    c = [-1, -1, 0, 0]
    A = [[1, 2, 1, 0], [3, 1, 0, 1]]
    sol = simplex.solve(c, A, [4, 6])
    assert sol.status == "optimal"
    assert sol.fun == pytest.approx(-2.8)
    assert sol.x[:2] == pytest.approx([1.6, 1.2])


def test_infeasible():
    sol = simplex.solve([1, 1], [[1, 1], [1, 1]], [1, 2])
    assert sol.status == "infeasible"


def test_unbounded():
    sol = simplex.solve([-1, 0], [[1, -1]], [1])
    assert sol.status == "unbounded"


def test_degenerate_redundant_rows():
    sol = simplex.solve([1, 2, 3], [[1, 1, 1], [2, 2, 2]], [1, 2])
    assert sol.status == "optimal"
    assert sol.fun == pytest.approx(1.0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(2, 6), st.integers(3, 10))
def test_matches_scipy_oracle(seed, m, n):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(m, n))
    x0 = rng.uniform(0, 1, size=n)
    b = A @ x0  # feasible by construction
    c = rng.uniform(0.1, 1.0, size=n)  # positive costs keep it bounded
    ours = simplex.solve(c, A, b)
    ref = linprog(c, A_eq=A, b_eq=b, bounds=[(0, None)] * n, method="highs")
    assert ours.status == "optimal" and ref.status == 0
    assert ours.fun == pytest.approx(ref.fun, abs=1e-8)
    assert np.allclose(A @ ours.x, b, atol=1e-8)
    assert np.all(ours.x >= -1e-12)

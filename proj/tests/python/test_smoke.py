import numpy as np
import pytest

import ginv


def rel(x, y):
    ref = max(np.linalg.norm(x), np.linalg.norm(y))
    return 0.0 if ref == 0 else np.linalg.norm(x - y) / ref


def test_pinv_matches_numpy():
    rng = np.random.default_rng(0)
    a = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
    assert rel(ginv.pinv(a), np.linalg.pinv(a)) < 1e-12


def test_real_input_is_accepted():
    assert rel(ginv.drazin(np.array([[2.0, 0.0], [0.0, 0.0]])), np.diag([0.5, 0.0])) < 1e-14


def test_routes_agree_on_generated_pair():
    a, w = ginv.generate_pair(6, 5, t=2, k=2, seed=4)
    assert a.shape == (6, 5) and w.shape == (5, 6)
    assert ginv.weighted_index(a, w) == 2
    x = ginv.wmwgmp(a, w, 2)
    for route in ginv.ROUTES:
        assert rel(ginv.wmwgmp(a, w, 2, route=route), x) < 1e-8
    assert rel(x @ a @ x, x) < 1e-10
    assert ginv.verify_defining_system(a, w, 2, x)["holds"]


def test_solvers():
    a, w = ginv.generate_pair(5, 4, t=2, k=2, seed=9)
    b = np.ones((5, 2))
    x, objective, constraint = ginv.solve_constrained_wmwgmp(a, w, 1, b)
    assert x.shape == (4, 2)
    assert constraint < 1e-10
    assert rel(ginv.cramer_solve(a, w, 1, b), x) < 1e-8
    assert rel(ginv.general_solution(a, w, 1, b, np.zeros((4, 2))), x) < 1e-12


def test_errors_map_to_python_exceptions():
    with pytest.raises(ginv.IndexError):
        ginv.group_inverse(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ginv.DomainError):
        ginv.wmwgmp(np.eye(2), np.zeros((2, 2)), 1)
    with pytest.raises(ginv.ShapeError):
        ginv.wmwgmp(np.eye(2), np.eye(3), 1)
    with pytest.raises(ginv.Error):
        ginv.wmwgmp(np.eye(2), np.eye(2), 1, route="R10")


def test_text_round_trip():
    m = np.array([[1 / 3, -2.5j]])
    assert np.array_equal(ginv.parse_matrix(ginv.format_matrix(m)), m)

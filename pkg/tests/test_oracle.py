import numpy as np
import pytest

from ortho_ecoc.codes import greedy_orthogonal_dense, make_coding_matrix
from ortho_ecoc.decode import decode_constrained_lsq
from ortho_ecoc.exceptions import OracleNotConverged
from ortho_ecoc.oracle import OracleConfig, objective, project_simplex_by_sort, qp_decode_oracle


def test_projection_examples():
    np.testing.assert_allclose(project_simplex_by_sort([0.9, 0.4, -0.3]), [0.75, 0.25, 0.0], atol=1e-15)
    assert project_simplex_by_sort([1.0, 0.0]).tolist() == [1.0, 0.0]
    assert project_simplex_by_sort([-1.0, -1.0]).tolist() == [0.5, 0.5]


def test_projection_variational_inequality():
    rng = np.random.default_rng(1)
    for _ in range(300):
        m = int(rng.integers(2, 20))
        x = rng.uniform(-3, 3, m)
        p = project_simplex_by_sort(x)
        assert np.all(p >= 0) and abs(p.sum() - 1) < 1e-12
        Q = rng.dirichlet(np.ones(m), size=100)
        assert np.all((Q - p) @ (x - p) <= 1e-10)


def test_oracle_code_row():
    A = greedy_orthogonal_dense(6, 2)
    for i in range(6):
        np.testing.assert_allclose(qp_decode_oracle(A, A.entries[i]), np.eye(6)[i], atol=1e-6)


def test_oracle_vertex_solution():
    np.testing.assert_allclose(qp_decode_oracle([[1], [-1]], [2.0]), [1.0, 0.0], atol=1e-6)


@pytest.mark.parametrize("family", ["ortho-zeros", "one-vs-rest", "random", "one-vs-one"])
def test_oracle_objective_not_above_active_set(family):
    rng = np.random.default_rng(2)
    for seed in range(5):
        A = make_coding_matrix(family, 6, seed=seed)
        r = rng.uniform(-1, 1, A.n_codes)
        p = qp_decode_oracle(A, r)
        assert objective(A, r, p) <= objective(A, r, decode_constrained_lsq(A, r)) + 1e-6


def test_oracle_objective_monotone():
    rng = np.random.default_rng(3)
    A = make_coding_matrix("ortho-zeros", 8, seed=1)
    for _ in range(5):
        history = []
        qp_decode_oracle(A, rng.uniform(-1, 1, A.n_codes), history=history)
        assert len(history) > 1
        assert np.all(np.diff(history) <= 1e-12)


def test_oracle_reports_non_convergence():
    A = make_coding_matrix("one-vs-rest", 5)
    with pytest.raises(OracleNotConverged):
        qp_decode_oracle(A, np.full(5, 0.3) * [1, -1, 1, -1, 1], OracleConfig(max_iters=2, tolerance=1e-12))


def test_oracle_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(tolerance=0)
    with pytest.raises(ValueError):
        OracleConfig(max_iters=0)
    with pytest.raises(ValueError):
        OracleConfig(step_size=-1.0)

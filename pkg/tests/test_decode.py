import numpy as np
import pytest
from scipy.linalg import null_space

from ortho_ecoc.codes import (
    CodingMatrix,
    greedy_orthogonal_dense,
    harmonic_matrix,
    make_coding_matrix,
    one_vs_one,
    one_vs_rest,
)
from ortho_ecoc.decode import (
    SolverKind,
    check_solver,
    decode_batch,
    decode_constrained_lsq,
    decode_one_vs_one,
    decode_orthogonal,
    default_solver,
    simplex_adjust,
    unconstrained_orthogonal,
    vote,
)
from ortho_ecoc.exceptions import InvalidCodingMatrix, NotOrthogonalError
from ortho_ecoc.oracle import objective, project_simplex_by_sort, qp_decode_oracle
from reference_matrices import HARMONIC_6x8

H2 = [[1, 1], [1, -1]]


def assert_simplex(p, tol=1e-12):
    p = np.asarray(p)
    assert np.all(p >= 0.0)
    assert np.all(np.abs(p.sum(axis=-1) - 1.0) <= tol)


def strictly_convex(A):
    """True when |A^T p - r|^2 has a unique minimizer on the simplex's affine hull."""
    a = np.asarray(A.entries, dtype=float)
    basis = null_space(np.ones((1, a.shape[0])))
    return np.linalg.matrix_rank(a.T @ basis) == a.shape[0] - 1


# ---------------------------------------------------------------- unconstrained


def test_unconstrained_examples():
    assert unconstrained_orthogonal(H2, [1, 1]).tolist() == [1.0, 0.0]
    assert unconstrained_orthogonal(H2, [0, 0]).tolist() == [0.0, 0.0]


@pytest.mark.parametrize("i", range(6))
def test_unconstrained_code_row_gives_indicator(i):
    p0 = unconstrained_orthogonal(HARMONIC_6x8, HARMONIC_6x8[i])
    assert np.array_equal(p0, np.eye(6)[i])


def test_unconstrained_rejects_non_orthogonal():
    with pytest.raises(NotOrthogonalError):
        unconstrained_orthogonal(one_vs_rest(3), [1, -1, -1])
    with pytest.raises(NotOrthogonalError):
        unconstrained_orthogonal(one_vs_one(3), [1, 1, 1])


def test_decision_length_checked():
    with pytest.raises(ValueError):
        decode_orthogonal(H2, [1, 0, 0])
    with pytest.raises(ValueError):
        vote(H2, [np.nan, 0])


# ---------------------------------------------------------------- simplex_adjust


def test_simplex_adjust_examples():
    np.testing.assert_allclose(simplex_adjust([1 / 3, 1 / 3, 1 / 3]), [1 / 3] * 3, atol=1e-15)
    np.testing.assert_allclose(simplex_adjust([0.9, 0.4, -0.3]), [0.75, 0.25, 0.0], atol=1e-15)
    assert simplex_adjust([2, 0, 0]).tolist() == [1.0, 0.0, 0.0]
    assert simplex_adjust([5.0]).tolist() == [1.0]


def test_simplex_adjust_four_class_motions():
    p, steps = simplex_adjust([-0.4, 0.6, 0.6, 0.6], return_steps=True)
    np.testing.assert_allclose(p, [0, 1 / 3, 1 / 3, 1 / 3], atol=1e-15)
    assert len(steps) == 2
    u = [s / np.linalg.norm(s) for s in steps]
    np.testing.assert_allclose(np.abs(u[0]), np.full(4, 0.5), atol=1e-12)
    np.testing.assert_allclose(np.abs(u[1] @ np.array([-3, 1, 1, 1])) / np.sqrt(12), 1.0, atol=1e-12)
    assert abs(steps[0] @ steps[1]) < 1e-15


def v_direction(m, i):
    """0-based direction sequence: zeros before i, -(m - i - 1) at i, ones after."""
    v = np.zeros(m)
    v[i] = -(m - i - 1)
    v[i + 1 :] = 1.0
    return v / np.sqrt((m - i - 1) * (m - i))


def test_direction_sequence_is_orthonormal():
    for m in range(2, 12):
        V = np.array([v_direction(m, i) for i in range(m - 1)])
        np.testing.assert_allclose(V @ V.T, np.eye(m - 1), atol=1e-12)
        np.testing.assert_allclose(V @ np.ones(m), 0.0, atol=1e-12)


def test_simplex_adjust_cascade_follows_direction_sequence():
    # coordinates leave in index order, one per pass
    p, steps = simplex_adjust([-1.0, 0.1, 0.3, 0.6, 1.0], return_steps=True)
    np.testing.assert_allclose(p, [0, 0, 0, 0.3, 0.7], atol=1e-12)
    assert len(steps) == 2
    for i, s in enumerate(steps):
        cos = s @ v_direction(5, i) / np.linalg.norm(s)
        assert abs(abs(cos) - 1.0) < 1e-12


def test_simplex_adjust_matches_sort_oracle():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(10_000):
        m = int(rng.integers(2, 33))
        x = rng.uniform(-3, 3, m)
        worst = max(worst, np.max(np.abs(simplex_adjust(x) - project_simplex_by_sort(x))))
    assert worst < 1e-10


def test_simplex_adjust_batch_matches_single():
    rng = np.random.default_rng(5)
    X = rng.uniform(-3, 3, (500, 9))
    batch = simplex_adjust(X)
    single = np.array([simplex_adjust(x) for x in X])
    np.testing.assert_allclose(batch, single, atol=1e-14)
    assert_simplex(batch)


def test_simplex_adjust_idempotent_and_feasible():
    rng = np.random.default_rng(6)
    for _ in range(2000):
        x = rng.normal(0, 2, int(rng.integers(1, 20)))
        p = simplex_adjust(x)
        assert_simplex(p)
        np.testing.assert_allclose(simplex_adjust(p), p, atol=1e-12, rtol=0)


def test_simplex_adjust_steps_pairwise_orthogonal():
    rng = np.random.default_rng(7)
    for _ in range(2000):
        x = rng.uniform(-3, 3, int(rng.integers(2, 16)))
        _, steps = simplex_adjust(x, return_steps=True)
        for a in range(len(steps)):
            for b in range(a):
                cos = steps[a] @ steps[b] / (np.linalg.norm(steps[a]) * np.linalg.norm(steps[b]))
                assert abs(cos) < 1e-9


def test_simplex_adjust_rejects_bad_input():
    with pytest.raises(ValueError):
        simplex_adjust([])
    with pytest.raises(ValueError):
        simplex_adjust([1.0, np.inf])
    with pytest.raises(ValueError):
        simplex_adjust(np.zeros((2, 2)), return_steps=True)


# ---------------------------------------------------------------- decode_orthogonal / vote


def test_decode_orthogonal_examples():
    np.testing.assert_array_equal(decode_orthogonal(HARMONIC_6x8, HARMONIC_6x8[3]), np.eye(6)[3])
    np.testing.assert_allclose(decode_orthogonal(H2, [1, -1]), [0, 1], atol=1e-15)
    np.testing.assert_allclose(decode_orthogonal(H2, [0.2, 0.2]), [0.6, 0.4], atol=1e-15)


def test_vote_examples():
    assert vote(HARMONIC_6x8, HARMONIC_6x8[2]) == 2
    assert vote(one_vs_rest(3), [-1, 1, -1]) == 1
    assert vote(one_vs_rest(3), [0, 0, 0]) == 0  # tie goes to the lowest index


def test_vote_matches_argmax_where_unique():
    rng = np.random.default_rng(8)
    checked = 0
    for trial in range(300):
        m = int(rng.integers(4, 11))
        A = greedy_orthogonal_dense(m, trial)
        r = rng.uniform(-1, 1, A.n_codes)
        p0 = unconstrained_orthogonal(A, r)
        top = np.sort(p0)[-2:]
        if top[1] - top[0] < 1e-12:
            continue
        checked += 1
        assert vote(A, r) == np.argmax(p0) == np.argmax(decode_orthogonal(A, r))
        assert vote(A, 3.5 * r) == vote(A, r)
    assert checked > 250


def test_one_class_decoders():
    A = CodingMatrix([[1, -1]])
    assert decode_orthogonal(A, [0.3, -0.2]).tolist() == [1.0]
    assert decode_constrained_lsq(A, [0.3, -0.2]).tolist() == [1.0]
    assert vote(A, [0.3, -0.2]) == 0


# ---------------------------------------------------------------- constrained least squares


def test_lsq_examples():
    np.testing.assert_allclose(decode_constrained_lsq([[1], [-1]], [2.0]), [1, 0], atol=1e-12)
    np.testing.assert_allclose(decode_constrained_lsq(one_vs_rest(2), [0.4, -0.4]), [0.7, 0.3], atol=1e-12)


def test_lsq_matches_fast_path_on_dense_orthogonal():
    rng = np.random.default_rng(9)
    for trial in range(300):
        A = greedy_orthogonal_dense(int(rng.integers(4, 11)), trial)
        r = rng.uniform(-1, 1, A.n_codes)
        np.testing.assert_allclose(decode_constrained_lsq(A, r), decode_orthogonal(A, r), atol=1e-8)


FAMILY_CASES = [
    ("one-vs-one", m) for m in (3, 5, 8, 10)
] + [
    ("one-vs-rest", m) for m in (3, 6, 10)
] + [
    ("random", m) for m in (4, 6, 10)
] + [
    ("ortho-dense", m) for m in (4, 7, 10)
] + [
    ("ortho-zeros", m) for m in (4, 6, 8)
] + [
    ("harmonic", m) for m in (4, 6, 8)
]


@pytest.mark.parametrize("family, m", FAMILY_CASES)
def test_lsq_matches_projected_gradient_oracle(family, m):
    rng = np.random.default_rng(m * 31 + len(family))
    for seed in range(8):
        A = make_coding_matrix(family, m, seed=seed)
        strict = strictly_convex(A)
        r = rng.uniform(-1, 1, A.n_codes)
        p, info = decode_constrained_lsq(A, r, return_info=True)
        assert info["converged"]
        assert_simplex(p)
        ref = qp_decode_oracle(A, r)
        assert objective(A, r, p) <= objective(A, r, ref) + 1e-9
        if strict:
            assert np.linalg.norm(p - ref) < 1e-6


@pytest.mark.parametrize("family, m", FAMILY_CASES)
def test_lsq_recovers_consistent_probabilities(family, m):
    rng = np.random.default_rng(m)
    A = make_coding_matrix(family, m, seed=1)
    if not strictly_convex(A):
        pytest.skip("minimizer not unique for this matrix")
    for _ in range(20):
        p_star = rng.dirichlet(np.ones(m))
        if rng.random() < 0.5:
            p_star[rng.integers(m)] = 0.0
            p_star /= p_star.sum()
        r = A.entries.T @ p_star
        np.testing.assert_allclose(decode_constrained_lsq(A, r), p_star, atol=1e-8)


def test_lsq_reports_degenerate_subproblem():
    # two identical rows: the least-squares Hessian is singular on the simplex
    A = CodingMatrix([[1, -1, 1], [1, -1, 1], [-1, 1, 1]])
    p, info = decode_constrained_lsq(A, [0.2, -0.2, 0.5], return_info=True)
    assert_simplex(p)
    assert info["degenerate"]
    ref = qp_decode_oracle(A, [0.2, -0.2, 0.5])
    assert objective(A, [0.2, -0.2, 0.5], p) <= objective(A, [0.2, -0.2, 0.5], ref) + 1e-9


# ---------------------------------------------------------------- one-vs-one


def test_one_vs_one_two_classes():
    np.testing.assert_allclose(decode_one_vs_one(one_vs_one(2), [0.4]), [0.7, 0.3], atol=1e-12)


def test_one_vs_one_recovers_consistent_probabilities():
    A = one_vs_one(3)
    p_star = np.array([0.5, 0.3, 0.2])
    p, raw, clipped = decode_one_vs_one(A, A.entries.T @ p_star, return_raw=True)
    np.testing.assert_allclose(p, p_star, atol=1e-10)
    assert not clipped


def test_one_vs_one_unanimous():
    assert np.argmax(decode_one_vs_one(one_vs_one(3), [1, 1, 1])) == 0


def test_one_vs_one_clips_negative_raw_solution():
    A = one_vs_one(4)
    r = np.array([1, 1, 1, 1, 1, -1.0])
    p, raw, clipped = decode_one_vs_one(A, r, return_raw=True)
    assert clipped and raw.min() < 0
    np.testing.assert_allclose(p, project_simplex_by_sort(raw), atol=1e-12)
    assert_simplex(p)


def test_one_vs_one_raw_solves_sum_constrained_problem():
    rng = np.random.default_rng(10)
    for m in range(2, 9):
        A = one_vs_one(m)
        a = A.entries.astype(float)
        for _ in range(10):
            r = rng.uniform(-1, 1, A.n_codes)
            _, raw, _ = decode_one_vs_one(A, r, return_raw=True)
            # independent check: the minimizer over the affine hull, by null-space parametrization
            basis = null_space(np.ones((1, m)))
            base = np.full(m, 1.0 / m)
            z, *_ = np.linalg.lstsq(a.T @ basis, r - a.T @ base, rcond=None)
            np.testing.assert_allclose(raw, base + basis @ z, atol=1e-10)


def test_one_vs_one_batch():
    rng = np.random.default_rng(11)
    A = one_vs_one(5)
    R = rng.uniform(-1, 1, (50, A.n_codes))
    P = decode_one_vs_one(A, R)
    np.testing.assert_allclose(P, np.array([decode_one_vs_one(A, r) for r in R]), atol=1e-14)
    assert_simplex(P)


def test_one_vs_one_requires_pairwise_matrix():
    with pytest.raises(InvalidCodingMatrix):
        decode_one_vs_one(one_vs_rest(3), [1, 0, 0])


# ---------------------------------------------------------------- dispatch


def test_default_solver():
    assert default_solver(greedy_orthogonal_dense(6)) is SolverKind.ORTHOGONAL_FAST
    assert default_solver(harmonic_matrix(6, 8)) is SolverKind.ORTHOGONAL_FAST
    assert default_solver(one_vs_one(4)) is SolverKind.ONE_VS_ONE_KKT
    assert default_solver(one_vs_rest(5)) is SolverKind.CONSTRAINED_LSQ
    # 2I - J happens to be dense orthogonal for four classes
    assert default_solver(one_vs_rest(4)) is SolverKind.ORTHOGONAL_FAST


def test_check_solver_rejects_mismatch():
    with pytest.raises(NotOrthogonalError):
        check_solver(one_vs_rest(5), "fast")
    with pytest.raises(InvalidCodingMatrix):
        check_solver(one_vs_rest(4), "kkt")
    with pytest.raises(ValueError):
        check_solver(one_vs_rest(4), "newton")
    assert check_solver(one_vs_one(4), "lsq") is SolverKind.CONSTRAINED_LSQ


@pytest.mark.parametrize("family, m", [("ortho-dense", 6), ("one-vs-one", 5), ("ortho-zeros", 6), ("random", 5)])
def test_decode_batch_outputs_on_simplex(family, m):
    rng = np.random.default_rng(12)
    A = make_coding_matrix(family, m, seed=2)
    R = rng.uniform(-1, 1, (40, A.n_codes))
    P = decode_batch(A, R)
    assert P.shape == (40, m)
    assert_simplex(P)
    np.testing.assert_allclose(P[3], decode_batch(A, R[3]), atol=1e-14)
    np.testing.assert_array_equal(decode_batch(A, R, "vote"), vote(A, R))

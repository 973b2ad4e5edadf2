import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from kinematica.matcore import (
    BlockForm,
    Metric,
    as_square,
    block_join,
    block_split,
    bracket,
    dagger,
    mat_exp,
    mat_log_positive,
    op_norm,
)

ENTRIES = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)
SMALL_MATRICES = arrays(np.float64, (3, 3), elements=ENTRIES)


def test_as_square_rejects_bad_input():
    with pytest.raises(ValueError):
        as_square(np.ones((2, 3)))
    with pytest.raises(ValueError):
        as_square(np.ones((1, 1)))
    with pytest.raises(ValueError):
        as_square([[np.nan, 0.0], [0.0, 1.0]])


def test_as_square_copies():
    M = np.eye(2)
    out = as_square(M)
    out[0, 0] = 5.0
    assert M[0, 0] == 1.0


def test_block_split_2x2():
    blocks = block_split([[1.0, 2.0], [3.0, 4.0]])
    assert blocks.A.shape == (1, 1) and blocks.A[0, 0] == 1.0
    assert blocks.b[0] == 2.0
    assert blocks.c[0] == 3.0
    assert blocks.d == 4.0


def test_block_split_boost_shape():
    # one space dimension, column entry 1, row entry 2
    blocks = block_split([[0.0, 1.0], [2.0, 0.0]])
    assert blocks.b[0] == 1.0 and blocks.c[0] == 2.0
    assert blocks.A[0, 0] == 0.0 and blocks.d == 0.0


def test_block_round_trip_is_exact():
    rng = np.random.default_rng(0)
    M = rng.standard_normal((4, 4))
    out = block_join(block_split(M))
    assert np.array_equal(out, M)


def test_block_join_embeds_mixing_entries():
    n = 2
    M = block_join(BlockForm(np.zeros((n, n)), np.array([1.0, 0.0]),
                             np.array([1.0, 0.0]), 0.0))
    assert M[0, 2] == 1.0 and M[2, 0] == 1.0
    assert np.count_nonzero(M) == 2


def test_block_join_rejects_mismatched_vectors():
    with pytest.raises(ValueError):
        block_join(BlockForm(np.zeros((2, 2)), np.zeros(3), np.zeros(2), 0.0))


def test_bracket_with_self_is_zero():
    rng = np.random.default_rng(1)
    X = rng.standard_normal((3, 3))
    assert np.array_equal(bracket(X, X), np.zeros((3, 3)))


def test_bracket_of_elementary_matrices():
    X = np.zeros((3, 3))
    X[0, 1] = 1.0
    Y = np.zeros((3, 3))
    Y[1, 0] = 1.0
    np.testing.assert_array_equal(bracket(X, Y), np.diag([1.0, -1.0, 0.0]))


@settings(max_examples=40, deadline=None)
@given(SMALL_MATRICES, SMALL_MATRICES, SMALL_MATRICES)
def test_bracket_identities(X, Y, Z):
    np.testing.assert_allclose(bracket(X, Y), -bracket(Y, X), atol=1e-12)
    np.testing.assert_allclose(
        bracket(X + Z, Y), bracket(X, Y) + bracket(Z, Y), atol=1e-12)
    jacobi = (bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X))
              + bracket(Z, bracket(X, Y)))
    np.testing.assert_allclose(jacobi, np.zeros((3, 3)), atol=1e-12)


def test_mat_exp_of_zero():
    np.testing.assert_array_equal(mat_exp(np.zeros((3, 3))), np.eye(3))


def test_mat_exp_nilpotent_is_one_plus_generator():
    Z = np.zeros((3, 3))
    Z[0, 2] = 0.7
    Z[1, 2] = -1.3
    np.testing.assert_allclose(mat_exp(Z), np.eye(3) + Z, atol=1e-15, rtol=0)


def test_mat_exp_matches_symmetric_eigen_oracle():
    # independent route: diagonalize a symmetric argument
    rng = np.random.default_rng(2)
    for _ in range(20):
        S = rng.standard_normal((4, 4))
        S = S + S.T
        S *= 10.0 / op_norm(S)
        w, Q = np.linalg.eigh(S)
        oracle = (Q * np.exp(w)) @ Q.T
        got = mat_exp(S)
        assert op_norm(got - oracle) <= 1e-12 * op_norm(oracle)


def test_mat_exp_inverse_pairing():
    rng = np.random.default_rng(3)
    for _ in range(20):
        Z = rng.standard_normal((4, 4))
        Z *= rng.uniform(0.0, 5.0) / op_norm(Z)
        resid = op_norm(mat_exp(Z) @ mat_exp(-Z) - np.eye(4))
        assert resid <= 1e-11


def test_mat_exp_periodic_boost_wraps_to_reflection():
    # sigma = -1 boost of norm pi along the first axis
    Z = np.zeros((3, 3))
    Z[0, 2] = np.pi
    Z[2, 0] = -np.pi
    np.testing.assert_allclose(mat_exp(Z), np.diag([-1.0, 1.0, -1.0]), atol=1e-12)


def test_metric_gram_matrices():
    np.testing.assert_array_equal(Metric(2.0, +1, 2).gram, np.diag([-2.0, -2.0, 1.0]))
    np.testing.assert_array_equal(Metric(2.0, -1, 2).gram, np.diag([2.0, 2.0, 1.0]))
    with pytest.raises(ValueError):
        Metric(0.0, +1, 2)
    with pytest.raises(ValueError):
        Metric(np.inf, +1, 2)
    with pytest.raises(ValueError):
        Metric(1.0, 2, 2)


def test_dagger_negates_rotation_generators():
    Z = np.zeros((4, 4))
    Z[0, 1], Z[1, 0] = 1.0, -1.0
    Z[1, 2], Z[2, 1] = -0.5, 0.5
    for sign in (+1, -1):
        np.testing.assert_allclose(dagger(Z, Metric(1.0, sign, 3)), -Z, atol=1e-15)


def test_dagger_moves_column_to_negated_row():
    Z = np.zeros((3, 3))
    Z[0, 2] = 1.0  # column vector e1
    out = dagger(Z, Metric(1.0, +1, 2))
    expected = np.zeros((3, 3))
    expected[2, 0] = -1.0
    np.testing.assert_allclose(out, expected, atol=1e-15)


def test_dagger_matches_explicit_gram_conjugation():
    rng = np.random.default_rng(4)
    for sign in (+1, -1):
        m = Metric(1.7, sign, 3)
        g = m.gram
        for _ in range(5):
            Z = rng.standard_normal((4, 4))
            oracle = np.linalg.inv(g) @ Z.T @ g
            np.testing.assert_allclose(dagger(Z, m), oracle, atol=1e-13)


@settings(max_examples=30, deadline=None)
@given(SMALL_MATRICES, st.sampled_from([0.5, 1.0, -2.0]), st.sampled_from([1, -1]))
def test_dagger_involution(Z, sigma, sign):
    m = Metric(sigma, sign, 2)
    np.testing.assert_allclose(dagger(dagger(Z, m), m), Z, atol=1e-14)


def test_dagger_reverses_products():
    rng = np.random.default_rng(5)
    m = Metric(0.8, -1, 2)
    for _ in range(10):
        X = rng.standard_normal((3, 3))
        Y = rng.standard_normal((3, 3))
        lhs = dagger(X @ Y, m)
        rhs = dagger(Y, m) @ dagger(X, m)
        assert op_norm(lhs - rhs) <= 1e-12 * (1.0 + op_norm(lhs))


def test_log_of_identity_is_zero():
    out = mat_log_positive(np.eye(3), np.eye(3))
    np.testing.assert_allclose(out, np.zeros((3, 3)), atol=1e-14)


def test_log_of_diagonal():
    P = np.diag([np.e**2, 1.0, 1.0])
    np.testing.assert_allclose(mat_log_positive(P, np.eye(3)),
                               np.diag([2.0, 0.0, 0.0]), atol=1e-13)


def _self_adjoint_for(gram, rng, norm_cap):
    """Random gram-self-adjoint matrix with spectral norm below norm_cap."""
    C = np.linalg.cholesky(gram).T
    S = rng.standard_normal(gram.shape)
    S = S + S.T
    S *= rng.uniform(0.1, norm_cap) / op_norm(S)
    return np.linalg.solve(C, S) @ C


def test_exp_log_round_trip():
    rng = np.random.default_rng(6)
    gram = np.diag([0.5, 0.5, 0.5, 1.0])  # companion form for sigma = 0.5
    for _ in range(20):
        Z = _self_adjoint_for(gram, rng, 3.0)
        P = mat_exp(Z)
        np.testing.assert_allclose(mat_log_positive(P, gram), Z, atol=1e-9)


def test_log_exp_order_too():
    rng = np.random.default_rng(7)
    gram = np.diag([2.0, 2.0, 1.0])
    for _ in range(10):
        Z = _self_adjoint_for(gram, rng, 2.0)
        P = mat_exp(Z)
        np.testing.assert_allclose(mat_exp(mat_log_positive(P, gram)), P,
                                   atol=1e-9 * (1.0 + op_norm(P)))


def test_log_rejects_non_self_adjoint():
    P = np.eye(3)
    P[0, 1] = 0.5
    with pytest.raises(ValueError, match="self-adjoint"):
        mat_log_positive(P, np.eye(3))


def test_log_rejects_nonpositive_spectrum():
    with pytest.raises(ValueError, match="not positive"):
        mat_log_positive(np.diag([-1.0, 1.0, 1.0]), np.eye(3))


def test_log_rejects_indefinite_gram():
    with pytest.raises(ValueError, match="positive definite"):
        mat_log_positive(np.eye(3), np.diag([-1.0, 1.0, 1.0]))

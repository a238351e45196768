import numpy as np
import pytest

from services.linalg import hermitian_eigenvalues, hermitian_eigh, svd_3x3


def _random_hermitian(rng, size):
    a = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    return (a + a.conj().T) / 2


@pytest.mark.parametrize("size", [2, 4])
def test_hermitian_eigenvalues_match_numpy(rng, size):
    for _ in range(20):
        matrix = _random_hermitian(rng, size)
        np.testing.assert_allclose(
            hermitian_eigenvalues(matrix), np.linalg.eigvalsh(matrix), atol=1e-12
        )


def test_hermitian_eigh_reconstructs_matrix(rng):
    matrix = _random_hermitian(rng, 4)
    values, vectors = hermitian_eigh(matrix)
    assert np.all(np.diff(values) >= 0)
    np.testing.assert_allclose(vectors @ np.diag(values) @ vectors.conj().T, matrix, atol=1e-12)
    np.testing.assert_allclose(vectors.conj().T @ vectors, np.eye(4), atol=1e-12)


def test_maximally_mixed_eigenvalues():
    np.testing.assert_allclose(hermitian_eigenvalues(np.eye(4) / 4), [0.25] * 4, atol=1e-15)


def test_svd_of_diagonal_werner_matrix():
    svd = svd_3x3(np.diag([0.3, 0.3, -0.3]))
    np.testing.assert_allclose(svd.values, [0.3, 0.3, 0.3], atol=1e-15)


def test_svd_of_outer_product_is_rank_one():
    w = np.array([2.0, 0.0, 0.0])
    r = np.array([0.0, 0.9, 1.2])
    svd = svd_3x3(np.outer(w, r))
    np.testing.assert_allclose(svd.values, [3.0, 0.0, 0.0], atol=1e-12)


def test_svd_properties_on_random_matrices(rng):
    for _ in range(200):
        matrix = rng.uniform(-1.0, 1.0, (3, 3))
        svd = svd_3x3(matrix)
        assert svd.values[0] >= svd.values[1] >= svd.values[2] >= 0.0
        np.testing.assert_allclose(svd.left.T @ svd.left, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(svd.right.T @ svd.right, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(svd.reconstruct(), matrix, atol=1e-12)
        np.testing.assert_allclose(
            svd.values, np.linalg.svd(matrix, compute_uv=False), atol=1e-12
        )
        for i in range(3):
            assert svd.left[:, i] @ matrix @ svd.right[:, i] == pytest.approx(
                svd.values[i], abs=1e-12
            )


def test_svd_of_zero_matrix():
    svd = svd_3x3(np.zeros((3, 3)))
    np.testing.assert_array_equal(svd.values, np.zeros(3))
    np.testing.assert_allclose(svd.left.T @ svd.left, np.eye(3), atol=1e-12)


def test_svd_rank_one_near_axis_keeps_left_basis_orthonormal():
    w = np.array([1.0, 3e-8, 2e-8])
    w /= np.linalg.norm(w)
    svd = svd_3x3(0.8 * np.outer(w, [0.0, 0.0, 1.0]))
    np.testing.assert_allclose(svd.values, [0.8, 0.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(svd.left.T @ svd.left, np.eye(3), atol=1e-12)
    np.testing.assert_allclose(svd.right.T @ svd.right, np.eye(3), atol=1e-12)


def test_svd_rank_deficient_bases_are_orthonormal(rng):
    for index in range(500):
        w, r = rng.uniform(-1.0, 1.0, (2, 3))
        if index % 2:
            w[rng.integers(3)] *= 1e-9
        matrix = np.outer(w, r) / max(np.max(np.abs(np.outer(w, r))), 1.0)
        if index % 3 == 0:
            second = np.outer(*rng.uniform(-1.0, 1.0, (2, 3)))
            matrix = matrix + 0.1 * second / np.max(np.abs(second))
        svd = svd_3x3(matrix)
        np.testing.assert_allclose(svd.left.T @ svd.left, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(svd.reconstruct(), matrix, atol=1e-12)

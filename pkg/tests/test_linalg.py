import numpy as np
import pytest
from hypothesis import given, strategies as st

from daemonic.channels import amplitude_damping
from daemonic.errors import DimensionMismatch, NonHermitianInput
from daemonic.linalg import dagger, hermitian_eigendecompose, kron, matmul

from conftest import random_hermitian

I2 = np.eye(2)


def test_kron_identity_and_projector():
    assert np.array_equal(kron(I2, I2), np.eye(4))
    p = np.diag([1.0, 0.0])
    assert np.array_equal(kron(p, p), np.diag([1.0, 0, 0, 0]))


def test_kron_associative_on_integer_matrices(rng):
    a, b, c = (rng.integers(-3, 4, size=(2, 2)) for _ in range(3))
    assert np.array_equal(kron(kron(a, b), c), kron(a, kron(b, c)))


def test_kron_rejects_non_square():
    with pytest.raises(DimensionMismatch):
        kron(np.ones((2, 3)), I2)


def test_dagger():
    assert np.array_equal(dagger(I2), I2)
    k1 = amplitude_damping(0.3).operators[1]
    d = dagger(k1)
    assert d[1, 0] == pytest.approx(np.sqrt(0.3))
    assert np.count_nonzero(d) == 1


def test_dagger_involution(rng):
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    assert np.array_equal(dagger(dagger(a)), a)


def test_matmul_identities(rng):
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    assert np.allclose(matmul(I2, a), a, atol=1e-12)
    assert np.allclose(dagger(matmul(a, b)), matmul(dagger(b), dagger(a)), atol=1e-12)
    k0, k1 = amplitude_damping(0.5).operators
    assert np.allclose(matmul(dagger(k0), k0) + matmul(dagger(k1), k1), I2, atol=1e-12)


def test_matmul_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        matmul(np.eye(2), np.eye(4))


def test_eigen_diagonal_and_pauli_x():
    es = hermitian_eigendecompose(np.diag([2.0, 1.0]))
    assert np.allclose(es.eigenvalues, [1.0, 2.0])
    es = hermitian_eigendecompose(np.array([[0, 1], [1, 0]]))
    assert np.allclose(es.eigenvalues, [-1.0, 1.0], atol=1e-14)


def test_eigen_rejects_non_hermitian():
    with pytest.raises(NonHermitianInput):
        hermitian_eigendecompose(np.array([[0, 1], [0, 0]]))


@pytest.mark.parametrize("dim", [2, 4])
def test_eigen_random_seeded(dim):
    rng = np.random.default_rng(7)
    for _ in range(1000):
        h = random_hermitian(rng, dim)
        es = hermitian_eigendecompose(h)
        v = es.eigenvectors
        assert np.max(np.abs(es.reconstruct() - h)) < 1e-10
        assert np.max(np.abs(dagger(v) @ v - np.eye(dim))) < 1e-10
        assert np.all(np.diff(es.eigenvalues) >= 0)
        assert abs(es.eigenvalues.sum() - np.trace(h).real) < 1e-10


def test_eigen_matches_lapack(rng):
    # LAPACK is an independent reference for the spectrum
    for dim in (2, 4):
        for _ in range(50):
            h = random_hermitian(rng, dim)
            assert np.allclose(hermitian_eigendecompose(h).eigenvalues, np.linalg.eigvalsh(h), atol=1e-12)


def test_eigen_degenerate_spectrum():
    u = np.linalg.qr(np.random.default_rng(2).normal(size=(4, 4)) + 1j)[0]
    h = u @ np.diag([0.5, 0.5, 0.0, 0.0]) @ dagger(u)
    es = hermitian_eigendecompose(h)
    assert np.allclose(es.eigenvalues, [0, 0, 0.5, 0.5], atol=1e-12)
    assert np.max(np.abs(es.reconstruct() - h)) < 1e-10


@given(st.lists(st.floats(-5, 5), min_size=4, max_size=4), st.floats(-3, 3), st.floats(-3, 3))
def test_eigen_property_real_sorted_trace(diag, re, im):
    h = np.diag(diag).astype(complex)
    h[0, 3] = complex(re, im)
    h[3, 0] = complex(re, -im)
    h[1, 2] = h[2, 1] = re
    es = hermitian_eigendecompose(h)
    assert np.all(np.diff(es.eigenvalues) >= 0)
    assert abs(es.eigenvalues.sum() - np.trace(h).real) < 1e-10
    assert np.max(np.abs(es.reconstruct() - h)) < 1e-10


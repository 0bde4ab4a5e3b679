import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import bell_phi_plus, random_hermitian, random_state
from gmewit.hermitian import (
    HermiticityError,
    InvalidStateError,
    check_state,
    herm_eig,
    kron,
    min_eigenvalue,
    positive_part,
    trace_product,
)
from gmewit.multipartite import partial_transpose


def test_diagonal_input():
    values, vectors = herm_eig(np.diag([3.0, 1.0]))
    np.testing.assert_allclose(values, [1, 3])
    np.testing.assert_allclose(np.abs(vectors), [[0, 1], [1, 0]])


def test_identity():
    values, vectors = herm_eig(np.eye(4))
    np.testing.assert_allclose(values, np.ones(4))
    np.testing.assert_allclose(vectors.conj().T @ vectors, np.eye(4), atol=1e-14)


def test_pauli_x():
    values, vectors = herm_eig([[0, 1], [1, 0]])
    np.testing.assert_allclose(values, [-1, 1], atol=1e-15)
    # eigenvectors (1, -1)/sqrt2 and (1, 1)/sqrt2 up to phase
    assert abs(abs(np.vdot(vectors[:, 0], [1, -1])) / np.sqrt(2) - 1) < 1e-14
    assert abs(abs(np.vdot(vectors[:, 1], [1, 1])) / np.sqrt(2) - 1) < 1e-14


def test_complex_two_by_two():
    A = np.array([[1.0, 2 - 1j], [2 + 1j, -0.5]])
    values, _ = herm_eig(A)
    np.testing.assert_allclose(values, np.linalg.eigvalsh(A), atol=1e-14)


def test_rejects_non_hermitian():
    with pytest.raises(HermiticityError, match=r"A\[0,1\]"):
        herm_eig([[0, 1], [0, 0]])


def test_round_off_asymmetry_is_tolerated():
    A = np.array([[1.0, 0.5], [0.5 + 1e-14, 2.0]])
    herm_eig(A)


def test_reconstruction_and_orthonormality_random(rng):
    worst_rec = worst_orth = worst_val = 0.0
    for _ in range(1000):
        n = int(rng.integers(2, 28))
        A = random_hermitian(rng, n, scale=float(rng.choice([1e-3, 1.0, 50.0])))
        values, V = herm_eig(A)
        assert np.all(np.diff(values) >= 0)
        worst_rec = max(worst_rec, np.linalg.norm(A - (V * values) @ V.conj().T) / max(1.0, np.linalg.norm(A)))
        worst_orth = max(worst_orth, np.linalg.norm(V.conj().T @ V - np.eye(n)))
        # independent oracle: LAPACK
        ref = np.linalg.eigvalsh(A)
        worst_val = max(worst_val, np.max(np.abs(values - ref)) / max(1.0, np.max(np.abs(ref))))
    assert worst_rec <= 1e-10
    assert worst_orth <= 1e-10
    assert worst_val <= 1e-10


def test_degenerate_spectrum(rng):
    Q, _ = np.linalg.qr(rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
    A = Q @ np.diag([1, 1, 1, -2, -2, 5]) @ Q.conj().T
    values, V = herm_eig(A)
    np.testing.assert_allclose(values, [-2, -2, 1, 1, 1, 5], atol=1e-12)
    assert np.linalg.norm(A - (V * values) @ V.conj().T) < 1e-12


def test_positive_part_examples():
    np.testing.assert_allclose(positive_part(np.diag([1.0, -2.0])), np.diag([1.0, 0.0]), atol=1e-15)
    np.testing.assert_allclose(positive_part([[0, 1], [1, 0]]), 0.5 * np.ones((2, 2)), atol=1e-15)


def test_positive_part_of_psd_is_identity(rng):
    for _ in range(20):
        rho = random_state(rng, int(rng.integers(2, 10)))
        np.testing.assert_allclose(positive_part(rho), rho, atol=1e-10)


def test_positive_part_dominance_and_idempotence(rng):
    for _ in range(200):
        n = int(rng.integers(2, 28))
        A = random_hermitian(rng, n)
        Ap = positive_part(A)
        assert min_eigenvalue(Ap) >= -1e-10
        assert min_eigenvalue(Ap - A) >= -1e-10
        rho = random_state(rng, n)
        assert trace_product(rho, Ap).real >= trace_product(rho, A).real - 1e-10
        assert np.max(np.abs(positive_part(Ap) - Ap)) <= 1e-10


def test_min_eigenvalue_examples():
    assert min_eigenvalue(np.eye(3)) == pytest.approx(1.0)
    assert min_eigenvalue(np.diag([5.0, -3.0, 0.0])) == pytest.approx(-3.0)


def test_bell_partial_transpose_spectrum():
    pt = partial_transpose(bell_phi_plus(), (2, 2), [0])
    np.testing.assert_allclose(herm_eig(pt).values, [-0.5, 0.5, 0.5, 0.5], atol=1e-14)
    assert min_eigenvalue(pt) == pytest.approx(-0.5, abs=1e-14)


def test_kron_examples():
    np.testing.assert_array_equal(kron(np.eye(2), np.eye(3)), np.eye(6))
    np.testing.assert_array_equal(kron(np.diag([1, 0]), np.diag([0, 1])), np.diag([0, 1, 0, 0]))
    X = np.array([[0, 1], [1, 0]])
    np.testing.assert_array_equal(kron(X, X) @ np.array([1, 0, 0, 0]), [0, 0, 0, 1])


def test_trace_product_examples(rng):
    assert trace_product(np.eye(5), np.eye(5)) == 5
    e0, e1 = np.diag([1, 0]), np.diag([0, 1])
    assert trace_product(e0, e1) == 0
    rho = random_state(rng, 7)
    assert trace_product(rho, np.eye(7)) == pytest.approx(1.0)
    A, B = random_hermitian(rng, 5), rng.normal(size=(5, 5))
    assert trace_product(A, B) == pytest.approx(np.trace(A @ B))
    with pytest.raises(ValueError):
        trace_product(np.eye(2), np.eye(3))


def test_check_state_reports_diagnostics():
    with pytest.raises(InvalidStateError, match="trace"):
        check_state(np.eye(2))
    with pytest.raises(InvalidStateError, match="min eigenvalue"):
        check_state(np.diag([1.5, -0.5]))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-10, 10, allow_nan=False), min_size=1, max_size=8))
def test_diagonal_spectra_are_sorted_inputs(diag):
    values, _ = herm_eig(np.diag(diag))
    np.testing.assert_allclose(values, np.sort(diag), atol=1e-12)

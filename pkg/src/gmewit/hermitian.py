"""Dense Hermitian linear algebra.

Matrices are plain complex ``numpy.ndarray`` objects. The eigensolver is a
cyclic Jacobi method using a round-robin (parallel) ordering so that each
round of disjoint rotations is applied as a single unitary similarity.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

import numpy as np

HERMITIAN_TOL = 1e-12
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


class HermiticityError(ValueError):
    """Raised when a matrix expected to be Hermitian is not."""


class InvalidStateError(ValueError):
    """Raised when a matrix is not a density matrix (unit trace, PSD)."""


class EigenDecomposition(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray


def as_square(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    return A


def hermiticity_violation(A: np.ndarray) -> tuple[float, tuple[int, int]]:
    """Largest |A_ij - conj(A_ji)| and the index pair where it occurs."""
    diff = np.abs(A - A.conj().T)
    idx = np.unravel_index(int(np.argmax(diff)), diff.shape)
    return float(diff[idx]), (int(idx[0]), int(idx[1]))


def check_hermitian(A, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate Hermiticity and return the symmetrized matrix (A + A^H)/2.

    The tolerance is relative: ``tol * max(1, max|A_ij|)``.
    """
    A = as_square(A)
    if A.size == 0:
        raise ValueError("empty matrix")
    dev, (i, j) = hermiticity_violation(A)
    bound = tol * max(1.0, float(np.max(np.abs(A))))
    if dev > bound:
        raise HermiticityError(
            f"matrix is not Hermitian: |A[{i},{j}] - conj(A[{j},{i}])| = {dev:.3e} "
            f"exceeds {bound:.3e} (A[{i},{j}] = {A[i, j]}, A[{j},{i}] = {A[j, i]})"
        )
    return 0.5 * (A + A.conj().T)


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    # Circle-method tournament on an even number of slots; slot n is a bye
    # when n is odd. Every unordered pair meets exactly once per sweep.
    m = n + (n % 2)
    slots = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for k in range(m // 2):
            a, b = slots[k], slots[m - 1 - k]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        slots = [slots[0], slots[-1]] + slots[1:-1]
    return tuple(rounds)


def _off_norm(A: np.ndarray) -> float:
    return float(np.linalg.norm(A - np.diag(np.diag(A))))


def herm_eig(A, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    A : array_like
        Hermitian matrix. Round-off asymmetry is removed before iterating;
        a genuine violation raises :class:`HermiticityError`.
    tol : float
        Stop once the off-diagonal Frobenius norm drops below
        ``tol * ||A||_F``.
    max_sweeps : int
        Upper bound on full sweeps over all index pairs.

    Returns
    -------
    EigenDecomposition
        Eigenvalues in ascending order and the matching orthonormal
        eigenvectors as columns.
    """
    A = check_hermitian(A).copy()
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    scale = float(np.linalg.norm(A))
    if n > 1 and scale > 0.0:
        threshold = tol * scale
        rounds = _round_robin(n)
        last = np.inf
        for _ in range(max_sweeps):
            off = _off_norm(A)
            if off <= threshold or off >= last:
                break
            last = off
            for p, q in rounds:
                apq = A[p, q]
                r = np.abs(apq)
                active = r > 1e-300 * scale
                if not active.any():
                    continue
                p, q, apq, r = p[active], q[active], apq[active], r[active]
                phase = apq / r
                theta = (A[q, q].real - A[p, p].real) / (2.0 * r)
                big = np.abs(theta) > 1e150
                safe = np.where(big, 1.0, theta)
                t = np.where(
                    big,
                    0.5 / np.where(big, theta, 1.0),
                    np.copysign(1.0, safe) / (np.abs(safe) + np.sqrt(safe * safe + 1.0)),
                )
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                G = np.eye(n, dtype=complex)
                G[p, p] = c
                G[p, q] = s
                G[q, p] = -s * phase.conj()
                G[q, q] = c * phase.conj()
                A = G.conj().T @ A @ G
                V = V @ G
            A = 0.5 * (A + A.conj().T)
    values = np.diag(A).real.copy()
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(values[order], V[:, order])


def eigvalsh(A) -> np.ndarray:
    return herm_eig(A).values


def min_eigenvalue(A) -> float:
    """Smallest eigenvalue of a Hermitian matrix."""
    return float(herm_eig(A).values[0])


def positive_part(A) -> np.ndarray:
    """Spectral truncation of A to its strictly positive eigenvalues.

    Eigenvalues at or below ``1e-12 * max(1, |lambda_max|)`` are dropped, so
    numerically-zero modes contribute nothing.
    """
    values, vectors = herm_eig(A)
    eps = 1e-12 * max(1.0, abs(float(values[-1])))
    keep = values > eps
    v = vectors[:, keep]
    out = (v * values[keep]) @ v.conj().T
    return 0.5 * (out + out.conj().T)


def kron(A, B) -> np.ndarray:
    return np.kron(np.asarray(A, dtype=complex), np.asarray(B, dtype=complex))


def trace_product(A, B) -> complex:
    """Tr[AB] as sum_ij A_ij B_ji, without forming the product."""
    A = as_square(A)
    B = as_square(B)
    if A.shape != B.shape:
        raise ValueError(f"dimension mismatch: {A.shape} vs {B.shape}")
    return complex(np.einsum("ij,ji->", A, B))


def projector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex).ravel()
    return np.outer(v, v.conj())


def check_state(rho, tol: float = 1e-10) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace and PSD within ``tol``."""
    try:
        rho = check_hermitian(rho)
    except HermiticityError as exc:
        raise InvalidStateError(str(exc)) from exc
    tr = float(np.trace(rho).real)
    lo = min_eigenvalue(rho)
    if abs(tr - 1.0) > tol or lo < -tol:
        raise InvalidStateError(
            f"not a density matrix: trace = {tr:.12g}, min eigenvalue = {lo:.3e} (tolerance {tol:g})"
        )
    return rho

"""Small dense complex linear algebra for 2x2 and 4x4 operators.

Matrices are plain ``numpy`` complex arrays. The Hermitian eigensolver is a
cyclic complex Jacobi iteration; at these sizes it converges in a handful of
sweeps and is fully deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NonHermitianInput

HERMITIAN_TOL = 1e-10
OFFDIAG_TOL = 1e-14
MAX_SWEEPS = 64
TINY = 1e-290


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a square complex128 array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    return m


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def dagger(a) -> np.ndarray:
    return np.conj(np.asarray(a, dtype=complex)).T


def matmul(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def hermiticity_residual(a) -> float:
    a = np.asarray(a, dtype=complex)
    return float(np.max(np.abs(a - dagger(a)))) if a.size else 0.0


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues (ascending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return v @ np.diag(self.eigenvalues) @ dagger(v)


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Zero ``a[p, q]`` in place with a unitary acting on rows/cols p, q."""
    apq = a[p, q]
    mag = abs(apq)
    if mag < TINY:
        a[p, q] = a[q, p] = 0.0
        return
    phase = apq / mag
    app = a[p, p].real
    aqq = a[q, q].real
    # After rephasing column q by conj(phase) the pivot is the real number mag;
    # then this is the textbook real symmetric rotation.
    tau = (aqq - app) / (2.0 * mag)
    if abs(tau) > 1e150:
        t = 0.5 / tau
    else:
        t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    # U restricted to (p, q): [[c, s*phase], [-s*conj(phase), c]]
    u_pp, u_pq = c, s * phase
    u_qp, u_qq = -s * np.conj(phase), c

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = col_p * u_pp + col_q * u_qp
    a[:, q] = col_p * u_pq + col_q * u_qq
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = np.conj(u_pp) * row_p + np.conj(u_qp) * row_q
    a[q, :] = np.conj(u_pq) * row_p + np.conj(u_qq) * row_q
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real

    vp = v[:, p].copy()
    vq = v[:, q].copy()
    v[:, p] = vp * u_pp + vq * u_qp
    v[:, q] = vp * u_pq + vq * u_qq


def hermitian_eigendecompose(h, tol: float = HERMITIAN_TOL) -> EigenSystem:
    """Diagonalize a Hermitian matrix with cyclic Jacobi sweeps.

    Raises NonHermitianInput when ``max|h - h^dagger| > tol``. Sweeps stop once
    the off-diagonal Frobenius mass falls below ``1e-14`` (scaled by the
    matrix norm when that exceeds one). Ties between equal eigenvalues keep
    the order in which the sweep left them (stable sort).
    """
    m = as_matrix(h)
    if hermiticity_residual(m) > tol:
        raise NonHermitianInput(f"Hermiticity residual {hermiticity_residual(m):.3e} exceeds {tol:g}")
    a = 0.5 * (m + dagger(m))
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    threshold = OFFDIAG_TOL * max(1.0, float(np.linalg.norm(a)))
    for _ in range(MAX_SWEEPS):
        if _offdiag_norm(a) < threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, v, p, q)
    else:  # pragma: no cover - never observed for n <= 4
        raise RuntimeError("Jacobi iteration did not converge")
    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return EigenSystem(eigenvalues=w[order], eigenvectors=v[:, order])


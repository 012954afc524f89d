"""Density matrices for a system qubit and its ancilla.

Basis convention, used everywhere: index 0 is the excited level ``|e>`` and
index 1 the ground level ``|g>``. A two-qubit index is
``2 * system_index + ancilla_index``, so the joint basis order is
``ee, eg, ge, gg`` with the system written first.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import DimensionMismatch, InvalidProbabilityTable, InvalidState
from .linalg import dagger, hermitian_eigendecompose, hermiticity_residual

STATE_TOL = 1e-10
PROB_TOL = 1e-12

EXCITED = 0
GROUND = 1
LEVELS = {"e": EXCITED, "g": GROUND}

SINGLE = "single"
BIPARTITE = "system⊗ancilla"


def ket(label: str) -> np.ndarray:
    """Computational basis ket for a label such as ``"e"`` or ``"eg"``."""
    vec = np.ones(1, dtype=complex)
    for ch in label:
        unit = np.zeros(2, dtype=complex)
        unit[LEVELS[ch]] = 1.0
        vec = np.kron(vec, unit)
    return vec


def projector(label: str) -> np.ndarray:
    k = ket(label)
    return np.outer(k, k.conj())


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated, read-only density matrix of dimension 2 or 4."""

    matrix: np.ndarray
    layout: str = SINGLE

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def is_bipartite(self) -> bool:
        return self.layout == BIPARTITE

    def diagonal(self) -> np.ndarray:
        return np.real(np.diag(self.matrix)).copy()

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def make_density(m, layout: str | None = None, tol: float = STATE_TOL, clip: bool = False) -> DensityMatrix:
    """Validate ``m`` and wrap it as a :class:`DensityMatrix`.

    Checks Hermiticity, unit trace and positivity at ``tol``. With
    ``clip=True`` eigenvalues in ``[-tol, 0)`` are set to zero (used for
    states derived by computation); anything more negative is still rejected.
    """
    arr = np.array(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] not in (2, 4):
        raise InvalidState("shape", f"expected 2x2 or 4x4, got {arr.shape}")
    if layout is None:
        layout = SINGLE if arr.shape[0] == 2 else BIPARTITE
    if (layout == BIPARTITE) != (arr.shape[0] == 4):
        raise InvalidState("shape", f"layout {layout!r} does not fit dimension {arr.shape[0]}")
    herm = hermiticity_residual(arr)
    if herm > tol:
        raise InvalidState("hermiticity", f"residual {herm:.3e}")
    arr = 0.5 * (arr + dagger(arr))
    tr = float(np.real(np.trace(arr)))
    if abs(tr - 1.0) > tol:
        raise InvalidState("trace", f"trace {tr!r}")
    eig = hermitian_eigendecompose(arr)
    lowest = float(eig.eigenvalues[0])
    if lowest < -tol:
        raise InvalidState("positivity", f"smallest eigenvalue {lowest:.3e}")
    if clip and lowest < 0.0:
        w = np.clip(eig.eigenvalues, 0.0, None)
        v = eig.eigenvectors
        arr = v @ np.diag(w) @ dagger(v)
    arr.setflags(write=False)
    return DensityMatrix(arr, layout)


def classically_correlated(p: Mapping[str, float]) -> DensityMatrix:
    """Diagonal two-qubit state ``sum p_ij |ij><ij|``.

    ``p`` maps two-letter labels (``"ee"``, ``"eg"``, ``"ge"``, ``"gg"``) to
    probabilities; missing labels are zero.
    """
    weights = np.zeros(4)
    for label, value in p.items():
        if len(label) != 2 or any(ch not in LEVELS for ch in label):
            raise InvalidProbabilityTable(f"bad outcome label {label!r}")
        if value < 0:
            raise InvalidProbabilityTable(f"negative probability for {label!r}: {value}")
        weights[2 * LEVELS[label[0]] + LEVELS[label[1]]] += value
    if abs(weights.sum() - 1.0) > PROB_TOL:
        raise InvalidProbabilityTable(f"probabilities sum to {weights.sum()!r}")
    return make_density(np.diag(weights).astype(complex), BIPARTITE)


def initial_state() -> DensityMatrix:
    """Perfectly correlated start state ``(|ee><ee| + |gg><gg|) / 2``."""
    return classically_correlated({"ee": 0.5, "gg": 0.5})


def _as_bipartite(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        if not rho.is_bipartite:
            raise DimensionMismatch("expected a system⊗ancilla state")
        return rho.matrix
    arr = np.asarray(rho, dtype=complex)
    if arr.shape != (4, 4):
        raise DimensionMismatch(f"expected a 4x4 state, got {arr.shape}")
    return arr


def partial_trace_ancilla_matrix(rho) -> np.ndarray:
    """Unvalidated ``Tr_A`` of a 4x4 array (also accepts unnormalized operators)."""
    arr = _as_bipartite(rho)
    return np.einsum("iaja->ij", arr.reshape(2, 2, 2, 2))


def partial_trace_system_matrix(rho) -> np.ndarray:
    arr = _as_bipartite(rho)
    return np.einsum("aiaj->ij", arr.reshape(2, 2, 2, 2))


def partial_trace_ancilla(rho) -> DensityMatrix:
    return make_density(partial_trace_ancilla_matrix(rho), SINGLE, clip=True)


def tensor(rho_s: DensityMatrix, rho_a: DensityMatrix) -> DensityMatrix:
    return make_density(np.kron(rho_s.matrix, rho_a.matrix), BIPARTITE)


def is_diagonal_in_computational_product_basis(rho, tol: float = 1e-12) -> bool:
    """True iff every off-diagonal entry of ``rho`` is smaller than ``tol``.

    This only inspects the ``e/g`` product basis; a state can be diagonal in
    some other product basis and still fail this test.
    """
    arr = np.asarray(rho, dtype=complex)
    off = arr - np.diag(np.diag(arr))
    return bool(np.all(np.abs(off) < tol))


def random_density(rng: np.random.Generator, dim: int = 4, rank: int | None = None) -> DensityMatrix:
    """Random state from a Ginibre matrix ``G G^dagger / Tr``."""
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = g @ dagger(g)
    m /= np.trace(m).real
    return make_density(m, BIPARTITE if dim == 4 else SINGLE, clip=True)

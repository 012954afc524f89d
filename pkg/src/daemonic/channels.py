"""Kraus channels: amplitude damping, local action, and the two-use memory channel."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotCPTP, ParameterOutOfRange
from .linalg import as_matrix, dagger
from .states import BIPARTITE, SINGLE, DensityMatrix, make_density

CPTP_TOL = 1e-10


def _check_unit_interval(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ParameterOutOfRange(f"{name} must lie in [0, 1], got {value!r}")
    return value


def completeness_residual(operators) -> float:
    """``max|sum K^dagger K - I|`` for a list of Kraus operators."""
    ops = [as_matrix(k) for k in operators]
    d = ops[0].shape[0]
    total = sum(dagger(k) @ k for k in ops)
    return float(np.max(np.abs(total - np.eye(d))))


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """A completeness-checked list of Kraus operators of common dimension."""

    operators: tuple
    input_dim: int

    @classmethod
    def from_operators(cls, operators, tol: float = CPTP_TOL, validate: bool = True) -> "KrausChannel":
        ops = [as_matrix(k).copy() for k in operators]
        if not ops:
            raise DimensionMismatch("a channel needs at least one Kraus operator")
        d = ops[0].shape[0]
        if any(k.shape != (d, d) for k in ops):
            raise DimensionMismatch("Kraus operators must share one square shape")
        if validate:
            res = completeness_residual(ops)
            if res > tol:
                raise NotCPTP(f"completeness residual {res:.3e} exceeds {tol:g}")
        for k in ops:
            k.setflags(write=False)
        return cls(tuple(ops), d)

    def completeness_residual(self) -> float:
        return completeness_residual(self.operators)

    def apply_matrix(self, rho) -> np.ndarray:
        arr = np.asarray(rho, dtype=complex)
        if arr.shape != (self.input_dim, self.input_dim):
            raise DimensionMismatch(f"channel acts on dim {self.input_dim}, state has shape {arr.shape}")
        return sum(k @ arr @ dagger(k) for k in self.operators)

    def scaled(self, weight: float) -> list[np.ndarray]:
        """Operators multiplied by ``sqrt(weight)``, for building convex mixtures."""
        return [np.sqrt(weight) * k for k in self.operators]


def identity_channel(d: int = 2) -> KrausChannel:
    return KrausChannel.from_operators([np.eye(d)])


def amplitude_damping(gamma: float) -> KrausChannel:
    """Amplitude damping with Kraus pair ``K0 = diag(1, sqrt(1-g))`` and ``K1 = sqrt(g)|e><g|``.

    In the e-first basis K1 moves ground population up to ``|e>``, so full
    damping (``gamma = 1``) sends every input to ``|e><e|``.
    """
    g = _check_unit_interval("gamma", gamma)
    k0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - g)]], dtype=complex)
    k1 = np.array([[0.0, np.sqrt(g)], [0.0, 0.0]], dtype=complex)
    return KrausChannel.from_operators([k0, k1])


def apply(ch: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    out = ch.apply_matrix(rho.matrix if isinstance(rho, DensityMatrix) else rho)
    layout = SINGLE if ch.input_dim == 2 else BIPARTITE
    return make_density(out, layout, clip=True)


def local_on_system(ch: KrausChannel) -> KrausChannel:
    """Lift a qubit channel to ``ch ⊗ id`` on system⊗ancilla."""
    if ch.input_dim != 2:
        raise DimensionMismatch("local lift expects a single-qubit channel")
    return KrausChannel.from_operators([np.kron(k, np.eye(2)) for k in ch.operators])


def apply_local_to_system(ch: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    if rho.dim != 4:
        raise DimensionMismatch("expected a system⊗ancilla state")
    return apply(local_on_system(ch), rho)


def is_unital(ch: KrausChannel, tol: float = 1e-12) -> bool:
    """True iff the channel maps ``I/d`` to ``I/d`` within ``tol``."""
    d = ch.input_dim
    mixed = np.eye(d, dtype=complex) / d
    return bool(np.max(np.abs(ch.apply_matrix(mixed) - mixed)) <= tol)


@dataclass(frozen=True)
class MemoryChannelSpec:
    """Damping strength ``gamma`` and memory coefficient ``mu``, both in [0, 1]."""

    gamma: float
    mu: float

    def __post_init__(self):
        _check_unit_interval("gamma", self.gamma)
        _check_unit_interval("mu", self.mu)


@dataclass(frozen=True, eq=False)
class MemoryBranches:
    uncorrelated: KrausChannel
    correlated: KrausChannel


def correlated_damping_operators(gamma: float) -> list[np.ndarray]:
    """The jointly-acting pair ``E00``, ``E11`` on two qubits.

    ``E00 = diag(1, 1, 1, sqrt(1-g))`` and ``E11 = sqrt(g)|ee><gg|``.
    """
    g = _check_unit_interval("gamma", gamma)
    e00 = np.diag([1.0, 1.0, 1.0, np.sqrt(1.0 - g)]).astype(complex)
    e11 = np.zeros((4, 4), dtype=complex)
    e11[0, 3] = np.sqrt(g)
    return [e00, e11]


def memory_amplitude_damping(spec: MemoryChannelSpec) -> MemoryBranches:
    """Both branches of the two-use channel.

    The uncorrelated branch is ``{K_i ⊗ K_j}`` (ordered ``00, 01, 10, 11``);
    the correlated branch is ``{E00, E11}``. Each is CPTP on its own.
    """
    single = amplitude_damping(spec.gamma)
    k = single.operators
    uncorrelated = KrausChannel.from_operators([np.kron(k[i], k[j]) for i in range(2) for j in range(2)])
    correlated = KrausChannel.from_operators(correlated_damping_operators(spec.gamma))
    return MemoryBranches(uncorrelated, correlated)


def memory_channel(spec: MemoryChannelSpec) -> KrausChannel:
    """The mixture ``(1-mu) * uncorrelated + mu * correlated`` as one Kraus list."""
    br = memory_amplitude_damping(spec)
    return KrausChannel.from_operators(br.uncorrelated.scaled(1.0 - spec.mu) + br.correlated.scaled(spec.mu))


def apply_memory_matrix(spec: MemoryChannelSpec, rho) -> np.ndarray:
    br = memory_amplitude_damping(spec)
    arr = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if arr.shape != (4, 4):
        raise DimensionMismatch(f"memory channel acts on 4x4 states, got {arr.shape}")
    return (1.0 - spec.mu) * br.uncorrelated.apply_matrix(arr) + spec.mu * br.correlated.apply_matrix(arr)


def apply_memory(spec: MemoryChannelSpec, rho: DensityMatrix) -> DensityMatrix:
    return make_density(apply_memory_matrix(spec, rho), BIPARTITE, clip=True)

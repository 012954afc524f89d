"""Ergotropy, ancilla measurements and daemonic work extraction.

All energies are in units of the qubit gap ``omega``; the Hamiltonian is
``omega |e><e|`` so the ground level sits at zero energy.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConsistencyError, DimensionMismatch, ParameterOutOfRange
from .linalg import dagger, hermitian_eigendecompose
from .optimize import golden_section_max
from .states import SINGLE, DensityMatrix, make_density, partial_trace_ancilla, partial_trace_ancilla_matrix

ZERO_PROB = 1e-14
GAIN_DUST = 1e-9
TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class QubitHamiltonian:
    omega: float = 1.0

    def __post_init__(self):
        if not self.omega > 0:
            raise ParameterOutOfRange(f"omega must be positive, got {self.omega!r}")

    @property
    def matrix(self) -> np.ndarray:
        return np.diag([self.omega, 0.0]).astype(complex)


def _hamiltonian_matrix(h) -> np.ndarray:
    return h.matrix if isinstance(h, QubitHamiltonian) else np.asarray(h, dtype=complex)


def _state_matrix(rho) -> np.ndarray:
    return rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)


def mean_energy(rho, h) -> float:
    return float(np.real(np.trace(_state_matrix(rho) @ _hamiltonian_matrix(h))))


def passive_state_matrix(rho, h) -> np.ndarray:
    """Largest populations on the lowest energies, in the energy eigenbasis."""
    r = hermitian_eigendecompose(_state_matrix(rho)).eigenvalues[::-1]
    energy_vecs = hermitian_eigendecompose(_hamiltonian_matrix(h)).eigenvectors
    return energy_vecs @ np.diag(r) @ dagger(energy_vecs)


def passive_state(rho, h) -> DensityMatrix:
    layout = rho.layout if isinstance(rho, DensityMatrix) else None
    return make_density(passive_state_matrix(rho, h), layout, clip=True)


def passive_energy(rho, h) -> float:
    r = hermitian_eigendecompose(_state_matrix(rho)).eigenvalues[::-1]
    eps = hermitian_eigendecompose(_hamiltonian_matrix(h)).eigenvalues
    return float(np.dot(r, eps))


def ergotropy(rho, h) -> float:
    """Mean energy minus passive-state energy (never negative)."""
    return max(mean_energy(rho, h) - passive_energy(rho, h), 0.0)


def is_passive(rho, h, tol: float = 1e-10) -> bool:
    m = _state_matrix(rho)
    hm = _hamiltonian_matrix(h)
    commutator = np.max(np.abs(m @ hm - hm @ m))
    return bool(ergotropy(rho, h) < tol and commutator < tol)


@dataclass(frozen=True, eq=False)
class ProjectivePair:
    """Rank-1 projectors for the ancilla basis

    ``|psi0> = cos(t/2)|e> + e^{i p} sin(t/2)|g>`` and
    ``|psi1> = -sin(t/2)|e> + e^{i p} cos(t/2)|g>``.
    Both kets carry the same phase on ``|g>``; with opposite phases the pair
    is only orthogonal at ``p = 0`` or ``p = pi``.
    """

    theta: float
    phi: float
    projectors: tuple = field(repr=False)

    def swapped(self) -> "ProjectivePair":
        """Same measurement with outcome labels exchanged."""
        return qubit_projectors(np.pi - self.theta, self.phi + np.pi)


def wrap_angles(theta: float, phi: float) -> tuple[float, float]:
    """Map any ``(theta, phi)`` to ``[0, pi] x [0, 2 pi)`` without changing the projectors."""
    theta = float(theta) % TWO_PI
    phi = float(phi)
    if theta > np.pi:
        theta = TWO_PI - theta
        phi += np.pi
    phi %= TWO_PI
    if phi >= TWO_PI:  # -tiny % 2pi rounds up to 2pi
        phi = 0.0
    return theta, phi


def basis_kets(theta: float, phi: float) -> tuple[np.ndarray, np.ndarray]:
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    psi0 = np.array([c, np.exp(1j * phi) * s])
    psi1 = np.array([-s, np.exp(1j * phi) * c])
    return psi0, psi1


def qubit_projectors(theta: float, phi: float = 0.0) -> ProjectivePair:
    theta, phi = wrap_angles(theta, phi)
    kets = basis_kets(theta, phi)
    projs = tuple(np.outer(k, k.conj()) for k in kets)
    for p in projs:
        p.setflags(write=False)
    return ProjectivePair(theta, phi, projs)


@dataclass(frozen=True, eq=False)
class MeasurementOutcome:
    probability: float
    conditional_state: DensityMatrix | None

    @property
    def zero_probability(self) -> bool:
        return self.conditional_state is None


def _check_bipartite(rho_sa) -> np.ndarray:
    m = _state_matrix(rho_sa)
    if m.shape != (4, 4):
        raise DimensionMismatch(f"expected a system⊗ancilla state, got shape {m.shape}")
    return m


def measure_ancilla(rho_sa, pair: ProjectivePair) -> tuple[MeasurementOutcome, MeasurementOutcome]:
    """Project the ancilla and return the two (probability, system state) outcomes.

    Outcomes with probability below 1e-14 carry ``conditional_state=None``.
    """
    m = _check_bipartite(rho_sa)
    outcomes = []
    for proj in pair.projectors:
        lift = np.kron(np.eye(2), proj)
        post = lift @ m @ lift
        p = float(np.real(np.trace(post)))
        if p < ZERO_PROB:
            outcomes.append(MeasurementOutcome(max(p, 0.0), None))
        else:
            outcomes.append(MeasurementOutcome(p, make_density(partial_trace_ancilla_matrix(post) / p, SINGLE, clip=True)))
    return outcomes[0], outcomes[1]


def daemonic_ergotropy(rho_sa, h, pair: ProjectivePair) -> float:
    """Outcome-weighted mean of the conditional system ergotropies."""
    return sum(o.probability * ergotropy(o.conditional_state, h)
               for o in measure_ancilla(rho_sa, pair) if not o.zero_probability)


def daemonic_ergotropy_grid(rho_sa, h: QubitHamiltonian, thetas, phis) -> np.ndarray:
    """Vectorized daemonic ergotropy on the ``thetas x phis`` grid.

    Works on the unnormalized conditional blocks ``p_a rho_{S|a}``: for the
    qubit Hamiltonian, ``p W(rho) = omega * (block_ee - lambda_min(block))``,
    which is homogeneous in ``p`` and needs no division.
    """
    m = _check_bipartite(rho_sa).reshape(2, 2, 2, 2)
    th = np.asarray(thetas, dtype=float)[:, None]
    ph = np.asarray(phis, dtype=float)[None, :]
    c = np.cos(th / 2.0) + 0.0 * ph
    s = np.sin(th / 2.0) + 0.0 * ph
    e_ip = np.exp(1j * ph) + 0.0 * th
    total = np.zeros(c.shape)
    for vec in ((c, e_ip * s), (-s, e_ip * c)):
        # block[i, j] = <v| rho[i, :, j, :] |v> over the ancilla index
        weights = [[np.conj(vec[b]) * vec[k] for k in range(2)] for b in range(2)]

        def entry(i, j):
            return sum(m[i, b, j, k] * weights[b][k] for b in range(2) for k in range(2))

        ee, eg, gg = entry(0, 0).real, entry(0, 1), entry(1, 1).real
        low = 0.5 * (ee + gg) - np.sqrt((0.5 * (ee - gg)) ** 2 + np.abs(eg) ** 2)
        total += h.omega * np.maximum(ee - low, 0.0)
    return total


def _theta_objective(rho_sa, h: QubitHamiltonian, phi: float):
    """Scalar version of :func:`daemonic_ergotropy_grid` at fixed ``phi`` (for line search)."""
    m = _check_bipartite(rho_sa).reshape(2, 2, 2, 2).tolist()
    e_ip = cmath.exp(1j * phi)
    omega = h.omega

    def value(theta: float) -> float:
        c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
        total = 0.0
        for vec in ((c, e_ip * s), (-s, e_ip * c)):
            w = [[vec[b].conjugate() * vec[k] for k in range(2)] for b in range(2)]
            ee = sum(m[0][b][0][k] * w[b][k] for b in range(2) for k in range(2)).real
            eg = sum(m[0][b][1][k] * w[b][k] for b in range(2) for k in range(2))
            gg = sum(m[1][b][1][k] * w[b][k] for b in range(2) for k in range(2)).real
            low = 0.5 * (ee + gg) - math.sqrt((0.5 * (ee - gg)) ** 2 + abs(eg) ** 2)
            total += omega * max(ee - low, 0.0)
        return total

    return value


@dataclass(frozen=True)
class OptimizerSettings:
    """Coarse (theta, phi) grid followed by golden-section refinement in theta."""

    theta_steps: int = 181
    phi_steps: int = 24
    refine_tol: float = 1e-10
    tie_tol: float = 1e-12

    def theta_grid(self) -> np.ndarray:
        return np.linspace(0.0, np.pi, self.theta_steps)

    def phi_grid(self) -> np.ndarray:
        return TWO_PI * np.arange(self.phi_steps) / self.phi_steps


@dataclass(frozen=True)
class GainResult:
    gain: float
    optimal_theta: float
    optimal_phi: float
    daemonic_at_opt: float
    plain_ergotropy: float


def maximize_daemonic(rho_sa, h: QubitHamiltonian, opt: OptimizerSettings = OptimizerSettings()):
    """Return ``(best_value, theta, phi)`` over ancilla projective measurements.

    Grid ties within ``tie_tol`` go to the lexicographically smallest
    ``(theta, phi)``. Refinement is kept only if it beats the grid value by
    more than ``tie_tol``.
    """
    thetas, phis = opt.theta_grid(), opt.phi_grid()
    values = daemonic_ergotropy_grid(rho_sa, h, thetas, phis)
    flat = values.ravel()
    idx = int(np.flatnonzero(flat >= flat.max() - opt.tie_tol)[0])
    i, j = np.unravel_index(idx, values.shape)
    best_theta, best_phi, best = float(thetas[i]), float(phis[j]), float(flat[idx])

    step = np.pi / max(opt.theta_steps - 1, 1)
    lo, hi = max(best_theta - step, 0.0), min(best_theta + step, np.pi)

    objective = _theta_objective(rho_sa, h, best_phi)

    t_ref, v_ref = golden_section_max(objective, lo, hi, tol=opt.refine_tol)
    if v_ref > best + opt.tie_tol:
        best_theta, best = t_ref, v_ref
    return best, best_theta, best_phi


def daemonic_gain(rho_sa, h: QubitHamiltonian, opt: OptimizerSettings = OptimizerSettings()) -> GainResult:
    """Optimized daemonic ergotropy minus the ergotropy of the reduced system state."""
    best, theta, phi = maximize_daemonic(rho_sa, h, opt)
    plain = ergotropy(partial_trace_ancilla(rho_sa), h)
    gain = best - plain
    if gain < 0.0:
        if gain < -GAIN_DUST:
            raise ConsistencyError(f"daemonic optimum {best!r} below plain ergotropy {plain!r}")
        gain = 0.0
    return GainResult(gain=gain, optimal_theta=theta, optimal_phi=phi, daemonic_at_opt=best, plain_ergotropy=plain)

"""Self-check suite run by ``daemonic verify``.

Each check reports its worst residual against a fixed tolerance. A run-time
``tolerance`` acts as a cap: checks use ``min(stated, tolerance)``.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import closed_form as cf
from .channels import (
    KrausChannel,
    MemoryChannelSpec,
    amplitude_damping,
    completeness_residual,
    identity_channel,
    is_unital,
    memory_amplitude_damping,
    memory_channel,
)
from .linalg import dagger, hermitian_eigendecompose
from .states import initial_state, partial_trace_ancilla_matrix, random_density
from .work import (
    QubitHamiltonian,
    daemonic_ergotropy,
    daemonic_ergotropy_grid,
    ergotropy,
    measure_ancilla,
    passive_energy,
    passive_state,
    qubit_projectors,
)

SEED = 20240611
FAULTS = ("drop-k1",)


@dataclass
class CheckResult:
    name: str
    residual: float
    tolerance: float
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"  ({self.detail})" if self.detail else ""
        return f"[{status}] {self.name}: residual={self.residual:.3e} tol={self.tolerance:.1e}{extra}"


def _unit_grid(n: int = 21) -> np.ndarray:
    return np.linspace(0.0, 1.0, n)


def _ad_factory(fault: str | None) -> Callable[[float], KrausChannel]:
    if fault is None:
        return amplitude_damping
    if fault == "drop-k1":
        def broken(gamma):
            return KrausChannel.from_operators(amplitude_damping(gamma).operators[:1], validate=False)
        return broken
    raise ValueError(f"unknown fault {fault!r}; known: {FAULTS}")


class Suite:
    def __init__(self, cap: float = 1e-9, fault: str | None = None, seed: int = SEED):
        self.cap = cap
        self.fault = fault
        self.seed = seed
        self.results: list[CheckResult] = []

    def record(self, name: str, residual: float, tol: float, detail: str = "", passed: bool | None = None):
        tol = min(tol, self.cap)
        if passed is None:
            passed = bool(residual < tol)
        self.results.append(CheckResult(name, float(residual), tol, passed, detail))

    # eigensolver ---------------------------------------------------------
    def check_eigensolver(self, count: int = 1000):
        rng = np.random.default_rng(self.seed)
        recon = unitary = trace = 0.0
        ordered = True
        for dim in (2, 4):
            for _ in range(count):
                x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
                h = 0.5 * (x + dagger(x))
                es = hermitian_eigendecompose(h)
                v = es.eigenvectors
                recon = max(recon, np.max(np.abs(es.reconstruct() - h)))
                unitary = max(unitary, np.max(np.abs(dagger(v) @ v - np.eye(dim))))
                trace = max(trace, abs(es.eigenvalues.sum() - np.trace(h).real))
                ordered &= bool(np.all(np.diff(es.eigenvalues) >= 0))
        self.record("eigensolver reconstruction residual", recon, 1e-10, f"{2 * count} random Hermitian, dims 2 and 4")
        self.record("eigensolver eigenvector unitarity residual", unitary, 1e-10)
        self.record("eigensolver trace residual", trace, 1e-10)
        self.record("eigensolver ascending order", 0.0 if ordered else 1.0, 0.5)

    # channels ------------------------------------------------------------
    def check_channels(self):
        make_ad = _ad_factory(self.fault)
        grid = _unit_grid()
        ad_res = max(completeness_residual(make_ad(g).operators) for g in grid)
        self.record("CPTP residual: amplitude damping", ad_res, 1e-10, "21 gamma values")

        mem_res = 0.0
        unital_errors = []
        for g in grid:
            for mu in grid:
                spec = MemoryChannelSpec(g, mu)
                br = memory_amplitude_damping(spec)
                full = memory_channel(spec)
                mem_res = max(mem_res, br.uncorrelated.completeness_residual(),
                              br.correlated.completeness_residual(), full.completeness_residual())
                if is_unital(full) != (g == 0.0):
                    unital_errors.append((g, mu))
        self.record("CPTP residual: memory channel branches and mixture", mem_res, 1e-10, "21x21 (gamma, mu)")

        for g in grid:
            ch = make_ad(g)
            if is_unital(ch) != (g == 0.0):
                unital_errors.append((g, None))
        x = np.array([[0, 1], [1, 0]], dtype=complex)
        mixture = KrausChannel.from_operators([np.eye(2) / math.sqrt(2), x / math.sqrt(2)])
        if not is_unital(identity_channel(2)) or not is_unital(identity_channel(4)):
            unital_errors.append("identity")
        if not is_unital(mixture):
            unital_errors.append("unitary mixture")
        self.record("unitality classification", float(len(unital_errors)), 0.5,
                    f"misclassified: {unital_errors[:3]}" if unital_errors else "AD/memory non-unital for gamma>0; identity, unitary mixture unital")

    # closed-form oracles -------------------------------------------------
    def check_oracles(self):
        h = QubitHamiltonian()
        make_ad = _ad_factory(self.fault)
        lift = lambda ch: KrausChannel.from_operators([np.kron(k, np.eye(2)) for k in ch.operators], validate=False)  # noqa: E731

        thetas = np.linspace(0.0, np.pi, 181)
        worst = 0.0
        for g in np.linspace(0.0, 1.0, 101):
            state = lift(make_ad(g)).apply_matrix(initial_state().matrix)
            numeric = daemonic_ergotropy_grid(state, h, thetas, [0.0])[:, 0]
            oracle = np.array([cf.memoryless_daemonic(g, t) for t in thetas])
            worst = max(worst, np.max(np.abs(numeric - oracle)))
        self.record("oracle: memoryless daemonic ergotropy", worst, 1e-9, "101x181 (gamma, theta)")

        thetas = np.linspace(0.0, np.pi, 61)
        worst_d = worst_c = worst_r = 0.0
        for g in _unit_grid():
            for mu in _unit_grid():
                state = memory_channel(MemoryChannelSpec(g, mu)).apply_matrix(initial_state().matrix)
                numeric = daemonic_ergotropy_grid(state, h, thetas, [0.0])[:, 0]
                oracle = np.array([cf.memory_daemonic(g, mu, t) for t in thetas])
                worst_d = max(worst_d, np.max(np.abs(numeric - oracle)))
                worst_c = max(worst_c, np.max(np.abs(np.diag(state).real - cf.memory_output_coefficients(g, mu))))
                reduced = partial_trace_ancilla_matrix(state)
                worst_r = max(worst_r, np.max(np.abs(reduced - np.diag(cf.reduced_system_populations(g)))))
        self.record("oracle: memory-channel daemonic ergotropy", worst_d, 1e-9, "21x21x61 (gamma, mu, theta)")
        self.record("oracle: memory-channel output diagonals", worst_c, 1e-12)
        self.record("reduced system state independent of mu", worst_r, 1e-12)

        # the grid evaluator above must agree with the eigensolver route
        rng = np.random.default_rng(self.seed + 1)
        worst_route = 0.0
        for _ in range(200):
            rho = random_density(rng)
            th, ph = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
            fast = daemonic_ergotropy_grid(rho, h, [th], [ph])[0, 0]
            worst_route = max(worst_route, abs(fast - daemonic_ergotropy(rho, h, qubit_projectors(th, ph))))
        self.record("grid evaluator matches eigensolver route", worst_route, 1e-12, "200 random states/measurements")

    # structural properties ----------------------------------------------
    def check_structure(self, count: int = 1000):
        h = QubitHamiltonian()
        rng = np.random.default_rng(self.seed + 2)
        nosig = 0.0
        min_erg = 0.0
        passive_erg = 0.0
        for _ in range(count):
            rho = random_density(rng)
            pair = qubit_projectors(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
            avg = sum(o.probability * o.conditional_state.matrix
                      for o in measure_ancilla(rho, pair) if not o.zero_probability)
            nosig = max(nosig, np.max(np.abs(avg - partial_trace_ancilla_matrix(rho))))
            reduced = partial_trace_ancilla_matrix(rho)
            w = ergotropy(reduced, h)
            min_erg = min(min_erg, w)
            passive_erg = max(passive_erg, ergotropy(passive_state(reduced, h), h))
        self.record("no-signaling", nosig, 1e-12, f"{count} random bipartite states")
        self.record("ergotropy non-negativity", -min_erg, 1e-12)
        self.record("passive state has zero ergotropy", passive_erg, 1e-12)

        perm_res = 0.0
        for dim in (2, 4):
            for _ in range(50):
                pops = rng.dirichlet(np.ones(dim))
                energies = np.sort(rng.uniform(0, 3, size=dim))
                rho, ham = np.diag(pops).astype(complex), np.diag(rng.permutation(energies)).astype(complex)
                brute = min(float(np.dot(pops[list(p)], np.diag(ham).real))
                            for p in itertools.permutations(range(dim)))
                perm_res = max(perm_res, abs(brute - passive_energy(rho, ham)))
        self.record("permutation brute-force passive energy", perm_res, 1e-12, "dims 2 and 4")

        phis = np.linspace(0.0, 2 * np.pi, 25)
        thetas = np.linspace(0.0, np.pi, 37)
        phi_dev = relabel = 0.0
        for g in _unit_grid():
            states = [lift_local(g)] + [memory_channel(MemoryChannelSpec(g, mu)).apply_matrix(initial_state().matrix)
                                        for mu in _unit_grid(11)]
            for state in states:
                vals = daemonic_ergotropy_grid(state, h, thetas, phis)
                phi_dev = max(phi_dev, np.max(vals.max(axis=1) - vals.min(axis=1)))
            for th in thetas[::6]:
                pair = qubit_projectors(th, 0.7)
                relabel = max(relabel, abs(daemonic_ergotropy(states[0], h, pair) - daemonic_ergotropy(states[0], h, pair.swapped())))
        self.record("phi-invariance of daemonic ergotropy", phi_dev, 1e-12, "damped start states, local and memory")
        self.record("outcome relabeling invariance", relabel, 1e-12)

    def run(self, progress: Callable[[str], None] | None = None) -> list[CheckResult]:
        for step in (self.check_eigensolver, self.check_channels, self.check_oracles, self.check_structure):
            start = len(self.results)
            t0 = time.perf_counter()
            step()
            if progress is not None:
                for r in self.results[start:]:
                    progress(r.line())
                progress(f"  ... {step.__name__} took {time.perf_counter() - t0:.2f}s")
        return self.results

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


def lift_local(gamma: float) -> np.ndarray:
    ch = amplitude_damping(gamma)
    return KrausChannel.from_operators([np.kron(k, np.eye(2)) for k in ch.operators]).apply_matrix(initial_state().matrix)


def run_verify(cap: float = 1e-9, fault: str | None = None, progress=None) -> tuple[bool, list[CheckResult]]:
    suite = Suite(cap=cap, fault=fault)
    results = suite.run(progress)
    return suite.passed, results

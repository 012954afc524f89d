"""Parameter sweeps behind the four figures, with deterministic CSV output."""
from __future__ import annotations

import csv
import io
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .channels import MemoryChannelSpec, amplitude_damping, apply_local_to_system, apply_memory
from .errors import DaemonicError
from .states import initial_state
from .work import OptimizerSettings, QubitHamiltonian, daemonic_gain

SLICE_MUS = (0.0, 0.5, 1.0)
FIG4_MU = 0.5


class ConfigError(DaemonicError):
    pass


class IoFailure(DaemonicError):
    pass


@dataclass(frozen=True)
class RunConfig:
    omega: float = 1.0
    gamma_steps: int = 101
    mu_steps: int = 101
    theta_grid_steps: int = 181
    tolerance: float = 1e-9
    output_path: str | None = None
    mu: float | None = None
    jobs: int = 1

    def __post_init__(self):
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise ConfigError(f"omega must be a positive number, got {self.omega!r}")
        for name in ("gamma_steps", "mu_steps", "theta_grid_steps"):
            if getattr(self, name) < 2:
                raise ConfigError(f"{name} must be at least 2, got {getattr(self, name)!r}")
        if not 0.0 < self.tolerance <= 1e-3:
            raise ConfigError(f"tolerance must lie in (0, 1e-3], got {self.tolerance!r}")
        if self.mu is not None and not 0.0 <= self.mu <= 1.0:
            raise ConfigError(f"mu must lie in [0, 1], got {self.mu!r}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be positive, got {self.jobs!r}")

    @property
    def hamiltonian(self) -> QubitHamiltonian:
        return QubitHamiltonian(self.omega)

    @property
    def optimizer(self) -> OptimizerSettings:
        return OptimizerSettings(theta_steps=self.theta_grid_steps)

    def gammas(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.gamma_steps)

    def mus(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.mu_steps)


@dataclass(frozen=True)
class SweepRecord:
    gamma: float
    mu: float
    ergotropy: float
    daemonic_ergotropy: float
    daemonic_gain: float
    optimal_theta: float

    def violations(self, tol: float = 1e-9) -> list[str]:
        out = []
        if abs(self.daemonic_gain - (self.daemonic_ergotropy - self.ergotropy)) > tol:
            out.append("gain != daemonic - ergotropy")
        if self.daemonic_gain < -tol:
            out.append("negative gain")
        return out


def local_pipeline_state(gamma: float):
    """Correlated start state with damping applied to the system qubit only."""
    return apply_local_to_system(amplitude_damping(gamma), initial_state())


def memory_pipeline_state(gamma: float, mu: float):
    """Correlated start state sent through the two-use memory channel."""
    return apply_memory(MemoryChannelSpec(gamma, mu), initial_state())


def evaluate_point(gamma: float, mu: float, omega: float, theta_steps: int) -> SweepRecord:
    """One grid point; ``mu`` NaN selects the memoryless local pipeline."""
    state = local_pipeline_state(gamma) if math.isnan(mu) else memory_pipeline_state(gamma, mu)
    res = daemonic_gain(state, QubitHamiltonian(omega), OptimizerSettings(theta_steps=theta_steps))
    return SweepRecord(float(gamma), float(mu), res.plain_ergotropy, res.daemonic_at_opt, res.gain, res.optimal_theta)


def _evaluate_args(args):
    return evaluate_point(*args)


def sweep(points, cfg: RunConfig) -> list[SweepRecord]:
    """Evaluate ``(gamma, mu)`` points, returning records sorted by ``(gamma, mu)``.

    With ``cfg.jobs > 1`` points are spread across worker processes; output
    order and values do not depend on scheduling.
    """
    ordered = sorted(points, key=lambda p: (p[0], -1.0 if math.isnan(p[1]) else p[1]))
    args = [(float(g), float(m), cfg.omega, cfg.theta_grid_steps) for g, m in ordered]
    if cfg.jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            records = list(pool.map(_evaluate_args, args, chunksize=max(1, len(args) // (4 * cfg.jobs))))
    else:
        records = [evaluate_point(*a) for a in args]
    for rec in records:
        bad = rec.violations(cfg.tolerance)
        if bad:
            raise DaemonicError(f"record at gamma={rec.gamma}, mu={rec.mu} violates: {', '.join(bad)}")
    return records


def fig1_records(cfg: RunConfig) -> list[SweepRecord]:
    return sweep([(g, math.nan) for g in cfg.gammas()], cfg)


def grid_records(cfg: RunConfig) -> list[SweepRecord]:
    return sweep([(g, m) for g in cfg.gammas() for m in cfg.mus()], cfg)


def slice_records(cfg: RunConfig, mus=SLICE_MUS) -> list[SweepRecord]:
    return sweep([(g, m) for g in cfg.gammas() for m in mus], cfg)


def fig4_records(cfg: RunConfig) -> list[SweepRecord]:
    mu = FIG4_MU if cfg.mu is None else cfg.mu
    return sweep([(g, mu) for g in cfg.gammas()], cfg)


FIG1_COLUMNS = ("gamma", "ergotropy", "daemonic_ergotropy", "daemonic_gain", "optimal_theta")
FIG2_COLUMNS = ("gamma", "mu", "ergotropy", "daemonic_ergotropy", "optimal_theta")
FIG3_COLUMNS = ("gamma", "mu", "ergotropy", "daemonic_gain", "optimal_theta")
FULL_COLUMNS = ("gamma", "mu", "ergotropy", "daemonic_ergotropy", "daemonic_gain", "optimal_theta")


def format_value(x: float) -> str:
    if math.isnan(x):
        return "nan"
    return f"{x + 0.0:.12g}"  # + 0.0 folds -0.0 into 0.0


def render_csv(records, columns) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for rec in records:
        row = asdict(rec)
        writer.writerow([format_value(row[c]) for c in columns])
    return buf.getvalue()


def write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc


def slices_path(path: str | None) -> str | None:
    if path is None or path == "-":
        return None
    p = Path(path)
    return str(p.with_name(f"{p.stem}_slices{p.suffix or '.csv'}"))


def run_fig1(cfg: RunConfig) -> list[SweepRecord]:
    records = fig1_records(cfg)
    write_output(render_csv(records, FIG1_COLUMNS), cfg.output_path)
    return records


def run_fig2(cfg: RunConfig) -> list[SweepRecord]:
    records = grid_records(cfg)
    write_output(render_csv(records, FIG2_COLUMNS), cfg.output_path)
    return records


def run_fig3(cfg: RunConfig, slices_out: str | None = None) -> tuple[list[SweepRecord], list[SweepRecord]]:
    """Gain surface plus the fixed-memory slices at mu = 0, 0.5, 1.

    The slices go to ``slices_out`` (default: ``<out>_slices.csv`` next to the
    surface file). When writing the surface to stdout and no slices path is
    given, the slices are skipped.
    """
    records = grid_records(cfg)
    write_output(render_csv(records, FIG3_COLUMNS), cfg.output_path)
    target = slices_out or slices_path(cfg.output_path)
    slices = []
    if target is not None:
        slices = slice_records(cfg)
        write_output(render_csv(slices, FULL_COLUMNS), target)
    return records, slices


def run_fig4(cfg: RunConfig) -> list[SweepRecord]:
    records = fig4_records(cfg)
    write_output(render_csv(records, FULL_COLUMNS), cfg.output_path)
    return records


def run_sweep(cfg: RunConfig, pipeline: str = "memory") -> list[SweepRecord]:
    """Free-form sweep: local pipeline over gamma, or memory pipeline over gamma x mu.

    ``cfg.mu`` pins the memory sweep to one memory coefficient.
    """
    if pipeline == "local":
        records = fig1_records(cfg)
    elif cfg.mu is not None:
        records = sweep([(g, cfg.mu) for g in cfg.gammas()], cfg)
    else:
        records = grid_records(cfg)
    write_output(render_csv(records, FULL_COLUMNS), cfg.output_path)
    return records

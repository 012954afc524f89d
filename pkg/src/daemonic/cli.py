"""Command-line entry point: ``daemonic {fig1,fig2,fig3,fig4,sweep,verify}``."""
from __future__ import annotations

import argparse
import sys
import time

from .errors import DaemonicError
from .experiments import ConfigError, IoFailure, RunConfig, run_fig1, run_fig2, run_fig3, run_fig4, run_sweep
from .verify import FAULTS, run_verify

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_BAD_ARGS, EXIT_IO = 0, 1, 2, 3


def _add_common(p: argparse.ArgumentParser, *, mu: bool = False, default_gamma_steps: int = 101):
    p.add_argument("--omega", type=float, default=1.0, help="qubit energy gap (default 1.0)")
    p.add_argument("--gamma-steps", type=int, default=default_gamma_steps, help="points on the gamma grid in [0, 1]")
    p.add_argument("--mu-steps", type=int, default=101, help="points on the mu grid in [0, 1]")
    p.add_argument("--theta-steps", type=int, default=181, help="coarse theta grid points in [0, pi]")
    p.add_argument("--tol", type=float, default=1e-9, help="consistency tolerance, in (0, 1e-3]")
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for grid evaluation")
    if mu:
        p.add_argument("--mu", type=float, default=None, help="memory coefficient")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="daemonic", description="Ergotropy and daemonic gain under (correlated) amplitude damping.")
    sub = ap.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("fig1", help="memoryless local damping: W, daemonic W, gain vs gamma"))
    _add_common(sub.add_parser("fig2", help="daemonic ergotropy on the (gamma, mu) grid"))
    p3 = sub.add_parser("fig3", help="daemonic gain on the (gamma, mu) grid plus mu = 0, 0.5, 1 slices")
    _add_common(p3)
    p3.add_argument("--slices-out", default=None, help="slices CSV (default: <out>_slices.csv)")
    _add_common(sub.add_parser("fig4", help="W, daemonic W and gain vs gamma at fixed mu (default 0.5)"), mu=True)
    ps = sub.add_parser("sweep", help="free-form sweep of either pipeline")
    _add_common(ps, mu=True)
    ps.add_argument("--pipeline", choices=("memory", "local"), default="memory")

    pv = sub.add_parser("verify", help="run the self-check suite")
    pv.add_argument("--tol", type=float, default=1e-9, help="cap applied to every check tolerance")
    pv.add_argument("--out", default=None, help="write the report here as well as stdout")
    pv.add_argument("--inject-fault", choices=FAULTS, default=None, help=argparse.SUPPRESS)
    return ap


def _config(args) -> RunConfig:
    return RunConfig(
        omega=args.omega,
        gamma_steps=args.gamma_steps,
        mu_steps=args.mu_steps,
        theta_grid_steps=args.theta_steps,
        tolerance=args.tol,
        output_path=args.out,
        mu=getattr(args, "mu", None),
        jobs=args.jobs,
    )


def _verify(args) -> int:
    if not 0.0 < args.tol <= 1e-3:
        raise ConfigError(f"tolerance must lie in (0, 1e-3], got {args.tol!r}")
    lines = []

    def emit(line):
        lines.append(line)
        print(line, flush=True)

    t0 = time.perf_counter()
    ok, results = run_verify(cap=args.tol, fault=args.inject_fault, progress=emit)
    failed = [r for r in results if not r.passed]
    emit(f"{len(results) - len(failed)}/{len(results)} checks passed in {time.perf_counter() - t0:.1f}s")
    if failed:
        emit("FAILED: " + "; ".join(r.name for r in failed))
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write("\n".join(lines) + "\n")
        except OSError as exc:
            raise IoFailure(str(exc)) from exc
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return _verify(args)
        cfg = _config(args)
        if args.command == "fig1":
            run_fig1(cfg)
        elif args.command == "fig2":
            run_fig2(cfg)
        elif args.command == "fig3":
            run_fig3(cfg, slices_out=args.slices_out)
        elif args.command == "fig4":
            run_fig4(cfg)
        else:
            run_sweep(cfg, pipeline=args.pipeline)
    except ConfigError as exc:
        print(f"daemonic: error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    except IoFailure as exc:
        print(f"daemonic: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DaemonicError as exc:
        print(f"daemonic: error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())

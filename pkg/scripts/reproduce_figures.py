"""Write the CSV data behind all four figures into one directory.

    python scripts/reproduce_figures.py --outdir results --jobs 4
"""
import argparse
import time
from pathlib import Path

from daemonic.experiments import RunConfig, run_fig1, run_fig2, run_fig3, run_fig4


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--gamma-steps", type=int, default=101)
    ap.add_argument("--mu-steps", type=int, default=101)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, runner in (("fig1", run_fig1), ("fig2", run_fig2), ("fig3", run_fig3), ("fig4", run_fig4)):
        cfg = RunConfig(gamma_steps=args.gamma_steps, mu_steps=args.mu_steps,
                        output_path=str(outdir / f"{name}.csv"), jobs=args.jobs)
        t0 = time.perf_counter()
        runner(cfg)
        print(f"{name}: wrote {cfg.output_path} in {time.perf_counter() - t0:.1f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

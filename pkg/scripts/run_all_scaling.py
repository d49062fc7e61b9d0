#!/usr/bin/env python3
"""Run the three reference scaling studies and print the aggregate table.

Reads run_s1.json / run_s2.json / run_s3.json from this directory (focusing,
plate, and annulus families at their sharp exponent pairs), writes each run's
JSON + CSV into --out, and exits nonzero if any verdict is not 'consistent'.

About 30 s total on the default 2048^2 grid.
"""

import argparse
import json
import pathlib
import sys

from fractalwave.experiments import RunConfig, persist, run_scaling

HERE = pathlib.Path(__file__).resolve().parent


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="runs", help="output directory (default ./runs)")
    ap.add_argument(
        "--configs",
        nargs="+",
        default=[HERE / f"run_s{i}.json" for i in (1, 2, 3)],
        help="config files to run",
    )
    args = ap.parse_args()

    bad = 0
    for path in args.configs:
        config = RunConfig.from_json(json.loads(pathlib.Path(path).read_text()))
        run = run_scaling(config)
        persist(run, args.out)
        status = "ok" if run.verdict == "consistent" else "** " + run.verdict
        print(
            f"{config.label or config.family:24s} slope {run.fitted_slope:+.4f} "
            f"(predicted {run.predicted}) residual {run.residual:.4f}  {status}"
        )
        bad += run.verdict != "consistent"
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())

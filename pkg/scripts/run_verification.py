"""Full operator sweep: every suite, 500 trials per cell, report + failing cases on disk."""
import argparse
import os
import sys

from tsallis_ops.report import RunConfig, persist, run_suite, serialize_report


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--dims", default="2,3,4,8")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--out", default="results/verification.json")
    args = p.parse_args()
    config = RunConfig(dims=[int(d) for d in args.dims.split(",")], trials=args.trials,
                       seed=args.seed, workers=args.workers)
    report = run_suite(config)
    written = persist(report, args.out, "json")
    sys.stdout.write(serialize_report(report, "text").decode())
    print(f"\nreport: {args.out}  ({len(written)} failing cases saved)  "
          f"runtime {report.summary['runtime']:.1f}s")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

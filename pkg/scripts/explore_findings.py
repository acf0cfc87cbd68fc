"""Run only the finding suites and print, per suite, where and how badly they fail."""
import argparse

from tsallis_ops.report import RunConfig, run_suite
from tsallis_ops.theorems import SUITES


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--dims", default="2,4")
    args = p.parse_args()
    suites = [sid for sid, s in SUITES.items() if s.finding]
    report = run_suite(RunConfig(suites=suites, dims=[int(d) for d in args.dims.split(",")],
                                 trials=args.trials))
    for f in report.findings:
        worst = f["worst_margin"]
        print(f"{f['suite']:28s} {f['violations']:5d}/{f['trials']:<5d} violated  "
              f"worst relative margin {worst:+.3e}  v: {f['violated_v']}")
        print(f"    {f['statement']}")


if __name__ == "__main__":
    main()

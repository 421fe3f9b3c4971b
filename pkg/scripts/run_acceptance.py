"""Run the twelve acceptance criteria and print one line per criterion.

    python3 scripts/run_acceptance.py --seed 0 --json report.json
"""
import argparse
import sys
import time

from reflectcg.acceptance import CRITERIA, Settings, summary_line
from reflectcg.report import Report


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--prime", type=int, default=1000003)
    parser.add_argument("--reps", type=int, default=7)
    parser.add_argument("--samples", type=int, default=25)
    parser.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    parser.add_argument("--json", help="write the combined report here")
    args = parser.parse_args(argv)

    settings = Settings(args.seed, args.prime, args.reps, args.samples)
    combined = Report(provenance={"seed": args.seed, "prime": args.prime, "reps": args.reps})
    for n, title, fn in CRITERIA:
        if args.only and n not in args.only:
            continue
        start = time.perf_counter()
        report = fn(settings)
        print(f"{summary_line(n, title, report)}  [{time.perf_counter() - start:.1f}s]", flush=True)
        combined.extend(report, f"c{n:02d}.")
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(combined.to_json() + "\n")
    return combined.exit_code()


if __name__ == "__main__":
    sys.exit(main())

"""Wall-clock timings of the heavier checks."""
import argparse
import time

from reflectcg.ansatz import ansatz_pipeline
from reflectcg.reduced import verify_equivalence
from reflectcg.rmatrix import verify_ybe


def timed(label, fn):
    start = time.perf_counter()
    report = fn()
    print(f"{label:28s} {time.perf_counter() - start:7.2f}s  {report.status}")


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=7)
    args = parser.parse_args(argv)
    timed("ybe symbolic (cleared)", lambda: verify_ybe("symbolic", cleared=True))
    timed("81 <=> 38 equivalence", lambda: verify_equivalence(reps=args.reps, seed=0, staged=False))
    timed("ansatz pipeline (50)", lambda: ansatz_pipeline(50, 0))


if __name__ == "__main__":
    main()

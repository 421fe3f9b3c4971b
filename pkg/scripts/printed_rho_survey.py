"""How often the printed unitarity scalars fail to match K(z)K(1/z).

For random family I and II parameters, compares the exact scalar with the
printed one and with the derived one, and counts the mismatches.
"""
import argparse
import random

from reflectcg.kmatrix import build_sample, random_params, rho, rho_derived, unitarity_product, z_proportional
from reflectcg.rmatrix import _scalar_of


def survey(family: str, count: int, seed: int) -> dict:
    rng = random.Random(seed)
    out = {"samples": count, "printed_off": 0, "derived_off": 0, "degenerate": 0}
    for _ in range(count):
        p = random_params(family, rng)
        s = _scalar_of(unitarity_product(build_sample(family, p)))
        if s is None or s.is_zero():
            out["degenerate"] += 1
            continue
        out["printed_off"] += not z_proportional(s, rho(family, p))
        out["derived_off"] += not (s - rho_derived(family, p)).is_zero()
    return out


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    for family in ("I", "II"):
        print(family, survey(family, args.count, args.seed))


if __name__ == "__main__":
    main()

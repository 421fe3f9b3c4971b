"""Command-line entry point: ``reflectcg <command> [options]``.

Exit codes: 0 every check passed, 1 a check failed (counterexample or
inconclusive), 2 usage or parse error.  Settings resolve as
flags > REFLECTCG_* environment variables > defaults.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from typing import Optional

from .algebra import PrimeField, UnluckyPoint
from .report import Report

COMMANDS = (
    "build-r", "check-r", "check-ybe", "build-k", "check-k", "classify-k", "check-re",
    "check-38", "certify", "varieties", "sample", "appendix-b", "check-all",
)
FAMILIES = ("I", "II", "C", "adT", "diag")
DEFAULTS = {"mode": "modp", "prime": 1000003, "reps": 7, "seed": 0, "out": "text"}
# --reps means sample count for these commands
REPS_DEFAULTS = {"appendix-b": 50, "check-ybe": 10}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    mode: str = "modp"
    prime: int = 1000003
    reps: int = 7
    seed: int = 0
    out: str = "text"
    params: Optional[str] = None
    family: Optional[str] = None
    count: int = 25
    kind: Optional[str] = None
    coords: Optional[str] = None
    target: Optional[str] = None
    basis: tuple = ()
    cleared: bool = False
    dump_forms: bool = False
    action: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.mode not in ("symbolic", "exact", "modp"):
            raise UsageError(f"unknown mode {self.mode!r}")
        if self.reps < 1:
            raise UsageError("--reps must be at least 1")
        if self.count < 1:
            raise UsageError("--count must be at least 1")
        if self.mode == "modp":
            try:
                PrimeField(self.prime)
            except ValueError as e:
                raise UsageError(str(e)) from None
        if self.out not in ("json", "latex", "text"):
            raise UsageError(f"unsupported output format {self.out!r}")


def _env_int(name: str):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


def resolve(args: argparse.Namespace) -> RunConfig:
    """Apply the precedence flags > environment > defaults."""
    env = {"prime": _env_int("REFLECTCG_PRIME"), "seed": _env_int("REFLECTCG_SEED")}

    def pick(key):
        flag = getattr(args, key, None)
        if flag is not None:
            return flag
        if env.get(key) is not None:
            return env[key]
        if key == "reps":
            return REPS_DEFAULTS.get(args.command, DEFAULTS["reps"])
        return DEFAULTS[key]

    return RunConfig(
        command=args.command,
        mode=pick("mode"),
        prime=pick("prime"),
        reps=pick("reps"),
        seed=pick("seed"),
        out=pick("out"),
        params=getattr(args, "params", None),
        family=getattr(args, "family", None),
        count=25 if getattr(args, "count", None) is None else args.count,
        kind=getattr(args, "kind", None),
        coords=getattr(args, "coords", None),
        target=getattr(args, "target", None),
        basis=tuple(b for b in (getattr(args, "basis", None) or "").split(",") if b),
        cleared=bool(getattr(args, "cleared", False)),
        dump_forms=bool(getattr(args, "dump_forms", False)),
        action=getattr(args, "action", None),
    )


# --------------------------------------------------------------------------
# helpers


def _load_k(cfg: RunConfig):
    """(family, params, K) from --params, or a seeded random draw of --family."""
    from .kmatrix import build_sample, load_params, random_params

    if cfg.params:
        try:
            p = load_params(cfg.params)
        except (OSError, ValueError) as e:
            raise UsageError(str(e)) from None
        family = p.to_json().get("family") or type(p).__name__.replace("Point", "")
        if family == "C" and cfg.family == "adT":
            family = "adT"
        return family, p, build_sample(family, p)
    family = cfg.family or "I"
    p = random_params(family, random.Random(cfg.seed))
    return family, p, build_sample(family, p)


def _re_modp(k, cfg: RunConfig) -> Report:
    from .reflection import re_holds_modp
    from .rmatrix import random_point

    report = Report(provenance={"mode": "modp", "prime": cfg.prime, "reps": cfg.reps, "seed": cfg.seed})
    field_ = PrimeField(cfg.prime)
    rng = random.Random(cfg.seed)
    for rep in range(cfg.reps):
        with report.timed(f"re.modp.{rep}") as slot:
            while True:
                pt = random_point(rng, ("z1", "z2", "q"), field_)
                try:
                    slot["ok"] = re_holds_modp(k, [pt])
                    break
                except UnluckyPoint:
                    continue
            slot["detail"] = {"point": pt.assignment}
    return report


# --------------------------------------------------------------------------
# commands; each returns (report or None, artifact to print or None)


def cmd_build_r(cfg):
    from .rmatrix import build_r

    return None, build_r(cfg.cleared)


def cmd_check_r(cfg):
    from .rmatrix import verify_r_symmetries, verify_ybe

    report = Report(provenance={"mode": cfg.mode, "seed": cfg.seed, "prime": cfg.prime, "reps": cfg.reps})
    report.extend(verify_r_symmetries(cleared=False))
    report.extend(verify_r_symmetries(cleared=True), "cleared.")
    if cfg.mode == "modp":
        report.extend(verify_ybe("modp", reps=cfg.reps, seed=cfg.seed, prime=cfg.prime))
    return report, None


def cmd_check_ybe(cfg):
    from .rmatrix import verify_ybe

    mode = "symbolic" if cfg.mode in ("symbolic", "exact") else "modp"
    return verify_ybe(mode, reps=cfg.reps, seed=cfg.seed, prime=cfg.prime), None


def cmd_build_k(cfg):
    _, _, k = _load_k(cfg)
    return None, k


def cmd_check_k(cfg):
    from .kmatrix import check_solution, verify_transform_laws

    family, p, k = _load_k(cfg)
    report = check_solution(family, p, k)
    if family in ("I", "II"):
        report.extend(verify_transform_laws(family, p))
    return report, None


def cmd_classify_k(cfg):
    from .kmatrix import classify_k

    _, _, k = _load_k(cfg)
    c = classify_k(k)
    report = Report(provenance={"classification": c.to_json()})
    report.add("k.classified", c.label != "none", c.to_json())
    return report, c.to_json() if cfg.out == "json" else None


def cmd_check_re(cfg):
    from .reflection import all_component_forms, re_holds

    if cfg.dump_forms:
        from .reflection import index_label

        forms = all_component_forms()
        return None, {"forms": {index_label(i).strip("()").replace("|", ""): g.to_json() for i, g in forms.items()}}
    _, p, k = _load_k(cfg)
    if cfg.mode in ("symbolic", "exact"):
        report = Report(provenance={"mode": "symbolic", "params": p.to_json()})
        with report.timed("re.symbolic") as slot:
            slot["ok"] = re_holds(k)
        return report, None
    return _re_modp(k, cfg), None


def cmd_check_38(cfg):
    from .reduced import group_table_check, verify_equivalence, verify_identities, verify_staged

    if cfg.mode in ("symbolic", "exact"):
        report = verify_identities()
        report.extend(group_table_check())
        return report, None
    report = verify_equivalence(reps=cfg.reps, seed=cfg.seed, prime=cfg.prime)
    report.extend(verify_staged(reps=cfg.reps, seed=cfg.seed, prime=cfg.prime))
    return report, None


def cmd_certify(cfg):
    from .reduced import certify_display

    if not cfg.target or not cfg.basis:
        raise UsageError("certify needs --target and --basis")
    try:
        res = certify_display(cfg.target, list(cfg.basis), seed=cfg.seed)
    except (KeyError, ValueError) as e:
        raise UsageError(str(e)) from None
    report = Report(provenance={"target": cfg.target, "basis": list(cfg.basis)})
    coeffs = None if res.coefficients is None else [str(c) for c in res.coefficients]
    report.add("certify", res.member, {"status": res.status, "coefficients": coeffs})
    return report, None


def cmd_varieties(cfg):
    from . import varieties as V

    if cfg.action == "check":
        if not cfg.kind or cfg.coords is None:
            raise UsageError("varieties check needs --kind and --coords")
        try:
            coords = json.loads(cfg.coords)
            m = V.membership_check(cfg.kind, coords)
        except json.JSONDecodeError as e:
            raise UsageError(f"--coords: {e.msg} at line {e.lineno} column {e.colno}") from None
        except (KeyError, TypeError, ValueError) as e:
            raise UsageError(f"--coords: {e}") from None
        report = Report(provenance={"kind": cfg.kind})
        report.add(f"varieties.member.{cfg.kind}", m.ok, {"failing": m.failing})
        return report, None
    report = V.verify_varieties_symbolic()
    report.extend(V.verify_rank1_agreement(100, cfg.seed))
    report.extend(V.verify_decomposition(100, cfg.seed))
    return report, None


def cmd_sample(cfg):
    from .varieties import sample_solutions

    family = cfg.family or "I"
    report = Report(provenance={"family": family, "count": cfg.count, "seed": cfg.seed})
    for n, (_, _, r) in enumerate(sample_solutions(family, cfg.count, cfg.seed)):
        report.extend(r, f"sample.{family}.{n:03d}.")
    return report, None


def cmd_ansatz(cfg):
    from .ansatz import ansatz_pipeline, verify_catalog, CORRECTED_CATALOG

    report = ansatz_pipeline(cfg.reps, cfg.seed)
    report.extend(verify_catalog(catalog=CORRECTED_CATALOG), "corrected.")
    return report, None


def cmd_check_all(cfg):
    """Every acceptance check in dependency order."""
    from .acceptance import run_all

    return run_all(cfg), None


HANDLERS = {
    "build-r": cmd_build_r,
    "check-r": cmd_check_r,
    "check-ybe": cmd_check_ybe,
    "build-k": cmd_build_k,
    "check-k": cmd_check_k,
    "classify-k": cmd_classify_k,
    "check-re": cmd_check_re,
    "check-38": cmd_check_38,
    "certify": cmd_certify,
    "varieties": cmd_varieties,
    "sample": cmd_sample,
    "appendix-b": cmd_ansatz,
    "check-all": cmd_check_all,
}


def run(cfg: RunConfig):
    return HANDLERS[cfg.command](cfg)


# --------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=("symbolic", "exact", "modp"), default=None)
    p.add_argument("--prime", type=int, default=None)
    p.add_argument("--reps", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", choices=("json", "latex", "text"), default=None)
    p.add_argument("--report", dest="out", choices=("json", "text"), default=None, help="alias of --out")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reflectcg", description="Exact checks for the CG R-matrix and its K-matrices.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        _common(p)
        if name == "build-r":
            p.add_argument("--cleared", action="store_true", help="polynomial (cleared) entries")
        if name in ("build-k", "check-k", "classify-k", "check-re"):
            p.add_argument("--params", help="parameter JSON file")
            p.add_argument("--k", dest="params", help="alias of --params")
            p.add_argument("--family", choices=FAMILIES)
        if name == "check-re":
            p.add_argument("--dump-forms", action="store_true", help="print the 81 component forms")
        if name == "certify":
            p.add_argument("--target", required=False)
            p.add_argument("--basis", required=False, help="comma separated form names")
        if name == "varieties":
            p.add_argument("action", nargs="?", choices=("check",))
            p.add_argument("--kind")
            p.add_argument("--coords")
        if name == "sample":
            p.add_argument("--family", choices=FAMILIES)
            p.add_argument("--count", type=int)
    return parser


def _print_artifact(obj, cfg: RunConfig) -> None:
    from .serialize import emit

    if isinstance(obj, dict):
        sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")
        return
    fmt = cfg.out
    sys.stdout.write(emit(obj, fmt))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        cfg = resolve(args)
        report, artifact = run(cfg)
    except UsageError as e:
        print(f"reflectcg: error: {e}", file=sys.stderr)
        return 2
    if report is not None:
        if artifact is None:
            sys.stdout.write(report.to_json() + "\n" if cfg.out == "json" else report.to_text() + "\n")
        else:
            _print_artifact(artifact, cfg)
        return report.exit_code()
    _print_artifact(artifact, cfg)
    return 0


if __name__ == "__main__":
    sys.exit(main())

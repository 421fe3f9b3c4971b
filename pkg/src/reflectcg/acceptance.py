"""The twelve acceptance criteria as report-producing functions.

``run_all`` executes them in dependency order (R, YBE, forms, the 38
system, K families, varieties, the a1 != 0 ansatz) and prefixes every
verdict with its criterion number.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from .report import FAIL, PASS, Report


@dataclass(frozen=True)
class Settings:
    seed: int = 0
    prime: int = 1000003
    reps: int = 7
    samples: int = 25


def c01_ybe(s: Settings) -> Report:
    from .rmatrix import verify_ybe

    start = time.perf_counter()
    report = verify_ybe("symbolic", cleared=True)
    report.add("ybe.under_30s", time.perf_counter() - start < 30, round(time.perf_counter() - start, 2))
    return report


def c02_r_symmetries(s: Settings) -> Report:
    from .rmatrix import verify_r_symmetries

    return verify_r_symmetries(cleared=False)


def c03_zero_components(s: Settings) -> Report:
    from .reflection import re_component_form

    report = Report()
    for idx in ((0, 0, 1, 1), (0, 0, 2, 2), (2, 2, 1, 1), (2, 2, 0, 0)):
        g = re_component_form(idx)
        report.add("forms.zero.(%d%d|%d%d)" % idx, g.is_zero(), {"nonzero": len([1 for c in g.coeffs.values() if c])})
    return report


def c04_t_covariance(s: Settings) -> Report:
    from .reflection import INDICES, index_label, re_component_form, t_index, t_transform_form

    report = Report()
    bad = []
    start = time.perf_counter()
    for cleared in (False, True):
        for idx in INDICES:
            lhs = t_transform_form(re_component_form(idx, cleared))
            rhs = re_component_form(t_index(idx), cleared)
            if not (lhs - rhs).is_zero():
                bad.append((cleared, index_label(idx)))
    report.add("forms.t_covariance", not bad, {"failures": bad[:5]}, time.perf_counter() - start)
    return report


def c05_identities(s: Settings) -> Report:
    from .reduced import verify_identities

    return verify_identities()


def c06_equivalence(s: Settings) -> Report:
    from .reduced import verify_equivalence

    report = Report(provenance={"reps": s.reps, "prime": s.prime})
    for seed in (s.seed, s.seed + 1, s.seed + 2):
        report.extend(verify_equivalence(reps=s.reps, seed=seed, prime=s.prime, staged=False), f"seed{seed}.")
    return report


def c07_q_free(s: Settings) -> Report:
    from .reduced import named_forms, q_free

    report = Report()
    bad = [nf.name for nf in named_forms("primed") if not q_free(nf.form)]
    report.add("reduced.q_free", not bad, bad)
    return report


def c08_families(s: Settings) -> Report:
    """RE, scalar unitarity and rho for sampled members of every family.

    The printed-rho comparison is kept as its own verdict so that its
    failure is visible rather than folded into the rest.
    """
    from .kmatrix import DiagonalParams, build_sample, check_solution, random_params, verify_k_unitarity

    rng = random.Random(s.seed)
    report = Report(provenance={"seed": s.seed, "samples": s.samples})
    for family, count in (("I", s.samples), ("II", s.samples), ("C", 5), ("adT", 5)):
        failing, printed_bad = {}, 0
        for _ in range(count):
            p = random_params(family, rng)
            k = build_sample(family, p)
            r = check_solution(family, p, k, classify=False)
            if family in ("I", "II"):
                pr = verify_k_unitarity(family, p, k)
                printed_bad += not next(v for v in pr.verdicts if v.name == "k.unitarity.rho_printed").ok
            for v in r.failures():
                failing[v.name] = failing.get(v.name, 0) + 1
        report.add(f"family.{family}.re_and_unitarity", not failing, {"samples": count, "failing": failing})
        if family in ("I", "II"):
            report.add(f"family.{family}.rho_printed_proportional", printed_bad == 0,
                       {"samples": count, "not_proportional": printed_bad})
    for branch in (1, 2):
        failing = 0
        for _ in range(5):
            p = DiagonalParams(random_params("diag", rng).c, branch)
            failing += not check_solution("diag", p, classify=False).ok
        report.add(f"family.diag{branch}.re_and_unitarity", failing == 0, {"failing": failing})
    return report


def c09_transform_laws(s: Settings) -> Report:
    from .kmatrix import random_params, verify_transform_laws

    rng = random.Random(s.seed)
    report = Report(provenance={"seed": s.seed})
    for family in ("I", "II"):
        failing = {}
        for _ in range(10):
            r = verify_transform_laws(family, random_params(family, rng))
            for v in r.failures():
                failing[v.name] = failing.get(v.name, 0) + 1
        report.add(f"laws.{family}", not failing, {"points": 10, "failing": failing})
    return report


def c10_varieties(s: Settings) -> Report:
    from .varieties import verify_rank1_agreement, verify_varieties_symbolic

    report = verify_varieties_symbolic()
    report.extend(verify_rank1_agreement(100, s.seed))
    return report


def c11_ansatz(s: Settings) -> Report:
    from .ansatz import verify_cases, verify_necessity, verify_ta2_residual

    report = verify_ta2_residual()
    report.extend(verify_cases(50, s.seed))
    report.extend(verify_necessity(50, s.seed))
    return report


def c12_classify(s: Settings) -> Report:
    from .kmatrix import verify_classify_roundtrip

    return verify_classify_roundtrip(50, s.seed)


CRITERIA: tuple = (
    (1, "YBE symbolic residual is zero", c01_ybe),
    (2, "R unitarity, conservation, T-invariance", c02_r_symmetries),
    (3, "four RE components vanish identically", c03_zero_components),
    (4, "T-covariance of all 81 component forms", c04_t_covariance),
    (5, "displayed linear-combination identities", c05_identities),
    (6, "81 components <=> 38 reduced forms (3 seeds)", c06_equivalence),
    (7, "reduced forms are q-free", c07_q_free),
    (8, "solution families: RE, unitarity, rho", c08_families),
    (9, "ad G and ad T laws", c09_transform_laws),
    (10, "varieties: symbolic parametrizations, rank-1", c10_varieties),
    (11, "a1 != 0 ansatz: residual, sufficiency, necessity", c11_ansatz),
    (12, "classify round-trip", c12_classify),
)


def run_criterion(number: int, settings: Settings | None = None) -> Report:
    settings = settings or Settings()
    for n, _, fn in CRITERIA:
        if n == number:
            return fn(settings)
    raise KeyError(f"no criterion {number}")


def summary_line(number: int, title: str, report: Report) -> str:
    status = PASS if report.ok else FAIL
    line = f"[{status.upper()}] criterion {number:2d}: {title}"
    if not report.ok:
        line += "  (failing: " + ", ".join(v.name for v in report.failures()) + ")"
    return line


def run_all(cfg=None) -> Report:
    settings = Settings(
        seed=getattr(cfg, "seed", 0),
        prime=getattr(cfg, "prime", 1000003),
        reps=getattr(cfg, "reps", 7),
    )
    out = Report(provenance={"seed": settings.seed, "prime": settings.prime, "reps": settings.reps})
    for n, title, fn in CRITERIA:
        start = time.perf_counter()
        r = fn(settings)
        out.extend(r, f"c{n:02d}.")
        out.add(f"c{n:02d}", r.ok, title, time.perf_counter() - start)
    return out

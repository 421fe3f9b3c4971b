"""Projective varieties parametrizing the solution families.

Coordinates are Q(w) scalars (:class:`Coefficient`) or, for identities
with indeterminate parameters, Laurent polynomials in parameter symbols.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .algebra import Coefficient, LaurentPoly
from .report import Report


def coord(x):
    """Coerce one coordinate: LaurentPoly stays symbolic, the rest become Coefficient."""
    if isinstance(x, LaurentPoly):
        return x
    return Coefficient.coerce(x)


def is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, LaurentPoly) else not x


def _tuple(xs, n: int, what: str) -> tuple:
    xs = tuple(coord(x) for x in xs)
    if len(xs) != n:
        raise ValueError(f"{what} needs {n} coordinates, got {len(xs)}")
    return xs


def require_nonzero(xs, what: str) -> None:
    if all(is_zero(x) for x in xs):
        raise ValueError(f"{what}: all-zero projective coordinates")


def coord_str(x) -> str:
    return str(x)


# --------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class VIPoint:
    a: tuple
    abar: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", _tuple(self.a, 5, "a"))
        object.__setattr__(self, "abar", _tuple(self.abar, 5, "abar"))
        require_nonzero(self.coords(), "VIPoint")

    @classmethod
    def from_coords(cls, xs) -> "VIPoint":
        xs = list(xs)
        if len(xs) != 10:
            raise ValueError(f"VIPoint needs 10 coordinates, got {len(xs)}")
        return cls(tuple(xs[:5]), tuple(xs[5:]))

    def coords(self) -> list:
        return list(self.a) + list(self.abar)

    def normalized(self) -> "VIPoint":
        return VIPoint.from_coords(normalize(self.coords()))

    def to_json(self) -> dict:
        return {"a": [coord_str(x) for x in self.a], "abar": [coord_str(x) for x in self.abar]}


@dataclass(frozen=True)
class VIIPoint:
    b: object
    bs: tuple

    def __post_init__(self):
        object.__setattr__(self, "b", coord(self.b))
        object.__setattr__(self, "bs", _tuple(self.bs, 6, "b0..b5"))
        require_nonzero(self.coords(), "VIIPoint")

    @classmethod
    def from_coords(cls, xs) -> "VIIPoint":
        xs = list(xs)
        if len(xs) != 7:
            raise ValueError(f"VIIPoint needs 7 coordinates, got {len(xs)}")
        return cls(xs[0], tuple(xs[1:]))

    def coords(self) -> list:
        return [self.b, *self.bs]

    def normalized(self) -> "VIIPoint":
        return VIIPoint.from_coords(normalize(self.coords()))

    def to_json(self) -> dict:
        return {"b": coord_str(self.b), "bs": [coord_str(x) for x in self.bs]}


@dataclass(frozen=True)
class SegrePoint:
    c: tuple

    def __post_init__(self):
        object.__setattr__(self, "c", _tuple(self.c, 6, "c0..c5"))

    def coords(self) -> list:
        return list(self.c)


def normalize(xs: list) -> list:
    """Scale so the first nonzero coordinate is 1 (numeric coordinates only)."""
    lead = next((x for x in xs if x), None)
    if lead is None:
        raise ValueError("all-zero projective coordinates")
    inv = Coefficient.coerce(lead).inverse()
    return [Coefficient.coerce(x) * inv for x in xs]


def projectively_equal_coords(xs: list, ys: list) -> bool:
    if len(xs) != len(ys):
        return False
    return all(is_zero(xs[i] * ys[j] - xs[j] * ys[i]) for i, j in combinations(range(len(xs)), 2))


# --------------------------------------------------------------------------
# defining relations


def vi_relations(p: VIPoint, with_i0: bool = False) -> list:
    a0, a1, a2, a3, a4 = p.a
    b0, b1, b2, b3, b4 = p.abar  # the barred coordinates
    rel = [
        ("I1", a0 * b0 - a1 * b1),
        ("I2", a2 * b2 - a3 * b3),
        ("I3", a0 * a0 - a1 * a4),
        ("TI3", b0 * b0 - b1 * b4),
        ("I4", a1 * b0 - a0 * b4),
        ("TI4", b1 * a0 - b0 * a4),
        ("I5", a0 * a3 - a1 * b2),
        ("TI5", b0 * b3 - b1 * a2),
        ("I6", a0 * a2 - b3 * a1),
        ("TI6", b0 * b2 - a3 * b1),
        ("I7", a2 * b0 - b3 * b4),
        ("TI7", b2 * a0 - a3 * a4),
        ("I8", a2 * a4 - a0 * b3),
        ("TI8", b2 * b4 - b0 * a3),
    ]
    if with_i0:
        rel.insert(0, ("I0", a0 * b0 - a4 * b4))
    return rel


def vii_relations(p: VIIPoint) -> list:
    b0, b1, b2, b3, b4, b5 = p.bs
    return [
        ("II1", b0 * b1 - b3 * b4),
        ("II2", b1 * b2 - b4 * b5),
        ("II3", b2 * b3 - b5 * b0),
    ]


def segre_relations(s: SegrePoint) -> list:
    c0, c1, c2, c3, c4, c5 = s.c
    return [
        ("S1", c0 * c1 - c3 * c4),
        ("S2", c1 * c2 - c4 * c5),
        ("S3", c2 * c3 - c5 * c0),
    ]


def rank1_array(p: VIPoint) -> list:
    a0, a1, a2, a3, a4 = p.a
    b0, b1, b2, b3, b4 = p.abar
    return [[a0, a1, a2, a3, b0, b4], [a4, a0, b3, b2, b1, b0]]


def rank1_minors(p: VIPoint) -> list:
    top, bottom = rank1_array(p)
    return [
        (f"minor({i},{j})", top[i] * bottom[j] - top[j] * bottom[i])
        for i, j in combinations(range(6), 2)
    ]


def i0_premise(p: VIPoint) -> bool:
    a0, a1, a2, a3, _ = p.a
    b0, b1, b2, b3, _ = p.abar
    return any(not is_zero(x) for x in (a0, b0, a1, b1, a2, b2, a3, b3))


@dataclass
class Membership:
    ok: bool
    failing: list
    detail: str = ""

    def __bool__(self):
        return self.ok


def _failing(rel: list) -> list:
    return [name for name, value in rel if not is_zero(value)]


def as_point(kind: str, coords):
    if isinstance(coords, (VIPoint, VIIPoint, SegrePoint)):
        return coords
    xs = list(coords)
    if kind in ("VI", "rank1", "I0"):
        return VIPoint.from_coords(xs)
    if kind == "VII":
        return VIIPoint.from_coords(xs)
    if kind == "Segre":
        require_nonzero([coord(x) for x in xs], "SegrePoint")
        return SegrePoint(tuple(xs))
    raise ValueError(f"unknown variety kind {kind!r}")


def membership_check(kind: str, coords) -> Membership:
    """Evaluate the defining relations of one variety exactly."""
    kind = {"vi": "VI", "vii": "VII", "segre": "Segre"}.get(kind, kind)
    p = as_point(kind, coords)
    if kind == "VI":
        bad = _failing(vi_relations(p))
    elif kind == "VII":
        bad = _failing(vii_relations(p))
    elif kind == "Segre":
        require_nonzero(p.coords(), "SegrePoint")
        bad = _failing(segre_relations(p))
    elif kind == "rank1":
        bad = _failing(rank1_minors(p))
    elif kind == "I0":
        if not i0_premise(p):
            return Membership(True, [], "premise not met")
        a0, b0, a4, b4 = p.a[0], p.abar[0], p.a[4], p.abar[4]
        bad = [] if is_zero(a0 * b0 - a4 * b4) else ["I0"]
    else:
        raise ValueError(f"unknown variety kind {kind!r}")
    return Membership(not bad, bad)


def vi_component(p: VIPoint):
    """'V0' or 'V1' for points of V_I, None otherwise."""
    if not membership_check("VI", p):
        return None
    rest = list(p.a[:4]) + list(p.abar[:4])
    if all(is_zero(x) for x in rest) and not is_zero(p.a[4] * p.abar[4]):
        return "V0"
    return "V1" if membership_check("rank1", p) else None


# --------------------------------------------------------------------------
# parametrizations


def psi(d, e) -> SegrePoint:
    d1, d2 = (coord(x) for x in d)
    e1, e2, e3 = (coord(x) for x in e)
    return SegrePoint((d1 * e1, d2 * e3, d1 * e2, d2 * e1, d1 * e3, d2 * e2))


def w_point(b, s: SegrePoint) -> VIPoint:
    """Point of W from (B1, B2) and (A1, A1bar, B2bar, A2, A2bar, B1bar) in S."""
    b1, b2 = (coord(x) for x in b)
    x1, y1, v2, x2, y2, v1 = s.c
    return VIPoint(
        (x1 * x2, x1 * x1, b2 * v2, b1 * v2, x2 * x2),
        (y1 * y2, y1 * y1, b1 * v1, v1 * b2, y2 * y2),
    )


def vi1_parametrize(p) -> VIPoint:
    b1, b2 = p.B
    d1, d2 = p.D
    e1, e2, e3 = p.E
    return VIPoint(
        (d1 * d2 * e1 * e1, d1 * d1 * e1 * e1, d1 * e2 * b2, d1 * e2 * b1, d2 * d2 * e1 * e1),
        (d1 * d2 * e3 * e3, d2 * d2 * e3 * e3, d2 * e2 * b1, d2 * e2 * b2, d1 * d1 * e3 * e3),
    )


def vii_from_params(p) -> VIIPoint:
    """(b, b0..b5) of K_II(z, b, F, G); (b0..b5) is psi(F, G)."""
    return VIIPoint(p.b, tuple(psi(p.F, p.G).c))


def vii_preimage(point: VIIPoint):
    """ParamsII whose K_II equals the B_II matrix of ``point``, or None."""
    from .kmatrix import ParamsII

    b0, b1, b2, b3, b4, b5 = point.bs
    rows = [[b0, b2, b4], [b3, b5, b1]]  # F_i * G_j
    if not membership_check("VII", point):
        return None
    i = next((r for r in range(2) if any(rows[r])), None)
    if i is None:
        return None
    g = rows[i]
    j = next(c for c in range(3) if g[c])
    f = [rows[r][j] / g[j] for r in range(2)]
    return ParamsII(point.b, tuple(f), tuple(g))


def vi1_preimage(point: VIPoint):
    """ParamsI with vi1_parametrize(p) proportional to ``point``, or None.

    Needs a square root of E3**2 / E1**2 inside Q(w); returns None when
    that root does not exist there or the point is not in V_I^1.
    """
    from .kmatrix import ParamsI

    a0, a1, a2, a3, a4 = point.a
    b0, b1, b2, b3, b4 = point.abar
    if vi_component(point) != "V1":
        return None
    d = next(((x, y) for x, y in ((a1, a0), (a0, a4), (b4, b0), (b0, b1), (a3, b2), (a2, b3)) if x or y), None)
    if d is None:
        return None
    d1, d2 = d
    if d1:
        s, t, u = a1 / (d1 * d1), b4 / (d1 * d1), (a3 / d1, a2 / d1)
    else:
        s, t, u = a4 / (d2 * d2), b1 / (d2 * d2), (b2 / d2, b3 / d2)
    if s:
        lam = s.inverse()
        r = (t * lam).sqrt()
        if r is None:
            return None
        e1, e3 = Coefficient(1), r
    elif t:
        lam = t.inverse()
        e1, e3 = Coefficient(0), Coefficient(1)
    else:
        lam = Coefficient(1)
        e1, e3 = Coefficient(0), Coefficient(0)
    if u[0] or u[1]:
        e2, bb = Coefficient(1), (u[0] * lam, u[1] * lam)
    else:
        e2, bb = Coefficient(0), (Coefficient(1), Coefficient(0))
    try:
        p = ParamsI(bb, (d1, d2), (e1, e2, e3))
    except ValueError:
        return None
    if not projectively_equal_coords(vi1_parametrize(p).coords(), point.coords()):
        return None
    return p


# --------------------------------------------------------------------------
# random exact data


def random_rational(rng: random.Random, height: int = 9) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_coefficient(rng: random.Random, height: int = 9, omega: bool = True, nonzero: bool = False) -> Coefficient:
    while True:
        om = random_rational(rng, height) if omega and rng.random() < 0.5 else 0
        c = Coefficient(random_rational(rng, height), om)
        if c or not nonzero:
            return c


def random_projective(rng: random.Random, n: int, height: int = 9, omega: bool = True, zero_rate: float = 0.2) -> tuple:
    while True:
        xs = tuple(
            Coefficient(0) if rng.random() < zero_rate else random_coefficient(rng, height, omega, nonzero=True)
            for _ in range(n)
        )
        if any(xs):
            return xs


# --------------------------------------------------------------------------
# reports


def verify_varieties_symbolic() -> Report:
    """psi lands in S and vi1_parametrize in V_I^1, with indeterminate parameters."""
    from .algebra import register_variables, var

    names = ("B1", "B2", "D1", "D2", "E1", "E2", "E3")
    register_variables(*names)
    b1, b2, d1, d2, e1, e2, e3 = (var(n) for n in names)
    report = Report(provenance={"parameters": list(names)})
    with report.timed("varieties.psi_in_segre") as slot:
        bad = _failing(segre_relations(psi((d1, d2), (e1, e2, e3))))
        slot["ok"], slot["detail"] = not bad, {"failing": bad}

    class _P:
        B, D, E = (b1, b2), (d1, d2), (e1, e2, e3)

    point = vi1_parametrize(_P)
    with report.timed("varieties.vi1_in_vi") as slot:
        bad = _failing(vi_relations(point, with_i0=True))
        slot["ok"], slot["detail"] = not bad, {"failing": bad}
    with report.timed("varieties.vi1_rank1") as slot:
        bad = _failing(rank1_minors(point))
        slot["ok"], slot["detail"] = not bad, {"failing": bad}
    with report.timed("varieties.w_consistency") as slot:
        w = w_point((b1, b2), psi((d1, d2), (e1, e2, e3)))
        same = all(is_zero(x - y) for x, y in zip(w.coords(), point.coords()))
        slot["ok"], slot["detail"] = same, None
    return report


def sample_vi_point(rng: random.Random):
    """A point of V_I: mostly from the U_I parametrization, sometimes V_I^0 or random."""
    from .kmatrix import ParamsI

    roll = rng.random()
    if roll < 0.15:
        return VIPoint((0, 0, 0, 0, random_coefficient(rng, nonzero=True)), (0, 0, 0, 0, random_coefficient(rng, nonzero=True)))
    if roll < 0.3:
        return VIPoint.from_coords(random_projective(rng, 10, zero_rate=0.3))
    return vi1_parametrize(ParamsI(random_projective(rng, 2), random_projective(rng, 2), random_projective(rng, 3)))


def verify_rank1_agreement(count: int = 100, seed: int = 0) -> Report:
    """Rank-1 minors and the fifteen relations agree on sampled points, both ways."""
    rng = random.Random(seed)
    report = Report(provenance={"count": count, "seed": seed})
    agree = members = 0
    mismatches = []
    for k in range(count):
        p = sample_vi_point(rng)
        fifteen = not _failing(vi_relations(p, with_i0=True))
        r1 = bool(membership_check("rank1", p))
        members += fifteen
        if fifteen == r1:
            agree += 1
        else:
            mismatches.append(p.to_json())
    report.add("varieties.rank1_agreement", agree == count, {"agree": agree, "members": members, "mismatches": mismatches[:3]})
    return report


def verify_decomposition(count: int = 100, seed: int = 0) -> Report:
    """Each sampled V_I point with the I0 premise lies in exactly one of V_I^0, V_I^1."""
    rng = random.Random(seed)
    report = Report(provenance={"count": count, "seed": seed})
    bad = []
    seen = {"V0": 0, "V1": 0}
    for _ in range(count):
        p = sample_vi_point(rng)
        if not membership_check("VI", p):
            continue
        in0 = all(is_zero(x) for x in list(p.a[:4]) + list(p.abar[:4])) and not is_zero(p.a[4] * p.abar[4])
        in1 = bool(membership_check("rank1", p))
        if i0_premise(p) and not membership_check("I0", p):
            bad.append(("I0", p.to_json()))
        if in0 == in1:
            bad.append(("cover", p.to_json()))
        else:
            seen["V0" if in0 else "V1"] += 1
    report.add("varieties.decomposition", not bad, {"seen": seen, "bad": bad[:3]})
    return report


# --------------------------------------------------------------------------
# sampled solutions and the subspace propositions


# (name, coordinate condition, K entry (row k, column l) that must be nonzero)
SUBSPACE_RULES_I = (
    ("a0!=0 <=> c^0_1", lambda p: not is_zero(p.a[0]), (0, 1)),
    ("a1!=0 <=> c^0_2", lambda p: not is_zero(p.a[1]), (0, 2)),
    ("abar0!=0 <=> c^2_1", lambda p: not is_zero(p.abar[0]), (2, 1)),
    ("abar1!=0 <=> c^2_0", lambda p: not is_zero(p.abar[1]), (2, 0)),
)
SUBSPACE_RULES_II = (
    ("b0!=0 <=> c^0_2", lambda p: not is_zero(p.bs[0]), (0, 2)),
    ("b1!=0 <=> c^2_0", lambda p: not is_zero(p.bs[1]), (2, 0)),
)
# one-way implications among solutions with c^0_1 = c^0_2 = c^2_1 = c^2_0 = 0
SUBSPACE_IMPLICATIONS = (
    ("I", "a0=abar0=a1=abar1=0, a2!=0 => c^1_2",
     lambda p: all(is_zero(x) for x in (p.a[0], p.abar[0], p.a[1], p.abar[1])) and not is_zero(p.a[2]), (1, 2)),
    ("I", "a0=abar0=a1=abar1=0, abar2!=0 => c^1_0",
     lambda p: all(is_zero(x) for x in (p.a[0], p.abar[0], p.a[1], p.abar[1])) and not is_zero(p.abar[2]), (1, 0)),
    ("II", "b0=b1=0, b2!=0 => c^1_2",
     lambda p: is_zero(p.bs[0]) and is_zero(p.bs[1]) and not is_zero(p.bs[2]), (1, 2)),
    ("II", "b0=b1=0, b5!=0 => c^1_0",
     lambda p: is_zero(p.bs[0]) and is_zero(p.bs[1]) and not is_zero(p.bs[5]), (1, 0)),
)


def subspace_checks(point, k) -> list:
    """(rule, applicable, ok) for each entry-pattern rule relevant to point."""
    family = "I" if isinstance(point, VIPoint) else "II"
    out = []
    for name, cond, (r, c) in SUBSPACE_RULES_I if family == "I" else SUBSPACE_RULES_II:
        out.append((name, True, cond(point) == (not k[r, c].is_zero())))
    for fam, name, cond, (r, c) in SUBSPACE_IMPLICATIONS:
        if fam == family and cond(point):
            out.append((name, True, not k[r, c].is_zero()))
    return out


def _variety_point(family: str, p):
    if family == "I":
        return vi1_parametrize(p)
    if family == "II":
        return vii_from_params(p)
    return None


def sample_solutions(family: str, count: int, seed: int = 0, zero_rate: float = 0.25) -> list:
    """Draw exact random parameters, build K and check it.

    Returns a list of (params, K, report).  For families I and II the
    report also carries the subspace entry-pattern checks on the matching
    variety point.  A fairly high zero rate makes the degenerate subspaces
    (for instance b0 = b1 = 0) show up in small samples.
    """
    from .kmatrix import build_from_variety, build_sample, check_solution, random_params

    if count < 1:
        raise ValueError("count must be at least 1")
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        p = random_params(family, rng, zero_rate=zero_rate)
        k = build_sample(family, p)
        report = check_solution(family, p, k)
        point = _variety_point(family, p)
        if point is not None:
            # the variety matrix and the parametrized one agree projectively
            from .algebra import projectively_equal

            report.add("k.variety_matrix", projectively_equal(k, build_from_variety(point)))
            for name, _, ok in subspace_checks(point, k):
                report.add(f"k.subspace[{name}]", ok)
        out.append((p, k, report))
    return out

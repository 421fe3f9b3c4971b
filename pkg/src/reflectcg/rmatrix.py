"""The N=3 Cremmer-Gervais R-matrix and the constant site operators.

Index conventions (used everywhere in the package): a matrix A acts by
A e_j = sum_i A[i][j] e_i, and the two-site basis vector e_i1 (x) e_i2 has
flat index 3*i1 + i2.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .algebra import (
    Coefficient,
    EvalPoint,
    LaurentPoly,
    Matrix,
    PrimeField,
    RatFn,
    UnluckyPoint,
    kron,
    var,
)
from .report import Report

N = 3


def flat(i: int, j: int) -> int:
    return N * i + j


def unflat(a: int) -> tuple:
    return divmod(a, N)


def _sgn(x: int) -> int:
    if x == 0:
        raise AssertionError("sgn(0) is unreachable in the R-matrix cases")
    return 1 if x > 0 else -1


def cg_entry(i: int, j: int, k: int, l: int, cleared: bool = False, zname: str = "z"):
    """R^{ij}_{kl}: row (i, j), column (k, l).

    With ``cleared`` the entry is multiplied by (q - 1/q)(z - 1/z) and is a
    Laurent polynomial; otherwise a RatFn.
    """
    for x in (i, j, k, l):
        if not 0 <= x < N:
            raise ValueError(f"index {x} out of range")
    z, q = var(zname), var("q")
    zi, qi = z ** -1, q ** -1
    dq, dz = q - qi, z - zi
    if i == j == k == l:
        num = q * zi - qi * z
    elif i == k and j == l:
        num = -(q ** _sgn(k - l)) * dz
    elif l == i and k == j:
        num = z ** _sgn(l - k) * dq
    elif min(k, l) < i < max(k, l) and i + j == k + l:
        num = dq * dz * _sgn(l - k)
    else:
        num = LaurentPoly.zero()
    if cleared:
        return num
    return RatFn(num, dq * dz)


@dataclass(frozen=True)
class RMatrix:
    mat: Matrix
    cleared: bool

    def entry(self, i, j, k, l):
        return self.mat[flat(i, j), flat(k, l)]


@lru_cache(maxsize=None)
def build_r(cleared: bool = True) -> RMatrix:
    rows = []
    for a in range(N * N):
        i, j = unflat(a)
        row = []
        for b in range(N * N):
            k, l = unflat(b)
            row.append(cg_entry(i, j, k, l, cleared))
        rows.append(row)
    return RMatrix(Matrix(rows), cleared)


def clearing_factor(zname: str = "z") -> LaurentPoly:
    z, q = var(zname), var("q")
    return (q - q ** -1) * (z - z ** -1)


# --------------------------------------------------------------------------
# site operators


def identity(n: int = N) -> Matrix:
    return Matrix.identity(n)


def g_op(power: int = 1) -> Matrix:
    w = Coefficient.omega()
    return Matrix.from_values([[w ** (j * power) if i == j else 0 for j in range(N)] for i in range(N)])


def t_op() -> Matrix:
    return Matrix.from_values([[1 if i == N - 1 - j else 0 for j in range(N)] for i in range(N)])


def p_op() -> Matrix:
    """Flip on C^3 (x) C^3."""
    rows = [[0] * (N * N) for _ in range(N * N)]
    for i in range(N):
        for j in range(N):
            rows[flat(j, i)][flat(i, j)] = 1
    return Matrix.from_values(rows)


def site_operator(kind: str) -> Matrix:
    kinds = {"G": g_op, "T": t_op, "P": p_op, "Id": identity}
    try:
        return kinds[kind]()
    except KeyError:
        raise ValueError(f"unknown site operator {kind!r}") from None


# --------------------------------------------------------------------------
# embeddings


def spectral(mat: Matrix, image, zname: str = "z") -> Matrix:
    """Substitute the spectral parameter by a Laurent monomial image."""
    return mat.substitute({zname: image})


def swap_sites(mat: Matrix) -> Matrix:
    """P M P on C^3 (x) C^3, computed by index permutation."""
    if mat.shape != (N * N, N * N):
        raise ValueError(f"expected 9x9, got {mat.shape}")
    rows = []
    for a in range(N * N):
        i1, i2 = unflat(a)
        rows.append([mat[flat(i2, i1), flat(*reversed(unflat(b)))] for b in range(N * N)])
    return Matrix(rows)


def embed(r, slot: str, image=None) -> Matrix:
    """Place a two-site operator into a slot; apply ``z -> image`` first."""
    mat = r.mat if isinstance(r, RMatrix) else r
    if mat.shape != (N * N, N * N):
        raise ValueError(f"expected a 9x9 operator, got {mat.shape}")
    if image is not None:
        mat = spectral(mat, image)
    one = identity()
    if slot == "12":
        return kron(mat, one)
    if slot == "23":
        return kron(one, mat)
    if slot == "13":
        return _embed13(mat)
    if slot == "21":
        return swap_sites(mat)
    raise ValueError(f"unknown slot {slot!r}")


def _embed13(mat: Matrix) -> Matrix:
    # (P (x) Id)(Id (x) R)(P (x) Id) acts on sites 1 and 3
    zero = mat[0, 0] * 0
    size = N ** 3
    rows = [[zero] * size for _ in range(size)]
    for a in range(N * N):
        i1, i3 = unflat(a)
        for b in range(N * N):
            x = mat[a, b]
            if not x:
                continue
            j1, j3 = unflat(b)
            for i2 in range(N):
                rows[9 * i1 + 3 * i2 + i3][9 * j1 + 3 * i2 + j3] = x
    return Matrix(rows)


# --------------------------------------------------------------------------
# verification


def ybe_sides(r: RMatrix):
    z1, z2 = var("z1"), var("z2")
    r12 = embed(r, "12", z1)
    r13 = embed(r, "13", z1 * z2)
    r23 = embed(r, "23", z2)
    return r12 @ r13 @ r23, r23 @ r13 @ r12


def default_prime() -> int:
    return 1000003


def random_point(rng: random.Random, names, field: PrimeField) -> EvalPoint:
    return EvalPoint({n: rng.randrange(2, field.p - 1) for n in names}, field)


def eval_matrix(mat: Matrix, pt: EvalPoint) -> list:
    return [[pt.evaluate(x) if x else 0 for x in row] for row in mat.data]


def modp_matmul(a: list, b: list, p: int) -> list:
    cols = len(b[0])
    brows = [[(j, x) for j, x in enumerate(r) if x] for r in b]
    out = []
    for row in a:
        acc = [0] * cols
        for k, x in enumerate(row):
            if x:
                for j, y in brows[k]:
                    acc[j] += x * y
        out.append([v % p for v in acc])
    return out


def _nonzero_cells(diff: Matrix, limit: int = 5) -> list:
    return diff.nonzero_entries()[:limit]


def verify_ybe(mode: str = "symbolic", cleared: bool = True, reps: int = 10,
               seed: int = 0, prime: int | None = None, r: RMatrix | None = None) -> Report:
    """Check R12(z1) R13(z1 z2) R23(z2) = R23(z2) R13(z1 z2) R12(z1)."""
    r = r or build_r(cleared)
    report = Report(provenance={"mode": mode, "cleared": r.cleared})
    if mode == "symbolic":
        with report.timed("ybe.symbolic") as slot:
            lhs, rhs = ybe_sides(r)
            diff = lhs - rhs
            bad = _nonzero_cells(diff)
            slot["ok"] = not bad
            slot["detail"] = {"entries": N ** 6, "nonzero": bad}
        return report
    if mode != "modp":
        raise ValueError(f"unknown mode {mode!r}")
    field = PrimeField(prime or default_prime())
    report.provenance.update(prime=field.p, seed=seed, reps=reps)
    rng = random.Random(seed)
    z1, z2 = var("z1"), var("z2")
    pieces = (embed(r, "12", z1), embed(r, "13", z1 * z2), embed(r, "23", z2))
    for rep in range(reps):
        with report.timed(f"ybe.modp.{rep}") as slot:
            while True:
                pt = random_point(rng, ("z1", "z2", "q"), field)
                try:
                    a, b, c = (eval_matrix(m, pt) for m in pieces)
                    break
                except UnluckyPoint:
                    continue
            lhs = modp_matmul(modp_matmul(a, b, field.p), c, field.p)
            rhs = modp_matmul(modp_matmul(c, b, field.p), a, field.p)
            bad = [(i, j) for i in range(27) for j in range(27) if lhs[i][j] != rhs[i][j]]
            slot["ok"] = not bad
            slot["detail"] = {"point": pt.assignment, "nonzero": bad[:5]}
    return report


def unitarity_scalar(cleared: bool) -> RatFn:
    z, q = var("z"), var("q")
    if cleared:
        return RatFn(-(q ** 2 - z ** 2) * (1 - q ** 2 * z ** 2), q ** 2 * z ** 2)
    return RatFn((q ** 2 - z ** 2) * (1 - q ** 2 * z ** 2), (q ** 2 - 1) ** 2 * (z ** 2 - 1) ** 2)


def _scalar_of(m: Matrix):
    """Return s when m = s * Id, else None."""
    s = m[0, 0]
    for i in range(m.rows):
        for j in range(m.cols):
            x = m[i, j]
            if i == j:
                if not RatFn.coerce(x) == RatFn.coerce(s):
                    return None
            elif x:
                return None
    return s


def verify_r_symmetries(cleared: bool = False) -> Report:
    r = build_r(cleared)
    z, q = var("z"), var("q")
    report = Report(provenance={"cleared": cleared})
    with report.timed("r.unitarity") as slot:
        prod = r.mat @ swap_sites(spectral(r.mat, z ** -1))
        s = _scalar_of(prod)
        expected = unitarity_scalar(cleared)
        slot["ok"] = s is not None and RatFn.coerce(s) == expected
        slot["detail"] = {"scalar": str(s), "expected": str(expected)}
    with report.timed("r.conservation") as slot:
        gg = kron(g_op(), g_op())
        diff = r.mat @ gg - gg @ r.mat
        entrywise = all(
            not r.mat[a, b] or (sum(unflat(a)) - sum(unflat(b))) % N == 0
            for a in range(N * N) for b in range(N * N)
        )
        slot["ok"] = diff.is_zero() and entrywise
        slot["detail"] = {"commutator_nonzero": _nonzero_cells(diff), "entrywise": entrywise}
    with report.timed("r.t_invariance") as slot:
        tt = kron(t_op(), t_op())
        flipped = r.mat.substitute({"z": z ** -1, "q": q ** -1})
        diff = r.mat + tt @ flipped @ tt
        slot["ok"] = diff.is_zero()
        slot["detail"] = {"nonzero": _nonzero_cells(diff)}
    return report


def nonzero_count(r: RMatrix) -> int:
    return len(r.mat.nonzero_entries())

"""Reflection equation components, concretely and as bilinear forms.

A bilinear form is sum f_{kl,mn}(z1, z2, q) u[k][l] v[m][n], where u[k][l]
stands for the K-matrix entry c^k_l(z1) (row k, column l) and v[m][n] for
c^m_n(z2).  The reflection equation

    R12(z1/z2) K1(z1) R21(z1 z2) K2(z2) = K2(z2) R12(z1 z2) K1(z1) R21(z1/z2)

has one such form per matrix entry (i1 i2 | j1 j2).
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

from .algebra import LaurentPoly, Matrix, RatFn, kron, var
from .rmatrix import N, build_r, flat, identity, spectral, swap_sites

KEYS = tuple(product(range(N), repeat=4))  # (k, l, m, n)
INDICES = KEYS  # (i1, i2, j1, j2)


def t_index(idx: tuple) -> tuple:
    return tuple(N - 1 - x for x in idx)


def index_label(idx: tuple) -> str:
    i1, i2, j1, j2 = idx
    return f"({i1}{i2}|{j1}{j2})"


def parse_index(text: str) -> tuple:
    """Accept "(01|21)", "01|21" or "0121"."""
    digits = [c for c in text if c.isdigit()]
    if len(digits) != 4 or any(int(c) >= N for c in digits):
        raise ValueError(f"bad component index {text!r}")
    return tuple(int(c) for c in digits)


def _as_ratfn(x) -> RatFn:
    return x if isinstance(x, RatFn) else RatFn(x)


def _is_zero(x) -> bool:
    return x.is_zero()


class BilinearForm:
    """Sparse map (k, l, m, n) -> coefficient (LaurentPoly or RatFn)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        for key, c in (coeffs or {}).items():
            key = tuple(key)
            if len(key) != 4 or any(not 0 <= x < N for x in key):
                raise ValueError(f"bad form key {key}")
            if not _is_zero(c):
                self.coeffs[key] = c

    @classmethod
    def term(cls, k, l, m, n, coeff=1) -> "BilinearForm":
        c = coeff if isinstance(coeff, (LaurentPoly, RatFn)) else LaurentPoly.const(coeff)
        return cls({(k, l, m, n): c})

    def __getitem__(self, key):
        return self.coeffs.get(tuple(key), LaurentPoly.zero())

    def __len__(self):
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "BilinearForm") -> "BilinearForm":
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out[key] + c if key in out else c
        return BilinearForm(out)

    def __sub__(self, other: "BilinearForm") -> "BilinearForm":
        return self + (-other)

    def __neg__(self) -> "BilinearForm":
        return BilinearForm({k: -c for k, c in self.coeffs.items()})

    def scale(self, h) -> "BilinearForm":
        return BilinearForm({k: c * h for k, c in self.coeffs.items()})

    def __mul__(self, h):
        return self.scale(h)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BilinearForm):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(_as_ratfn(self[k]) == _as_ratfn(other[k]) for k in keys)

    __hash__ = None

    def substitute(self, mapping) -> "BilinearForm":
        return BilinearForm({k: c.substitute(mapping) for k, c in self.coeffs.items()})

    def variables(self) -> set:
        out = set()
        for c in self.coeffs.values():
            out |= c.variables()
        return out

    def ratio_to(self, other: "BilinearForm"):
        """h with self = h * other, or None."""
        if other.is_zero():
            return RatFn(0) if self.is_zero() else None
        if set(self.coeffs) != set(other.coeffs):
            return None
        key = next(iter(sorted(other.coeffs)))
        h = _as_ratfn(self[key]) / _as_ratfn(other[key])
        for k in self.coeffs:
            if not _as_ratfn(self[k]) == h * _as_ratfn(other[k]):
                return None
        return h

    def vector(self) -> list:
        return [self[k] for k in KEYS]

    def label_terms(self) -> list:
        return [(f"{k}{l}{m}{n}", self.coeffs[(k, l, m, n)]) for (k, l, m, n) in sorted(self.coeffs)]

    def to_json(self) -> dict:
        out = {}
        for key, c in self.label_terms():
            out[key] = c.to_json()
        return out

    def __repr__(self):
        return "BilinearForm(" + ", ".join(f"{k}: {c}" for k, c in self.label_terms()) + ")"


# --------------------------------------------------------------------------
# forms of the reflection equation


def s_factor() -> LaurentPoly:
    """Ratio between component forms built from the cleared and plain R."""
    z1, z2, q = var("z1"), var("z2"), var("q")
    x, y = z1 * z2 ** -1, z1 * z2
    return (q - q ** -1) ** 2 * (x - x ** -1) * (y - y ** -1)


@lru_cache(maxsize=None)
def _r_pieces():
    r = build_r(True).mat
    z1, z2 = var("z1"), var("z2")
    x, y = z1 * z2 ** -1, z1 * z2
    r12x, r12y = spectral(r, x), spectral(r, y)
    return r12x, swap_sites(r12y), r12y, swap_sites(r12x)


@lru_cache(maxsize=None)
def _cleared_component_forms() -> dict:
    r12x, r21y, r12y, r21x = _r_pieces()
    forms = {}
    for idx in INDICES:
        i1, i2, j1, j2 = idx
        acc: dict = {}
        row_x = flat(i1, i2)
        # left side: sum_b R12(x)[(i1 i2),(a b)] R21(y)[(c b),(j1 e)] u[a][c] v[e][j2]
        for a in range(N):
            for b in range(N):
                r1 = r12x[row_x, flat(a, b)]
                if not r1:
                    continue
                for c in range(N):
                    for e in range(N):
                        r2 = r21y[flat(c, b), flat(j1, e)]
                        if r2:
                            key = (a, c, e, j2)
                            t = r1 * r2
                            acc[key] = acc[key] + t if key in acc else t
        # right side: sum_d R12(y)[(i1 s),(a d)] R21(x)[(c d),(j1 j2)] u[a][c] v[i2][s]
        for s in range(N):
            for a in range(N):
                for d in range(N):
                    r1 = r12y[flat(i1, s), flat(a, d)]
                    if not r1:
                        continue
                    for c in range(N):
                        r2 = r21x[flat(c, d), flat(j1, j2)]
                        if r2:
                            key = (a, c, i2, s)
                            t = r1 * r2
                            acc[key] = acc[key] - t if key in acc else -t
        forms[idx] = BilinearForm(acc)
    return forms


@lru_cache(maxsize=None)
def _plain_component_forms() -> dict:
    s = s_factor()
    return {
        idx: BilinearForm({k: RatFn(c, s) for k, c in f.coeffs.items()})
        for idx, f in _cleared_component_forms().items()
    }


def re_component_form(idx, cleared: bool = False) -> BilinearForm:
    """Form of the RE entry (i1 i2 | j1 j2), K entries kept as symbols.

    ``cleared`` uses the polynomial R and so equals s_factor() times the
    plain form.
    """
    idx = parse_index(idx) if isinstance(idx, str) else tuple(idx)
    if len(idx) != 4 or any(not 0 <= x < N for x in idx):
        raise ValueError(f"bad component index {idx}")
    forms = _cleared_component_forms() if cleared else _plain_component_forms()
    return forms[idx]


def all_component_forms(cleared: bool = False) -> dict:
    return dict(_cleared_component_forms() if cleared else _plain_component_forms())


def t_transform_form(g: BilinearForm) -> BilinearForm:
    """Send f_{kl,mn}(z1,z2,q) u[k][l] v[m][n] to f(1/z1,1/z2,1/q) u[Tk][Tl] v[Tm][Tn]."""
    inv = {"z1": var("z1") ** -1, "z2": var("z2") ** -1, "q": var("q") ** -1}
    return BilinearForm({t_index(k): c.substitute(inv) for k, c in g.coeffs.items()})


# --------------------------------------------------------------------------
# concrete K


def _k_at(k: Matrix, zname: str) -> Matrix:
    return k.substitute({"z": var(zname)})


def bind_form(g: BilinearForm, k: Matrix):
    """Substitute the entries of k(z1) and k(z2) into g."""
    u, v = _k_at(k, "z1"), _k_at(k, "z2")
    total = LaurentPoly.zero()
    for (a, b, c, d), coeff in g.coeffs.items():
        x, y = u[a, b], v[c, d]
        if x and y:
            total = total + coeff * (x * y)
    return total


def re_residual(k: Matrix, cleared: bool = False) -> Matrix:
    """LHS - RHS of the reflection equation for a concrete K(z)."""
    r12x, r21y, r12y, r21x = _r_pieces()
    one = identity()
    u, v = _k_at(k, "z1"), _k_at(k, "z2")
    k1, k2 = kron(u, one), kron(one, v)
    diff = r12x @ k1 @ r21y @ k2 - k2 @ r12y @ k1 @ r21x
    if cleared:
        return diff
    s = s_factor()
    return diff.map(lambda x: RatFn(x, s) if not isinstance(x, RatFn) else x / s)


def re_holds(k: Matrix) -> bool:
    return re_residual(k, cleared=True).is_zero()


def re_holds_modp(k: Matrix, points) -> bool:
    """Reflection equation at explicit evaluation points (z1, z2, q, params)."""
    from .rmatrix import eval_matrix, modp_matmul

    r12x, r21y, r12y, r21x = _r_pieces()
    one = identity()
    k1, k2 = kron(_k_at(k, "z1"), one), kron(one, _k_at(k, "z2"))
    for pt in points:
        p = pt.field.p
        a, b, c, d, e, f = (eval_matrix(m, pt) for m in (r12x, k1, r21y, k2, r12y, r21x))
        lhs = modp_matmul(modp_matmul(modp_matmul(a, b, p), c, p), d, p)
        rhs = modp_matmul(modp_matmul(modp_matmul(d, e, p), b, p), f, p)
        if lhs != rhs:
            return False
    return True

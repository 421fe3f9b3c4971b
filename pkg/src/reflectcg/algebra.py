"""Exact arithmetic over Q(w), w a primitive cube root of unity.

Monomials are packed into a single Python int: the exponent of the variable
with index ``i`` is a signed digit in base ``2**16`` at position ``i``.  A
product of monomials is then an integer addition.  Index 0 is reserved for
``w``; its digit is kept in {0, 1} by reducing ``w**2 = -1 - w`` after every
product, so a polynomial's term map is canonical and zero testing is exact.

Coefficients stored inside polynomials are ``int`` or ``Fraction``; elements
of Q(w) that appear as standalone scalars use :class:`Coefficient`.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping

_BITS = 16
_MASK = (1 << _BITS) - 1
_HALF = 1 << (_BITS - 1)

OMEGA = "w"
BASE_VARIABLES = ("z", "z1", "z2", "q")

_names: list = [OMEGA, *BASE_VARIABLES]
_index: dict = {name: i for i, name in enumerate(_names)}
_decode_cache: dict = {}


class UnluckyPoint(ArithmeticError):
    """A denominator vanished at an evaluation point; resample."""


# --------------------------------------------------------------------------
# variables and packed monomials


def register_variables(*names: str) -> None:
    """Extend the alphabet with symbolic parameters (idempotent)."""
    for name in names:
        if name not in _index:
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", name):
                raise ValueError(f"bad variable name {name!r}")
            _index[name] = len(_names)
            _names.append(name)


def variable_index(name: str) -> int:
    try:
        return _index[name]
    except KeyError:
        raise KeyError(f"unknown variable {name!r}") from None


def variable_names() -> tuple:
    return tuple(_names)


def _unit(i: int) -> int:
    return 1 << (_BITS * i)


def encode(exponents: Mapping[str, int]) -> int:
    m = 0
    for name, e in exponents.items():
        if not -_HALF < e < _HALF:
            raise OverflowError(f"exponent {e} out of range")
        m += e << (_BITS * variable_index(name))
    return m


def decode(m: int) -> tuple:
    """Signed exponent digits of a packed monomial, trailing zeros trimmed."""
    got = _decode_cache.get(m)
    if got is not None:
        return got
    digits = []
    rest = m
    while rest:
        d = ((rest + _HALF) & _MASK) - _HALF
        digits.append(d)
        rest = (rest - d) >> _BITS
    got = tuple(digits)
    _decode_cache[m] = got
    return got


def exponent_of(m: int, i: int) -> int:
    d = decode(m)
    return d[i] if i < len(d) else 0


def _sort_key(m: int) -> tuple:
    d = decode(m)
    # variables first (reversed so the most recently registered symbols
    # dominate last), w digit last
    n = len(_names)
    return tuple(d[i] if i < len(d) else 0 for i in range(1, n)) + (d[0] if d else 0,)


def _reduce_omega(terms: dict) -> dict:
    """Rewrite any w**2 digit as -1 - w (in place), drop zeros."""
    bad = [m for m in terms if m & _MASK >= 2]
    for m in bad:
        c = terms.pop(m)
        w = m & _MASK
        base = m - w
        # w**k for k >= 2: w**3 = 1
        k = w % 3
        if k == 0:
            terms[base] = terms.get(base, 0) + c
        elif k == 1:
            terms[base + 1] = terms.get(base + 1, 0) + c
        else:
            terms[base] = terms.get(base, 0) - c
            terms[base + 1] = terms.get(base + 1, 0) - c
    return {m: c for m, c in terms.items() if c}


def _as_rational(c):
    if isinstance(c, (int, Fraction)):
        return c
    raise TypeError(f"not a rational scalar: {c!r}")


# --------------------------------------------------------------------------
# Q(w) scalars


_TERM_RE = re.compile(r"([+-]?)\s*([0-9]+(?:/[0-9]+)?)?\s*(\*?\s*w)?")


class Coefficient:
    """An element re + om*w of Q(w), with w**2 + w + 1 = 0."""

    __slots__ = ("re", "om")

    def __init__(self, re=0, om=0):
        self.re = Fraction(re)
        self.om = Fraction(om)

    @classmethod
    def coerce(cls, x) -> "Coefficient":
        if isinstance(x, Coefficient):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        if isinstance(x, str):
            return cls.parse(x)
        raise TypeError(f"cannot make a Coefficient from {x!r}")

    @classmethod
    def parse(cls, text: str) -> "Coefficient":
        """Parse ``"a+b*w"``-style text, e.g. ``"2/3"``, ``"-w"``, ``"1-3/2*w"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty coefficient")
        re_part = Fraction(0)
        om_part = Fraction(0)
        pos = 0
        while pos < len(s):
            m = _TERM_RE.match(s, pos)
            if m is None or m.end() == pos or not (m.group(2) or m.group(3)):
                raise ValueError(f"cannot parse coefficient {text!r}")
            if pos > 0 and not m.group(1):
                raise ValueError(f"cannot parse coefficient {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            value = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            if m.group(3):
                if m.group(2) and "*" not in m.group(3):
                    raise ValueError(f"cannot parse coefficient {text!r}")
                om_part += sign * value
            else:
                re_part += sign * value
            pos = m.end()
        return cls(re_part, om_part)

    @classmethod
    def omega(cls) -> "Coefficient":
        return cls(0, 1)

    def is_rational(self) -> bool:
        return self.om == 0

    def __bool__(self):
        return bool(self.re) or bool(self.om)

    def __eq__(self, other):
        try:
            other = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.om == other.om

    def __hash__(self):
        return hash((self.re, self.om))

    def __neg__(self):
        return Coefficient(-self.re, -self.om)

    def __add__(self, other):
        try:
            other = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        return Coefficient(self.re + other.re, self.om + other.om)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        return Coefficient(self.re - other.re, self.om - other.om)

    def __rsub__(self, other):
        return Coefficient.coerce(other) - self

    def __mul__(self, other):
        try:
            other = Coefficient.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.re, self.om, other.re, other.om
        bd = b * d
        return Coefficient(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        a, b = self.re, self.om
        return a * a - a * b + b * b

    def conjugate(self) -> "Coefficient":
        # w -> w**2 = -1 - w
        return Coefficient(self.re - self.om, -self.om)

    def inverse(self) -> "Coefficient":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(w)")
        c = self.conjugate()
        return Coefficient(c.re / n, c.om / n)

    def sqrt(self):
        """A square root inside Q(w), or None when there is none."""
        # write self = x + y*s with s = sqrt(-3) = 1 + 2w, solve (u + v*s)**2
        x, y = self.re - self.om / 2, self.om / 2
        if not x and not y:
            return Coefficient(0)
        n = _rational_sqrt(x * x + 3 * y * y)
        if n is None:
            return None
        for u2 in ((x + n) / 2, (x - n) / 2):
            if y == 0 and u2 == 0:
                v = _rational_sqrt(-x / 3)
                if v is not None:
                    return Coefficient(v, 2 * v)
                continue
            u = _rational_sqrt(u2)
            if u is None or u == 0:
                continue
            v = y / (2 * u)
            if u * u - 3 * v * v == x:
                return Coefficient(u + v, 2 * v)
        return None

    def __truediv__(self, other):
        return self * Coefficient.coerce(other).inverse()

    def __rtruediv__(self, other):
        return Coefficient.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = Coefficient(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def to_poly(self) -> "LaurentPoly":
        return LaurentPoly._raw({0: self.re, 1: self.om})

    def to_json(self) -> list:
        return [_frac_str(self.re), _frac_str(self.om)]

    @classmethod
    def from_json(cls, data) -> "Coefficient":
        if isinstance(data, str):
            return cls.parse(data)
        re_s, om_s = data
        return cls(Fraction(re_s), Fraction(om_s))

    def __str__(self):
        if not self.om:
            return _frac_str(self.re)
        om = "w" if self.om == 1 else "-w" if self.om == -1 else f"{_frac_str(self.om)}*w"
        if not self.re:
            return om
        sep = "" if om.startswith("-") else "+"
        return f"{_frac_str(self.re)}{sep}{om}"

    def __repr__(self):
        return f"Coefficient({self})"


def _rational_sqrt(x: Fraction):
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def _frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# --------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Sparse Laurent polynomial over Q(w); immutable by convention."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        self.terms = _reduce_omega(dict(terms)) if terms else {}

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.terms = {m: c for m, c in terms.items() if c}
        return p

    # -- constructors
    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls._raw({0: 1})

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        if isinstance(c, LaurentPoly):
            return c
        if isinstance(c, Coefficient):
            return c.to_poly()
        if isinstance(c, str):
            return Coefficient.parse(c).to_poly()
        return cls._raw({0: _as_rational(c)})

    @classmethod
    def var(cls, name: str, exponent: int = 1) -> "LaurentPoly":
        if name == OMEGA:
            return Coefficient.omega().to_poly() ** exponent
        return cls._raw({exponent << (_BITS * variable_index(name)): 1})

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff=1) -> "LaurentPoly":
        return cls._raw({encode(exponents): 1}) * coeff

    # -- predicates
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m in (0, 1) for m in self.terms)

    def is_monomial(self) -> bool:
        """Exactly one base monomial (coefficient may lie in Q(w))."""
        bases = {m - (m & _MASK) for m in self.terms}
        return len(bases) == 1

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, Coefficient)):
            return self.terms == LaurentPoly.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- ring operations
    @staticmethod
    def _coerce(x):
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction, Coefficient)):
            return LaurentPoly.const(x)
        return None

    def __neg__(self):
        return LaurentPoly._raw({m: -c for m, c in self.terms.items()})

    def __add__(self, other):
        o = LaurentPoly._coerce(other)
        if o is None:
            return NotImplemented
        if len(o.terms) > len(self.terms):
            a, b = dict(o.terms), self.terms
        else:
            a, b = dict(self.terms), o.terms
        get = a.get
        for m, c in b.items():
            v = get(m, 0) + c
            if v:
                a[m] = v
            else:
                a.pop(m, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = a
        return out

    __radd__ = __add__

    def __sub__(self, other):
        o = LaurentPoly._coerce(other)
        if o is None:
            return NotImplemented
        a = dict(self.terms)
        get = a.get
        for m, c in o.terms.items():
            v = get(m, 0) - c
            if v:
                a[m] = v
            else:
                a.pop(m, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = a
        return out

    def __rsub__(self, other):
        o = LaurentPoly._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def scale(self, c) -> "LaurentPoly":
        """Multiply by a rational scalar."""
        if not c:
            return LaurentPoly.zero()
        return LaurentPoly._raw({m: v * c for m, v in self.terms.items()})

    def shift(self, m: int) -> "LaurentPoly":
        """Multiply by the packed monomial ``m`` (which must carry no w)."""
        return LaurentPoly._raw({k + m: v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        o = LaurentPoly._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.terms, o.terms
        if not a or not b:
            return LaurentPoly.zero()
        if len(a) < len(b):
            a, b = b, a
        res: Dict[int, object] = {}
        get = res.get
        need_reduce = False
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = m1 + m2
                res[m] = get(m, 0) + c1 * c2
        for m in res:
            if m & _MASK >= 2:
                need_reduce = True
                break
        out = LaurentPoly.__new__(LaurentPoly)
        if need_reduce:
            out.terms = _reduce_omega(res)
        else:
            out.terms = {m: c for m, c in res.items() if c}
        return out

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        o = LaurentPoly._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, e: int):
        if e < 0:
            inv = self.monomial_inverse()
            return inv ** (-e)
        out = LaurentPoly.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def monomial_inverse(self) -> "LaurentPoly":
        """Inverse of a unit of the Laurent ring (a single base monomial)."""
        if not self.is_monomial():
            raise ValueError(f"{self} is not a unit of the Laurent ring")
        (base,) = {m - (m & _MASK) for m in self.terms}
        c = self.coefficient_at(base)
        return c.inverse().to_poly().shift(-base)

    def __truediv__(self, other):
        o = LaurentPoly._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_monomial():
            return self * o.monomial_inverse()
        return RatFn(self, o)

    def __rtruediv__(self, other):
        o = LaurentPoly._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    # -- inspection
    def coefficient_at(self, base: int) -> Coefficient:
        """Q(w) coefficient of the base monomial ``base`` (w digit zero)."""
        return Coefficient(self.terms.get(base, 0), self.terms.get(base + 1, 0))

    def base_monomials(self) -> list:
        return sorted({m - (m & _MASK) for m in self.terms}, key=_sort_key)

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            for i, e in enumerate(decode(m)):
                if e and i:
                    out.add(_names[i])
        return out

    def exponents(self, name: str) -> set:
        i = variable_index(name)
        return {exponent_of(m, i) for m in self.terms}

    def degree_range(self, name: str) -> tuple:
        ex = self.exponents(name)
        return (min(ex), max(ex)) if ex else (0, 0)

    def coefficients_in(self, name: str) -> dict:
        """Split as sum_e coeff_e * name**e; returns ``{e: coeff_e}``."""
        i = variable_index(name)
        unit = _unit(i)
        out: Dict[int, dict] = {}
        for m, c in self.terms.items():
            e = exponent_of(m, i)
            out.setdefault(e, {})[m - e * unit] = c
        return {e: LaurentPoly._raw(t) for e, t in sorted(out.items())}

    def coefficients_over(self, names: Iterable[str]) -> dict:
        """Split by the exponents of several variables at once.

        Returns ``{exponent tuple: coefficient poly}`` where the coefficient
        no longer involves ``names``.
        """
        idx = [variable_index(n) for n in names]
        out: Dict[tuple, dict] = {}
        for m, c in self.terms.items():
            key = tuple(exponent_of(m, i) for i in idx)
            rest = m - sum(e * _unit(i) for e, i in zip(key, idx))
            out.setdefault(key, {})[rest] = c
        return {k: LaurentPoly._raw(t) for k, t in sorted(out.items())}

    def leading_base(self) -> int:
        return self.base_monomials()[-1]

    def min_shift(self) -> int:
        """Packed monomial of componentwise minimum exponents (w excluded)."""
        if not self.terms:
            return 0
        width = max(len(decode(m)) for m in self.terms)
        mins = [None] * width
        for m in self.terms:
            d = decode(m)
            for i in range(1, width):
                e = d[i] if i < len(d) else 0
                if mins[i] is None or e < mins[i]:
                    mins[i] = e
        return sum((mins[i] or 0) << (_BITS * i) for i in range(1, width))

    # -- homomorphisms
    def substitute(self, mapping: Mapping[str, object]) -> "LaurentPoly":
        """Ring homomorphism sending each named variable to an image.

        Images that are units (a single Q(w)-scaled monomial) may be raised
        to negative powers; other images only to non-negative powers.
        """
        if not mapping:
            return self
        images = {}
        for name, img in mapping.items():
            if name == OMEGA:
                raise KeyError("w is a constant, not a variable")
            images[variable_index(name)] = LaurentPoly._coerce(img) if not isinstance(img, LaurentPoly) else img
            if images[variable_index(name)] is None:
                raise TypeError(f"bad image for {name}: {img!r}")
        fast = {}
        for i, img in images.items():
            if len(img.terms) == 1:
                ((mi, ci),) = img.terms.items()
                if mi & _MASK == 0 and isinstance(ci, (int, Fraction)):
                    fast[i] = (mi, ci)
        res: Dict[int, object] = {}
        slow_terms = []
        for m, c in self.terms.items():
            d = decode(m)
            new_m = m
            coeff = c
            pending = []
            for i, img in images.items():
                e = d[i] if i < len(d) else 0
                if not e:
                    continue
                new_m -= e * _unit(i)
                if i in fast:
                    mi, ci = fast[i]
                    new_m += e * mi
                    if ci != 1:
                        coeff = coeff * (Fraction(ci) ** e if e < 0 else ci ** e)
                else:
                    pending.append((img, e))
            if pending:
                slow_terms.append((new_m, coeff, pending))
            else:
                res[new_m] = res.get(new_m, 0) + coeff
        out = LaurentPoly(res) if res else LaurentPoly.zero()
        if slow_terms:
            cache = {}
            for new_m, coeff, pending in slow_terms:
                t = LaurentPoly._raw({new_m: coeff})
                for img, e in pending:
                    key = (id(img), e)
                    if key not in cache:
                        cache[key] = img ** e
                    t = t * cache[key]
                out = out + t
        return out

    def evaluate(self, point) -> object:
        return point.evaluate(self)

    # -- serialization
    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    def to_json(self) -> list:
        out = []
        for base in self.base_monomials():
            d = decode(base)
            exps = {_names[i]: e for i, e in enumerate(d) if e and i}
            out.append({"m": dict(sorted(exps.items())), "c": self.coefficient_at(base).to_json()})
        return out

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        out = {}
        for term in data:
            register_variables(*[n for n in term["m"] if n not in _index])
            m = encode(term["m"])
            c = Coefficient.from_json(term["c"])
            out[m] = out.get(m, 0) + c.re
            out[m + 1] = out.get(m + 1, 0) + c.om
        return cls(out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for base in reversed(self.base_monomials()):
            c = self.coefficient_at(base)
            mono = _monomial_str(base)
            if c.is_rational():
                v = c.re
                sign = "-" if v < 0 else "+"
                mag = _frac_str(abs(v))
                body = mono if (mag == "1" and mono) else (f"{mag}*{mono}" if mono else mag)
            else:
                sign = "+"
                body = f"({c})*{mono}" if mono else f"({c})"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"LaurentPoly({self})"


def _monomial_str(base: int) -> str:
    d = decode(base)
    out = []
    for i, e in enumerate(d):
        if i == 0 or not e:
            continue
        out.append(_names[i] if e == 1 else f"{_names[i]}^{e}")
    return "*".join(out)


def var(name: str, exponent: int = 1) -> LaurentPoly:
    return LaurentPoly.var(name, exponent)


def const(c) -> LaurentPoly:
    return LaurentPoly.const(c)


# --------------------------------------------------------------------------
# rational functions


class RatFn:
    """num/den with no gcd: normalized by monomial content and a unit
    leading coefficient of the denominator; equality by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _to_poly(num)
        den = LaurentPoly.one() if den is None else _to_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = LaurentPoly.zero(), LaurentPoly.one()
            return
        if den.terms == {0: 1}:
            self.num, self.den = num, den
            return
        shift = den.min_shift()
        if shift:
            num, den = num.shift(-shift), den.shift(-shift)
        lead = den.coefficient_at(den.base_monomials()[0])
        if lead != 1:
            if lead.is_rational():
                inv = 1 / lead.re
                num, den = num.scale(inv), den.scale(inv)
            else:
                inv = lead.inverse().to_poly()
                num, den = num * inv, den * inv
        if den.terms == {0: 1}:
            den = LaurentPoly.one()
        self.num, self.den = num, den

    @classmethod
    def coerce(cls, x) -> "RatFn":
        if isinstance(x, RatFn):
            return x
        return cls(x)

    def is_polynomial(self) -> bool:
        return self.den.terms == {0: 1}

    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other):
        try:
            o = RatFn.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den.terms == o.den.terms:
            return self.num.terms == o.num.terms
        return (self.num * o.den - o.num * self.den).is_zero()

    __hash__ = None

    def __neg__(self):
        out = RatFn.__new__(RatFn)
        out.num, out.den = -self.num, self.den
        return out

    def __add__(self, other):
        try:
            o = RatFn.coerce(other)
        except TypeError:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den.terms == o.den.terms:
            return RatFn(self.num + o.num, self.den)
        if o.is_polynomial():
            return RatFn(self.num + o.num * self.den, self.den)
        if self.is_polynomial():
            return RatFn(self.num * o.den + o.num, o.den)
        return RatFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = RatFn.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return RatFn.coerce(other) - self

    def __mul__(self, other):
        try:
            o = RatFn.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.num or not o.num:
            return RatFn(LaurentPoly.zero())
        # cheap cancellation of identical factors
        if self.den.terms == o.num.terms:
            return RatFn(self.num, o.den)
        if o.den.terms == self.num.terms:
            return RatFn(o.num, self.den)
        return RatFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFn":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFn(self.den, self.num)

    def __truediv__(self, other):
        return self * RatFn.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RatFn.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFn(self.num ** e, self.den ** e)

    def substitute(self, mapping) -> "RatFn":
        return RatFn(self.num.substitute(mapping), self.den.substitute(mapping))

    def evaluate(self, point):
        return point.evaluate(self)

    def variables(self) -> set:
        return self.num.variables() | self.den.variables()

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RatFn":
        if isinstance(data, list):
            return cls(LaurentPoly.from_json(data))
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFn({self})"


def _to_poly(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction, Coefficient, str)):
        return LaurentPoly.const(x)
    raise TypeError(f"expected a polynomial, got {type(x).__name__}")


def eq_zero(f) -> bool:
    """Exact zero test; for a RatFn this is numerator == 0."""
    if isinstance(f, RatFn):
        return f.num.is_zero()
    return _to_poly(f).is_zero()


def substitute(f, var_name: str, image):
    """Apply ``var_name -> image`` where image is a scaled Laurent monomial."""
    img = _to_poly(image)
    if not img.is_monomial():
        raise ValueError("substitution image must be a scaled monomial")
    if isinstance(f, RatFn):
        return f.substitute({var_name: img})
    return _to_poly(f).substitute({var_name: img})


# --------------------------------------------------------------------------
# evaluation homomorphisms


class PrimeField:
    """F_p with p = 1 (mod 3) and a fixed primitive cube root of unity."""

    def __init__(self, p: int):
        if p % 3 != 1:
            raise ValueError(f"prime {p} is not 1 mod 3; no cube root of unity")
        if not _is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.omega = self._cube_root()

    def _cube_root(self) -> int:
        p = self.p
        for g in range(2, p):
            w = pow(g, (p - 1) // 3, p)
            if w != 1:
                return w
        raise ArithmeticError("no cube root of unity")

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise UnluckyPoint("division by zero mod p")
        return pow(x, -1, self.p)

    def __repr__(self):
        return f"PrimeField({self.p})"


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for sp in small:
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class EvalPoint:
    """Assignment of values to variables, either exact (Q(w)) or mod p.

    ``field`` is ``None`` for exact evaluation or a :class:`PrimeField`.
    Values must be invertible because Laurent exponents may be negative.
    """

    def __init__(self, assignment: Mapping[str, object], field: PrimeField | None = None):
        self.field = field
        self.assignment = dict(assignment)
        self._vals: dict = {}
        for name, v in assignment.items():
            i = variable_index(name)
            if field is None:
                v = Coefficient.coerce(v)
                if not v:
                    raise ValueError(f"{name} must be invertible")
            else:
                v = v % field.p
                if v == 0:
                    raise ValueError(f"{name} must be invertible")
            self._vals[i] = v
        self._pow: dict = {}

    def _power(self, i: int, e: int):
        key = (i, e)
        got = self._pow.get(key)
        if got is None:
            if i == 0:
                base = Coefficient.omega() if self.field is None else self.field.omega
            else:
                try:
                    base = self._vals[i]
                except KeyError:
                    raise KeyError(f"variable {_names[i]} is not assigned") from None
            if self.field is None:
                got = base ** e
            else:
                got = pow(base, e, self.field.p)
            self._pow[key] = got
        return got

    def _poly(self, f: LaurentPoly):
        if self.field is None:
            total = Coefficient(0)
            for m, c in f.terms.items():
                t = Coefficient(c)
                for i, e in enumerate(decode(m)):
                    if e:
                        t = t * self._power(i, e)
                total = total + t
            return total
        p = self.field.p
        total = 0
        for m, c in f.terms.items():
            if isinstance(c, Fraction):
                if c.denominator % p == 0:
                    raise UnluckyPoint("coefficient denominator divisible by p")
                t = c.numerator * pow(c.denominator, -1, p)
            else:
                t = c
            for i, e in enumerate(decode(m)):
                if e:
                    t = t * self._power(i, e) % p
            total += t
        return total % p

    def evaluate(self, f):
        if isinstance(f, RatFn):
            n = self._poly(f.num)
            d = self._poly(f.den)
            if not d:
                raise UnluckyPoint("denominator vanishes at the point")
            if self.field is None:
                return n / d
            return n * pow(d, -1, self.field.p) % self.field.p
        return self._poly(_to_poly(f))


def evaluate(f, at: EvalPoint):
    return at.evaluate(f)


# --------------------------------------------------------------------------
# matrices


class Matrix:
    """Dense storage, sparse multiplication; entries LaurentPoly or RatFn."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        data = [list(r) for r in data]
        if not data or not data[0]:
            raise ValueError("empty matrix")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise ValueError("ragged matrix")
        self.rows, self.cols, self.data = len(data), width, data

    @classmethod
    def zeros(cls, rows: int, cols: int, zero=None) -> "Matrix":
        z = LaurentPoly.zero() if zero is None else zero
        return cls([[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int, one=None) -> "Matrix":
        o = LaurentPoly.one() if one is None else one
        z = o * 0
        return cls([[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_values(cls, rows) -> "Matrix":
        return cls([[_to_entry(v) for v in r] for r in rows])

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def map(self, fn) -> "Matrix":
        return Matrix([[fn(x) for x in r] for r in self.data])

    def substitute(self, mapping) -> "Matrix":
        return self.map(lambda x: x.substitute(mapping))

    def _check_same(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __add__(self, other):
        self._check_same(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __sub__(self, other):
        self._check_same(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self):
        return self.map(lambda x: -x)

    def scale(self, c) -> "Matrix":
        return self.map(lambda x: x * c)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        other_rows = [[(j, x) for j, x in enumerate(r) if x] for r in other.data]
        zero = _zero_like(self, other)
        out = []
        for r in self.data:
            acc: dict = {}
            for k, a in enumerate(r):
                if not a:
                    continue
                for j, b in other_rows[k]:
                    prod = a * b
                    acc[j] = acc[j] + prod if j in acc else prod
            out.append([acc.get(j, zero) for j in range(other.cols)])
        return Matrix(out)

    def kron(self, other: "Matrix") -> "Matrix":
        return kron(self, other)

    def is_zero(self) -> bool:
        return all(not x for r in self.data for x in r)

    def nonzero_entries(self) -> list:
        return [(i, j) for i, r in enumerate(self.data) for j, x in enumerate(r) if x]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return all(a == b for r, s in zip(self.data, other.data) for a, b in zip(r, s))

    __hash__ = None

    def __repr__(self):
        return "Matrix(" + "; ".join(", ".join(str(x) for x in r) for r in self.data) + ")"


def _to_entry(v):
    if isinstance(v, (LaurentPoly, RatFn)):
        return v
    return LaurentPoly.const(v)


def _zero_like(*mats):
    for m in mats:
        for r in m.data:
            for x in r:
                if isinstance(x, RatFn):
                    return RatFn(LaurentPoly.zero())
    return LaurentPoly.zero()


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; row index of the result is b.rows*i1 + i2."""
    zero = _zero_like(a, b)
    out = [[zero] * (a.cols * b.cols) for _ in range(a.rows * b.rows)]
    for i1 in range(a.rows):
        for j1 in range(a.cols):
            x = a.data[i1][j1]
            if not x:
                continue
            for i2 in range(b.rows):
                for j2 in range(b.cols):
                    y = b.data[i2][j2]
                    if y:
                        out[b.rows * i1 + i2][b.cols * j1 + j2] = x * y
    return Matrix(out)


def projectively_equal(a: Matrix, b: Matrix) -> bool:
    """a = c*b for some nonzero scalar function c (all 2x2 cross-products vanish)."""
    if a.shape != b.shape:
        return False
    xs = [x for r in a.data for x in r]
    ys = [y for r in b.data for y in r]
    if all(not x for x in xs) or all(not y for y in ys):
        return all(not x for x in xs) and all(not y for y in ys)
    # pick a pivot where b is nonzero; then a_k*b_p - a_p*b_k == 0 for all k
    p = next(i for i, y in enumerate(ys) if y)
    if not xs[p]:
        return False
    return all((xs[k] * ys[p] - xs[p] * ys[k]).is_zero() for k in range(len(xs)))


# --------------------------------------------------------------------------
# proportionality of univariate Laurent polynomials


def proportionality_witness(x: LaurentPoly, y: LaurentPoly):
    """Return ``(c1, c2, f)`` with x = c1*f, y = c2*f, or ``None``.

    ``f`` has leading coefficient 1.  Decides the cross condition
    X(z1)Y(z2) = X(z2)Y(z1) through the 2x2 minors of the coefficient
    vectors.
    """
    x, y = _to_poly(x), _to_poly(y)
    if not x and not y:
        raise ValueError("both inputs are zero")
    ref = x if x else y
    lead = ref.leading_base()
    f = ref * ref.coefficient_at(lead).inverse().to_poly()
    bases = set(x.base_monomials()) | set(y.base_monomials())
    cx = {b: x.coefficient_at(b) for b in bases}
    cy = {b: y.coefficient_at(b) for b in bases}
    bl = sorted(bases, key=_sort_key)
    for i, b1 in enumerate(bl):
        for b2 in bl[i + 1:]:
            if cx[b1] * cy[b2] - cx[b2] * cy[b1]:
                return None
    c1 = x.coefficient_at(lead)
    c2 = y.coefficient_at(lead)
    if (c1.to_poly() * f - x) or (c2.to_poly() * f - y):
        return None
    return c1, c2, f

"""Canonical JSON, LaTeX and text output for matrices, forms and reports."""
from __future__ import annotations

import json
from fractions import Fraction

from .algebra import Coefficient, LaurentPoly, Matrix, RatFn, decode, variable_names
from .reflection import BilinearForm
from .report import Report
from .rmatrix import RMatrix, unflat

FORMATS = ("json", "latex", "text")


def _entry_json(x):
    if isinstance(x, RatFn):
        return x.to_json()
    if isinstance(x, LaurentPoly):
        return x.to_json()
    if isinstance(x, Coefficient):
        return x.to_json()
    return LaurentPoly.const(x).to_json()


def to_jsonable(obj):
    if isinstance(obj, Report):
        return obj.to_dict()
    if isinstance(obj, RMatrix):
        entries = {}
        for a in range(obj.mat.rows):
            for b in range(obj.mat.cols):
                x = obj.mat[a, b]
                if x:
                    (i, j), (k, l) = unflat(a), unflat(b)
                    entries[f"{i}{j}|{k}{l}"] = _entry_json(x)
        return {"kind": "R", "cleared": obj.cleared, "entries": entries}
    if isinstance(obj, Matrix):
        return {"kind": "matrix", "rows": [[_entry_json(obj[i, j]) for j in range(obj.cols)] for i in range(obj.rows)]}
    if isinstance(obj, BilinearForm):
        return {"kind": "form", "coeffs": obj.to_json()}
    if isinstance(obj, (LaurentPoly, RatFn, Coefficient)):
        return _entry_json(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return obj


def canonical_json(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, default=str) + "\n"


# --------------------------------------------------------------------------
# LaTeX


def _frac_tex(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"\\frac{{{x.numerator}}}{{{x.denominator}}}"


def _coeff_tex(c: Coefficient) -> str:
    if not c.om:
        return _frac_tex(c.re)
    om = "\\omega" if c.om == 1 else "-\\omega" if c.om == -1 else f"{_frac_tex(c.om)}\\omega"
    if not c.re:
        return om
    return f"{_frac_tex(c.re)}{'' if om.startswith('-') else '+'}{om}"


def _monomial_tex(base: int) -> str:
    names = variable_names()
    out = []
    for i, e in enumerate(decode(base)):
        if i and e:
            n = names[i]
            n = f"{n[0]}_{{{n[1:]}}}" if len(n) > 1 and n[1:].isdigit() else n
            out.append(n if e == 1 else f"{n}^{{{e}}}")
    return " ".join(out)


def poly_latex(p: LaurentPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for base in reversed(p.base_monomials()):
        c = p.coefficient_at(base)
        mono = _monomial_tex(base)
        if c.is_rational():
            sign = "-" if c.re < 0 else "+"
            mag = _frac_tex(abs(c.re))
            body = mono if (mag == "1" and mono) else f"{mag} {mono}".strip()
        else:
            sign = "+"
            body = f"({_coeff_tex(c)}) {mono}".strip()
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def entry_latex(x) -> str:
    if isinstance(x, RatFn):
        if x.is_polynomial():
            return poly_latex(x.num)
        return f"\\frac{{{poly_latex(x.num)}}}{{{poly_latex(x.den)}}}"
    if isinstance(x, LaurentPoly):
        return poly_latex(x)
    return poly_latex(LaurentPoly.const(x))


def matrix_latex(m: Matrix) -> str:
    cols = "c" * m.cols
    rows = [" & ".join(entry_latex(m[i, j]) for j in range(m.cols)) for i in range(m.rows)]
    body = " \\\\\n".join(rows)
    return f"\\left(\\begin{{array}}{{{cols}}}\n{body}\n\\end{{array}}\\right)\n"


# --------------------------------------------------------------------------
# dispatch


def emit(obj, fmt: str) -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unsupported format {fmt!r}; expected one of {', '.join(FORMATS)}")
    if fmt == "json":
        return canonical_json(obj)
    if fmt == "latex":
        if isinstance(obj, RMatrix):
            return matrix_latex(obj.mat)
        if isinstance(obj, Matrix):
            return matrix_latex(obj)
        if isinstance(obj, (LaurentPoly, RatFn)):
            return entry_latex(obj) + "\n"
        raise ValueError(f"no LaTeX form for {type(obj).__name__}")
    if isinstance(obj, Report):
        return obj.to_text() + "\n"
    if isinstance(obj, Matrix):
        return "\n".join("  ".join(f"[{obj[i, j]}]" for j in range(obj.cols)) for i in range(obj.rows)) + "\n"
    if isinstance(obj, RMatrix):
        return emit(obj.mat, "text")
    if isinstance(obj, BilinearForm):
        return "\n".join(f"{k}: {c}" for k, c in obj.label_terms()) + "\n"
    return str(obj) + "\n"

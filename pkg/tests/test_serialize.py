import json

import pytest
from hypothesis import given

from conftest import laurent_polys
from reflectcg.algebra import LaurentPoly, Matrix, var
from reflectcg.kmatrix import ParamsI, build_k1
from reflectcg.reduced import named_form
from reflectcg.rmatrix import build_r
from reflectcg.serialize import canonical_json, emit, matrix_latex, poly_latex, to_jsonable

IDENTITY_2_JSON = (
    '{\n  "kind": "matrix",\n  "rows": [\n    [\n      [\n        {\n          "c": [\n            "1",\n'
    '            "0"\n          ],\n          "m": {}\n        }\n      ],\n      []\n    ],\n    [\n'
    '      [],\n      [\n        {\n          "c": [\n            "1",\n            "0"\n          ],\n'
    '          "m": {}\n        }\n      ]\n    ]\n  ]\n}\n'
)


def test_identity_json_bytes():
    assert canonical_json(Matrix.identity(2)) == IDENTITY_2_JSON


def test_r_json_lists_nonzero_entries():
    data = to_jsonable(build_r(cleared=True))
    assert data["kind"] == "R" and data["cleared"] is True
    assert len(data["entries"]) == 17


def test_form_json():
    data = to_jsonable(named_form("A1"))
    assert data["kind"] == "form" and len(data["coeffs"]) == 2


def test_k_latex_row():
    k = build_k1(ParamsI((0, 1), (1, 0), (1, 0, 1)))
    first = matrix_latex(k).splitlines()[1]
    assert first == "-z^{4} & 0 & z^{6} - z^{2} \\\\"


def test_poly_latex_fraction_and_zero():
    z = var("z")
    assert poly_latex(LaurentPoly.zero()) == "0"
    assert poly_latex(z * LaurentPoly.const(1) / 2 - 3) == "\\frac{1}{2} z - 3"


def test_unsupported_format():
    with pytest.raises(ValueError, match="unsupported format"):
        emit(Matrix.identity(3), "yaml")


def test_no_latex_for_reports():
    from reflectcg.report import Report

    with pytest.raises(ValueError):
        emit(Report(), "latex")


@given(laurent_polys(("z1", "z2")))
def test_json_is_deterministic_and_parses(p):
    text = canonical_json(p)
    assert text == canonical_json(p)
    assert LaurentPoly.from_json(json.loads(text)) == p

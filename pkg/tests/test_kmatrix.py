import json
import random

import pytest
from hypothesis import given, strategies as st

from conftest import coefficients, nonzero_coefficients, projective
from reflectcg.algebra import Coefficient, Matrix, projectively_equal, var
from reflectcg.kmatrix import (
    CFamilyParams, DiagonalParams, ParamsI, ParamsII, build, build_c_family, build_diagonal, build_k1, build_k2,
    classify_k, params_from_json, rho, rho_derived, transform_params, unitarity_product, verify_classify_roundtrip,
    verify_k_unitarity, verify_transform_laws, z_proportional,
)
from reflectcg.reflection import re_holds
from reflectcg.rmatrix import _scalar_of

params_i = st.builds(ParamsI, projective(2), projective(2), projective(3))
params_ii = st.builds(ParamsII, coefficients, projective(2), projective(3))
c_params = st.builds(CFamilyParams, coefficients, coefficients, projective(2))
diag_params = st.builds(DiagonalParams, projective(2), st.sampled_from([1, 2]))


def _poly_matrix(rows):
    z = var("z")
    return Matrix([[x if not isinstance(x, int) else x + 0 * z for x in r] for r in rows])


# ------------------------------------------------------------ fixed examples


def test_k1_example():
    z = var("z")
    k = build_k1(ParamsI((0, 1), (1, 0), (1, 0, 1)))
    zero = 0 * z
    assert k == Matrix([[-z ** 4, zero, z ** 6 - z ** 2], [zero, -z ** 4, zero], [zero, zero, -z ** 4]])


def test_k2_example():
    z = var("z")
    k = build_k2(ParamsII(0, (1, 0), (0, 0, 1)))
    zero = 0 * z
    assert k == Matrix([[-1 + zero, zero, zero], [zero, -1 + zero, zero], [zero, zero, -z ** 4]])


def test_k1_identity_representative():
    assert projectively_equal(build_k1(ParamsI((3, 5), (1, 0), (0, 0, 1))), Matrix.identity(3))


@pytest.mark.parametrize("bad", [
    lambda: ParamsI((0, 0), (1, 0), (1, 0, 0)),
    lambda: ParamsI((1, 0), (0, 0), (1, 0, 0)),
    lambda: ParamsII(0, (0, 0), (1, 0, 0)),
    lambda: DiagonalParams((1, 0), 3),
])
def test_params_validation(bad):
    with pytest.raises(ValueError):
        bad()


# ------------------------------------------------------------ properties


@given(params_i)
def test_family_i_solves_re_with_derived_rho(p):
    k = build_k1(p)
    assert re_holds(k)
    s = _scalar_of(unitarity_product(k))
    assert s is not None
    assert (s - rho_derived("I", p)).is_zero()


@given(params_ii)
def test_family_ii_solves_re_with_derived_rho(p):
    k = build_k2(p)
    assert re_holds(k)
    s = _scalar_of(unitarity_product(k))
    assert s is not None
    assert (s - rho_derived("II", p)).is_zero()


@given(c_params, st.sampled_from(["plain", "adT"]))
def test_c_family_solves_re_and_lies_in_both(p, side):
    k = build_c_family(p, side)
    assert re_holds(k)
    assert set(classify_k(k).families) == {"I", "II"}


@given(diag_params)
def test_diagonal_branches_solve_re(p):
    assert re_holds(build_diagonal(p))


@given(projective(2), projective(2), projective(3))
def test_printed_rho_i_matches_on_unit_e(b, d, e):
    p = ParamsI(b, d, (1, 1, 1))
    assert (rho("I", p) - rho_derived("I", p)).is_zero()


@given(params_i.filter(lambda p: p.E[0] and p.E[2]))
def test_rho_i_gauge_substitution(p):
    b1, b2 = p.B
    d1, d2 = p.D
    e1, e2, e3 = p.E
    bp = (b1 * e2 / e3, b2 * e2 / e1)
    if not any(bp):
        return
    q = ParamsI(bp, (d1 * e3, d2 * e1), (1, 1, 1))
    assert (rho("I", q) - rho_derived("I", p)).is_zero()


@given(coefficients, projective(2), projective(3))
def test_printed_rho_ii_matches_when_cross_term_vanishes(b, f, g):
    p = ParamsII(b, f, (0, g[1], g[2]) if any(g[1:]) else (0, 1, 0))
    assert (rho("II", p) - rho_derived("II", p)).is_zero()


def test_printed_rho_ii_sign_of_z4_term():
    # with F1 F2 G1 G3 != 0 the printed scalar is not proportional
    p = ParamsII(1, (1, 1), (1, 0, 1))
    s = _scalar_of(unitarity_product(build_k2(p)))
    assert not z_proportional(s, rho("II", p))
    assert (s - rho_derived("II", p)).is_zero()


def test_unitarity_report_flags_printed_rho():
    p = ParamsI((1, 2), (1, 3), (1, 2, 5))
    report = verify_k_unitarity("I", p)
    status = {v.name: v.ok for v in report.verdicts}
    assert status["k.unitarity.scalar"] and status["k.unitarity.rho_derived"]
    assert not status["k.unitarity.rho_printed"]
    assert "k.unitarity.rho_printed" not in {v.name for v in verify_k_unitarity("I", p, printed=False).verdicts}


@given(params_i)
def test_transform_laws_family_i(p):
    assert verify_transform_laws("I", p).ok


@given(params_ii)
def test_transform_laws_family_ii(p):
    assert verify_transform_laws("II", p).ok


@given(params_i)
def test_t_action_on_family_i_is_an_involution_on_parameters(p):
    twice = transform_params("T", "I", transform_params("T", "I", p))
    assert projectively_equal(build_k1(twice), build_k1(p))


# ------------------------------------------------------------ classification


@given(st.one_of(params_i, params_ii))
def test_classify_round_trip(p):
    k = build(p)
    c = classify_k(k)
    assert ("I" if isinstance(p, ParamsI) else "II") in c.families
    for point in (c.family_i, c.family_ii):
        if point is not None:
            assert projectively_equal(build(point), k)


def test_classify_identity_and_c_members_report_both():
    assert classify_k(Matrix.identity(3)).label == "both"
    assert classify_k(build_c_family(CFamilyParams(1, 1, (1, 1)))).label == "both"


def test_classify_rejects_non_solution():
    z = var("z")
    k = _poly_matrix([[1, z, 0], [0, 1, 0], [z ** 2, 0, 1]])
    assert classify_k(k).label == "none"


def test_classify_rejects_bad_input():
    with pytest.raises(ValueError):
        classify_k(_poly_matrix([[0, 0, 0], [0, 0, 0], [0, 0, 0]]))
    with pytest.raises(ValueError):
        classify_k(_poly_matrix([[var("z") ** 9, 0, 0], [0, 1, 0], [0, 0, 1]]))


def test_classify_round_trip_report():
    report = verify_classify_roundtrip(20, seed=5)
    assert report.ok, report.to_text()


# ------------------------------------------------------------ parameter files


@given(st.one_of(params_i, params_ii, c_params, diag_params))
def test_params_json_round_trip(p):
    data = json.loads(json.dumps(p.to_json()))
    q = params_from_json(data)
    assert q == p


@pytest.mark.parametrize("data,fragment", [
    ([], "expected a JSON object"),
    ({"family": "X"}, "unknown family"),
    ({"family": "I", "B": ["1"], "D": ["1", "0"], "E": ["1", "0", "0"]}, "B"),
    ({"family": "I", "B": ["1", "x"], "D": ["1", "0"], "E": ["1", "0", "0"]}, "B"),
])
def test_params_json_errors(data, fragment):
    with pytest.raises(ValueError, match=fragment):
        params_from_json(data)


def test_params_json_example():
    p = params_from_json({"family": "I", "B": ["1", "0"], "D": ["2/3", "1"], "E": ["1", "0", "-1"]})
    assert p.D[0] == Coefficient.parse("2/3")
    assert re_holds(build_k1(p))

import random

import pytest
from hypothesis import given, strategies as st

from conftest import projective
from reflectcg.ansatz import (
    ANSATZ_RELATIONS, CORRECTED_CATALOG, PRINTED_CATALOG, AnsatzK20, case_a_from_vi, case_b_from_vii,
    case_b_relations, derived_catalog, nonzero_bindings, sample_case_b, verify_case_b_forcing, verify_cases,
    verify_catalog, verify_displayed_cases, verify_necessity, verify_ta2_residual, verify_tc5_relation,
    vi_from_case_a, vii_from_case_b,
)
from reflectcg.kmatrix import ParamsI
from reflectcg.varieties import vi1_parametrize


@pytest.fixture(scope="module")
def derived():
    return derived_catalog()


def test_ta2_residual_is_the_displayed_product():
    assert verify_ta2_residual().ok


def test_tc5_coefficient():
    assert verify_tc5_relation().ok


def test_catalog_size():
    assert len(PRINTED_CATALOG) == 28
    assert len({r.key for r in PRINTED_CATALOG}) == 28


def test_printed_catalog_fails_exactly_two(derived):
    report = verify_catalog(derived)
    failing = {v.name.rsplit(".", 1)[-1] for v in report.failures()}
    assert failing == {"TB7", "TC4"}


def test_corrected_catalog_passes(derived):
    assert verify_catalog(derived, CORRECTED_CATALOG).ok


def test_displayed_case_matrices():
    assert verify_displayed_cases().ok


def test_ansatz_requires_alpha1():
    with pytest.raises(ValueError):
        AnsatzK20((1, 0, 0, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0))
    with pytest.raises(ValueError):
        AnsatzK20((1, 1), (0,))


def test_cases_small():
    assert verify_cases(8, 1).ok


def test_necessity_small():
    assert verify_necessity(8, 2).ok


def test_case_b_forcing_small():
    assert verify_case_b_forcing(12, 3).ok


@given(projective(2), projective(2), projective(3))
def test_case_a_points_solve_reduced_system(b, d, e):
    point = vi1_parametrize(ParamsI(b, d, e))
    if not point.a[1]:
        return
    x = case_a_from_vi(point)
    assert vi_from_case_a(x) == point
    assert all(not r(x.alpha, x.abar) for r in ANSATZ_RELATIONS)
    assert all(not r(x.alpha, x.abar) for r in CORRECTED_CATALOG)
    assert not nonzero_bindings(x.matrix())


@given(st.integers(0, 10 ** 6))
def test_case_b_points_solve_reduced_system(seed):
    x = sample_case_b(random.Random(seed))
    assert case_b_from_vii(vii_from_case_b(x)) == x
    assert all(not v for _, v in case_b_relations(x))
    assert not nonzero_bindings(x.matrix())


def test_broken_case_b_point_is_detected():
    x = AnsatzK20((0, 1, 0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 1))
    assert [n for n, v in case_b_relations(x) if v] == ["B.1"]
    assert nonzero_bindings(x.matrix())

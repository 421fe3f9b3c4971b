import random

import pytest
from hypothesis import given, strategies as st

from conftest import coefficients, projective
from reflectcg.algebra import Matrix, projectively_equal
from reflectcg.kmatrix import ParamsI, ParamsII, build_from_variety, build_k1, build_k2
from reflectcg.varieties import (
    SegrePoint, VIIPoint, VIPoint, membership_check, psi, rank1_minors, sample_solutions, sample_vi_point,
    segre_relations, verify_decomposition, verify_rank1_agreement, verify_varieties_symbolic, vi1_parametrize,
    vi1_preimage, vi_component, vi_relations, vii_from_params, vii_preimage, w_point,
)


# ------------------------------------------------------------ fixed examples


def test_all_ones_is_vi_member():
    assert membership_check("VI", [1] * 10)


def test_vi0_point():
    p = VIPoint((0, 0, 0, 0, 1), (0, 0, 0, 0, 1))
    assert membership_check("VI", p)
    assert vi_component(p) == "V0"
    assert not membership_check("rank1", p)


def test_vii_non_member_reports_failing_relation():
    m = membership_check("vii", [1, 1, 1, 0, 0, 0, 0])
    assert not m and m.failing == ["II1"]


def test_rank1_on_equal_rows():
    # a = (x, x, ...) pattern where both rows of the 2x6 array coincide
    p = VIPoint((1, 1, 2, 3, 1), (1, 1, 3, 2, 1))
    assert membership_check("rank1", p)


def test_i0_premise_not_met_is_vacuous():
    m = membership_check("I0", [0, 0, 0, 0, 1, 0, 0, 0, 0, 2])
    assert m and m.detail == "premise not met"


@pytest.mark.parametrize("kind,coords", [("VI", [0] * 10), ("VII", [0] * 7), ("Segre", [0] * 6), ("VI", [1] * 9)])
def test_bad_coordinates_rejected(kind, coords):
    with pytest.raises(ValueError):
        membership_check(kind, coords)


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        membership_check("VIII", [1] * 10)


def test_psi_examples():
    assert psi((1, 0), (1, 0, 0)).coords() == [1, 0, 0, 0, 0, 0]
    s = psi((1, 1), (1, 1, 1))
    assert s.coords() == [1] * 6 and membership_check("Segre", s)


def test_vi1_all_ones():
    assert vi1_parametrize(ParamsI((1, 1), (1, 1), (1, 1, 1))).coords() == [1] * 10


def test_vi1_identity_solution():
    p = ParamsI((1, 0), (1, 0), (0, 0, 1))
    point = vi1_parametrize(p)
    assert point.coords() == [0, 0, 0, 0, 0, 0, 0, 0, 0, 1]
    assert projectively_equal(build_from_variety(point), build_k1(p))
    assert projectively_equal(build_k1(p), Matrix.identity(3))


def test_symbolic_parametrizations():
    report = verify_varieties_symbolic()
    assert report.ok, report.to_text()


# ------------------------------------------------------------ properties


@given(projective(2), projective(3))
def test_psi_lands_in_segre(d, e):
    assert not [n for n, v in segre_relations(psi(d, e)) if v]


@given(projective(2), projective(2), projective(3))
def test_vi1_lands_in_vi_and_rank1(b, d, e):
    p = ParamsI(b, d, e)
    point = vi1_parametrize(p)
    assert not [n for n, v in vi_relations(point, with_i0=True) if v]
    assert not [n for n, v in rank1_minors(point) if v]
    assert w_point(b, psi(d, e)) == point


@given(projective(2), projective(2), projective(3))
def test_variety_matrix_matches_family_i(b, d, e):
    p = ParamsI(b, d, e)
    assert projectively_equal(build_from_variety(vi1_parametrize(p)), build_k1(p))


@given(coefficients, projective(2), projective(3))
def test_variety_matrix_matches_family_ii(b, f, g):
    p = ParamsII(b, f, g)
    point = vii_from_params(p)
    assert membership_check("VII", point)
    assert projectively_equal(build_from_variety(point), build_k2(p))
    q = vii_preimage(point)
    assert q is not None and projectively_equal(build_k2(q), build_k2(p))


@given(projective(2), projective(2), projective(3))
def test_vi1_preimage_when_it_exists(b, d, e):
    p = ParamsI(b, d, e)
    point = vi1_parametrize(p)
    q = vi1_preimage(point)
    if q is not None:
        assert projectively_equal(build_k1(q), build_k1(p))


@given(st.integers(0, 10 ** 6))
def test_rank1_agrees_with_fifteen_relations(seed):
    p = sample_vi_point(random.Random(seed))
    fifteen = not [n for n, v in vi_relations(p, with_i0=True) if v]
    assert fifteen == bool(membership_check("rank1", p))


def test_rank1_agreement_report():
    assert verify_rank1_agreement(100, 0).ok


def test_decomposition_report():
    assert verify_decomposition(100, 3).ok


def test_vii_preimage_of_non_member():
    assert vii_preimage(VIIPoint(1, (1, 1, 0, 0, 0, 0))) is None


# ------------------------------------------------------------ sampled solutions


@pytest.mark.parametrize("family", ["I", "II", "C", "diag"])
def test_sample_solutions(family):
    out = sample_solutions(family, 6, seed=11)
    assert len(out) == 6
    for _, _, report in out:
        assert report.ok, report.to_text()


def test_sample_solutions_records_subspace_checks():
    _, _, report = sample_solutions("II", 1, seed=2)[0]
    names = {v.name for v in report.verdicts}
    assert "k.variety_matrix" in names
    assert any(n.startswith("k.subspace[") for n in names)


def test_sample_solutions_count_validation():
    with pytest.raises(ValueError):
        sample_solutions("I", 0)


def test_segre_point_needs_six():
    with pytest.raises(ValueError):
        SegrePoint((1, 2, 3))

import pytest
from hypothesis import given, strategies as st

from reflectcg.algebra import Matrix, RatFn, var
from reflectcg.kmatrix import ParamsI, build_k1
from reflectcg.reflection import (
    INDICES, BilinearForm, bind_form, parse_index, re_component_form, re_holds, re_residual, s_factor,
    t_index, t_transform_form,
)
from reflectcg.rmatrix import flat

indices = st.sampled_from(INDICES)


@pytest.mark.parametrize("label", ["(00|11)", "(00|22)", "(22|11)", "(22|00)"])
def test_step0_components_vanish(label):
    g = re_component_form(parse_index(label))
    assert g.is_zero()
    assert len(g) == 0


def test_nonvanishing_components_count():
    # every other component is a nonzero form
    nonzero = [i for i in INDICES if not re_component_form(i).is_zero()]
    assert len(nonzero) == 77


@given(indices)
def test_t_covariance(idx):
    assert t_transform_form(re_component_form(idx)) == re_component_form(t_index(idx))
    assert t_transform_form(re_component_form(idx, cleared=True)) == re_component_form(t_index(idx), cleared=True)


@given(indices)
def test_t_transform_is_an_involution(idx):
    g = re_component_form(idx)
    assert t_transform_form(t_transform_form(g)) == g


@given(indices)
def test_cleared_form_is_s_times_plain(idx):
    plain = re_component_form(idx)
    assert re_component_form(idx, cleared=True) == plain.scale(RatFn(s_factor()))


def _non_solution():
    z = var("z")
    return Matrix.from_values([[1, 1, 0], [0, 1, 0], [0, 0, 1]]).map(lambda x: x + 0 * z)


@given(indices)
def test_bound_form_matches_residual_entry(idx):
    k = _non_solution()
    res = re_residual(k, cleared=True)
    i1, i2, j1, j2 = idx
    assert (res[flat(i1, i2), flat(j1, j2)] - bind_form(re_component_form(idx, cleared=True), k)).is_zero()


def test_solution_kills_every_component():
    k = build_k1(ParamsI((0, 1), (1, 0), (1, 0, 1)))
    assert re_holds(k)
    assert all(RatFn.coerce(bind_form(re_component_form(i), k)).is_zero() for i in INDICES)


def test_non_solution_is_detected():
    assert not re_holds(_non_solution())


def test_identity_is_a_solution():
    assert re_holds(Matrix.identity(3))


@pytest.mark.parametrize("text", ["(01|2)", "0131", "abcd"])
def test_parse_index_rejects(text):
    with pytest.raises(ValueError):
        parse_index(text)


def test_form_rejects_bad_key():
    with pytest.raises(ValueError):
        BilinearForm({(0, 0, 0, 3): var("z")})

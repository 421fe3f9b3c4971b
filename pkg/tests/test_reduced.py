import pytest
from hypothesis import given, strategies as st

from reflectcg.algebra import var
from reflectcg.reduced import (
    PRINTED_STAGED, REDUCED_PRIMED, REDUCED_UNPRIMED, a6_prime_alternative, b4_as_printed, certify_display,
    combination, group_table_check, identity_residual, lookup, named_form, named_forms, printed_variants, q_free,
    span_modp_many, swap_points, verify_equivalence, verify_identities, verify_staged, written_identities,
)
from reflectcg.reflection import INDICES, index_label, re_component_form, t_transform_form


def test_reduced_sizes():
    assert len(REDUCED_PRIMED) == 38
    assert len(REDUCED_UNPRIMED) == 38
    assert len(set(REDUCED_PRIMED)) == 38


def test_a1_form_has_two_terms():
    g = named_form("A1")
    assert len(g) == 2
    z1, z2 = var("z1"), var("z2")
    assert g[(0, 1, 2, 1)] == z1 ** 2
    assert g[(2, 1, 0, 1)] == -z2 ** 2


@pytest.mark.parametrize("name", REDUCED_PRIMED)
def test_reduced_forms_are_q_free(name):
    assert q_free(named_form(name))


@given(st.sampled_from([n for n in REDUCED_PRIMED if not n.startswith("T")]))
def test_t_names_are_t_images(name):
    tname = "T" + name
    if tname in REDUCED_PRIMED:
        assert named_form(tname) == t_transform_form(named_form(name))


@given(st.sampled_from(REDUCED_PRIMED))
def test_reduced_forms_are_antisymmetric_under_point_swap(name):
    # each reduced form changes sign when the two points are exchanged
    g = named_form(name)
    assert swap_points(g) == -g


def test_b4_as_printed_is_symmetric():
    g = b4_as_printed()
    assert swap_points(g) == g


def test_group_table():
    report = group_table_check()
    assert report.ok, report.to_text()


def test_written_identities_hold():
    report = verify_identities()
    assert report.ok, report.to_text()


@pytest.mark.parametrize("target,terms", printed_variants())
def test_identities_as_printed_fail(target, terms):
    assert not identity_residual(target, terms).is_zero()


def test_b4_as_printed_is_not_in_the_span():
    comps = [re_component_form(i) for i in INDICES]
    res = span_modp_many({"B4": b4_as_printed(), "B4c": named_form("B4")}, comps, reps=3)
    assert res["B4"].status == "nonmember"
    assert res["B4c"].status == "member"


def test_a6_prime_bracketing():
    # the chosen bracketing is self-dual up to a monomial, the other one is not
    z1, z2 = var("z1"), var("z2")
    chosen = named_form("A6'")
    assert t_transform_form(chosen) == chosen.scale(z1 ** -4 * z2 ** -4)
    other = a6_prime_alternative()
    assert t_transform_form(other).ratio_to(other) is None


def test_a6_prime_certificate_is_exact():
    res = certify_display("A6'", ["A6", "A1", "B4", "TB4"])
    assert res.member
    rebuilt = combination(res.coefficients, [lookup(n) for n in ("A6", "A1", "B4", "TB4")])
    assert rebuilt == named_form("A6'")


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_equivalence_modp(seed):
    report = verify_equivalence(reps=7, seed=seed, staged=False)
    assert report.ok, report.to_text()


def test_staged_relations():
    report = verify_staged(reps=5)
    assert report.ok, report.to_text()


@pytest.mark.parametrize("stage,basis,targets", PRINTED_STAGED)
def test_staged_relations_as_printed_fail(stage, basis, targets):
    res = span_modp_many({t: lookup(t) for t in targets}, [lookup(b) for b in basis], reps=5)
    assert any(r.status == "nonmember" for r in res.values())


def test_lookup_accepts_component_labels():
    assert lookup("(01|21)") == re_component_form((0, 1, 2, 1))
    assert lookup("T(01|21)") == re_component_form((2, 1, 0, 1))
    with pytest.raises(KeyError):
        named_form("Z9")


def test_named_forms_selection():
    assert [nf.name for nf in named_forms("primed")] == list(REDUCED_PRIMED)
    with pytest.raises(ValueError):
        named_forms("bogus")


def test_identity_table_mentions_every_display():
    targets = {t for t, _ in written_identities()}
    assert {"(10|12)", "(21|21)", "(02|21)", "(00|00)", "(02|22)", "(20|22)", "(01|12)", "(01|20)", "A6'", "TA1",
            "TA6'"} <= targets
    assert index_label((0, 0, 0, 0)) == "(00|00)"

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import coefficients, laurent_polys, nonzero_coefficients
from reflectcg.algebra import Coefficient, EvalPoint, LaurentPoly, PrimeField, RatFn, var


@given(coefficients, coefficients, coefficients)
def test_coefficient_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(nonzero_coefficients)
def test_coefficient_inverse(a):
    assert a * a.inverse() == Coefficient(1)


def test_omega_is_primitive_cube_root():
    w = Coefficient.omega()
    assert w ** 3 == Coefficient(1)
    assert w != Coefficient(1)
    assert 1 + w + w * w == Coefficient(0)


@given(coefficients)
def test_sqrt_recovers_squares(a):
    r = (a * a).sqrt()
    assert r is not None
    assert r * r == a * a


def test_sqrt_examples():
    assert Coefficient(-3).sqrt() ** 2 == Coefficient(-3)
    assert Coefficient(2).sqrt() is None


@given(coefficients)
def test_coefficient_text_round_trip(a):
    assert Coefficient.parse(str(a)) == a
    assert Coefficient.from_json(a.to_json()) == a


@pytest.mark.parametrize("text", ["", "1+", "2w", "w*w", "abc"])
def test_coefficient_parse_rejects(text):
    with pytest.raises(ValueError):
        Coefficient.parse(text)


@given(laurent_polys(), laurent_polys(), laurent_polys())
def test_laurent_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f - f).is_zero()


@given(laurent_polys(), laurent_polys())
def test_substitution_is_a_homomorphism(f, g):
    z, q = var("z"), var("q")
    image = {"z": z ** 2 * q, "q": q ** -1}
    assert (f * g).substitute(image) == f.substitute(image) * g.substitute(image)
    assert (f + g).substitute(image) == f.substitute(image) + g.substitute(image)


@given(laurent_polys())
def test_laurent_json_round_trip(f):
    assert LaurentPoly.from_json(f.to_json()) == f


@given(laurent_polys(), laurent_polys().filter(bool), laurent_polys().filter(bool))
def test_ratfn_cross_multiplication_equality(f, g, h):
    assert RatFn(f * h, g * h) == RatFn(f, g)


@given(laurent_polys(), laurent_polys().filter(bool), st.integers(2, 10**5), st.integers(2, 10**5))
def test_modp_evaluation_is_a_homomorphism(f, g, zv, qv):
    pt = EvalPoint({"z": zv, "q": qv}, PrimeField(1000003))
    p = 1000003
    assert pt.evaluate(f * g) == pt.evaluate(f) * pt.evaluate(g) % p
    assert pt.evaluate(f + g) == (pt.evaluate(f) + pt.evaluate(g)) % p


def test_prime_field_requires_one_mod_three():
    with pytest.raises(ValueError):
        PrimeField(5)
    f = PrimeField(1000003)
    assert f.p % 3 == 1


def test_packed_monomials_keep_negative_exponents_apart():
    z = var("z")
    assert z ** -3 * z ** 3 == LaurentPoly.one()
    assert (z ** -1).degree_range("z") == (-1, -1)
    assert Fraction(1) == LaurentPoly.one().coefficient_at(0).re

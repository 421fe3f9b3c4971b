from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from reflectcg.algebra import Coefficient, LaurentPoly

settings.register_profile(
    "default", max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

small_int = st.integers(min_value=-9, max_value=9)
fractions_ = st.builds(Fraction, small_int, st.integers(min_value=1, max_value=9))
coefficients = st.builds(Coefficient, fractions_, fractions_)
nonzero_coefficients = coefficients.filter(bool)


@st.composite
def laurent_polys(draw, names=("z", "q"), max_terms=4, max_exp=3):
    terms = draw(st.lists(
        st.tuples(st.lists(st.integers(-max_exp, max_exp), min_size=len(names), max_size=len(names)), coefficients),
        max_size=max_terms,
    ))
    p = LaurentPoly.zero()
    for exps, c in terms:
        p = p + LaurentPoly.monomial(dict(zip(names, exps)), c)
    return p


@st.composite
def projective(draw, n):
    xs = draw(st.lists(coefficients, min_size=n, max_size=n))
    if not any(xs):
        xs[draw(st.integers(0, n - 1))] = Coefficient(1)
    return tuple(xs)


# acceptance lines collected by tests/test_acceptance.py
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])

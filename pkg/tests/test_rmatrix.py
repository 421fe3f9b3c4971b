import pytest
from hypothesis import given, strategies as st

from reflectcg.algebra import Matrix, RatFn, var
from reflectcg.rmatrix import (
    N, RMatrix, build_r, cg_entry, flat, nonzero_count, unitarity_scalar, verify_r_symmetries, verify_ybe,
)

idx = st.integers(0, N - 1)


def test_nonzero_pattern():
    # 3 diagonal + 6 (ij|ij) + 6 (ij|ji) + 2 (11|02), (11|20)
    assert nonzero_count(build_r(True)) == 17
    assert nonzero_count(build_r(False)) == 17


@given(idx, idx, idx, idx)
def test_charge_conservation_per_entry(i, j, k, l):
    if cg_entry(i, j, k, l, cleared=True):
        assert (i + j - k - l) % N == 0


@given(idx, idx, idx, idx)
def test_cleared_entry_is_factor_times_plain(i, j, k, l):
    z, q = var("z"), var("q")
    plain = RatFn.coerce(cg_entry(i, j, k, l))
    cleared = cg_entry(i, j, k, l, cleared=True)
    assert plain * RatFn((q - q ** -1) * (z - z ** -1)) == RatFn.coerce(cleared)


def test_entry_rejects_bad_index():
    with pytest.raises(ValueError):
        cg_entry(0, 3, 0, 0)


def test_ybe_symbolic():
    assert verify_ybe("symbolic").ok


def test_ybe_plain_representation():
    assert verify_ybe("symbolic", cleared=False).ok


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_ybe_modp(seed):
    assert verify_ybe("modp", reps=3, seed=seed).ok


def test_ybe_detects_a_corrupted_entry():
    r = build_r(True)
    rows = [list(row) for row in r.mat.data]
    rows[flat(0, 1)][flat(0, 1)] = rows[flat(0, 1)][flat(0, 1)] + var("z")
    bad = RMatrix(Matrix(rows), True)
    assert not verify_ybe("symbolic", r=bad).ok
    assert not verify_ybe("modp", r=bad, reps=2).ok


@pytest.mark.parametrize("cleared", [False, True])
def test_r_symmetries(cleared):
    report = verify_r_symmetries(cleared)
    assert report.ok, report.to_text()


def test_unitarity_scalar_value():
    z, q = var("z"), var("q")
    expected = RatFn((q ** 2 - z ** 2) * (1 - q ** 2 * z ** 2), (q ** 2 - 1) ** 2 * (z ** 2 - 1) ** 2)
    assert unitarity_scalar(False) == expected

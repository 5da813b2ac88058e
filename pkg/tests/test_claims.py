import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from expocurve import ClaimRecord, DataError, load_claims, save_sample, transform_claim

finite_pos = st.floats(min_value=1e-6, max_value=1e9, allow_nan=False, allow_infinity=False)
losses = st.floats(min_value=0.0, max_value=1e9, allow_nan=False, allow_infinity=False)


def test_transform_basic_cases():
    assert transform_claim(ClaimRecord(150.0, 100.0, 200.0)) == 0.25
    assert transform_claim(ClaimRecord(50.0, 100.0, 200.0)) == 0.0
    # at or above deductible + cover the claim is censored at exactly 1
    assert transform_claim(ClaimRecord(300.0, 100.0, 200.0)) == 1.0
    assert transform_claim(ClaimRecord(1e9, 100.0, 200.0)) == 1.0


def test_record_validation():
    with pytest.raises(DataError):
        ClaimRecord(10.0, 0.0, 5.0)
    with pytest.raises(DataError):
        ClaimRecord(10.0, 1.0, -5.0)
    with pytest.raises(DataError):
        ClaimRecord(float("nan"), 1.0, 5.0)


@given(losses, finite_pos, finite_pos)
@settings(max_examples=200, deadline=None)
def test_transform_stays_in_unit_interval(y, d, m):
    z = transform_claim(ClaimRecord(y, d, m))
    assert 0.0 <= z <= 1.0


@given(losses, losses, finite_pos, finite_pos)
@settings(max_examples=200, deadline=None)
def test_transform_monotone_in_loss(y1, y2, d, m):
    lo, hi = sorted((y1, y2))
    assert transform_claim(ClaimRecord(lo, d, m)) <= transform_claim(ClaimRecord(hi, d, m))


@given(losses, finite_pos, finite_pos, st.floats(min_value=0.01, max_value=100.0))
@settings(max_examples=200, deadline=None)
def test_transform_scale_invariant(y, d, m, c):
    z1 = transform_claim(ClaimRecord(y, d, m))
    z2 = transform_claim(ClaimRecord(c * y, c * d, c * m))
    # rounding of c*y and c*d can be amplified by a large loss-to-cover ratio
    assert abs(z2 - z1) <= 1e-12 * (1.0 + (y + d) / m)


def test_save_load_roundtrip(tmp_path):
    z = np.array([0.125, 0.5, 1.0, 0.9999999999999997, 1e-15])
    path = tmp_path / "z.csv"
    save_sample(z, path)
    loaded = load_claims(path)
    assert np.array_equal(loaded.z_values, z)
    assert loaded.n_dropped_zero == 0


def test_load_raw_schema(tmp_path):
    path = tmp_path / "claims.csv"
    path.write_text("loss,deductible,cover\n150,100,200\n300,100,200\n50,100,200\n")
    out = load_claims(path, schema="raw")
    assert list(out.z_values) == [0.25, 1.0]
    assert out.n_dropped_zero == 1


def test_load_errors_name_the_line(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("z\n0.5\nnot-a-number\n")
    with pytest.raises(DataError, match=r":3:"):
        load_claims(path)

    path.write_text("z\n0.5\n1.5\n")
    with pytest.raises(DataError, match=r"outside"):
        load_claims(path)

    path.write_text("wrong\n0.5\n")
    with pytest.raises(DataError, match="header"):
        load_claims(path)

    path.write_text("z\n")
    with pytest.raises(DataError, match="no data"):
        load_claims(path)


def test_load_clamps_within_tolerance(tmp_path):
    path = tmp_path / "edge.csv"
    path.write_text("z\n1.0000000000009\n-0.0000000000002\n0.5\n")
    out = load_claims(path)
    assert 1.0 in out.z_values
    assert out.n_dropped_zero == 1  # the tiny negative clamps to zero and is dropped
    assert out.z_values.size == 2

import math

import numpy as np
import pytest

from expocurve import (
    DegenerateDistributionError,
    classify_shape,
    curve_to_distribution,
    from_ab,
    logistic_form_pdf,
    mbbefd_curve,
    mbbefd_distribution,
    quadrature,
    swiss_re_params,
    to_ab,
    validate_exposure_curve,
)
from expocurve.mbbefd import MbbefdParams


def test_reference_values():
    dist = mbbefd_distribution(MbbefdParams(b=0.1, g=3.0))
    assert dist.point_mass_p == pytest.approx(1.0 / 3.0, abs=1e-14)
    assert dist.mean == pytest.approx(0.6722726725, abs=1e-9)
    assert dist.pdf(0.0) == pytest.approx(0.5116855762, abs=1e-9)


def test_point_mass_is_inverse_g():
    for b, g in ((0.05, 2.0), (0.2, 4.0), (1.0, 3.0), (0.25, 4.0)):
        dist = mbbefd_distribution(MbbefdParams(b=b, g=g))
        assert dist.point_mass_p == pytest.approx(1.0 / g, abs=1e-14)


@pytest.mark.parametrize("b,g", [(1.0, 2.5), (0.25, 4.0), (0.1, 3.0), (0.4, 1.8)])
def test_branches_are_valid_curves(b, g):
    params = MbbefdParams(b=b, g=g)
    report = validate_exposure_curve(mbbefd_curve(params))
    assert report.passed, report.checks
    dist = mbbefd_distribution(params)
    mass = quadrature(dist.pdf, 0.0, 1.0) + dist.point_mass_p
    assert mass == pytest.approx(1.0, abs=1e-9)


def test_bg_equal_one_branch():
    # G = (1 - b^z)/(1 - b) when bg = 1
    b = 0.25
    curve = mbbefd_curve(MbbefdParams(b=b, g=1.0 / b))
    for z in (0.0, 0.3, 1.0):
        assert float(curve.g(z)) == pytest.approx((1.0 - b**z) / (1.0 - b), abs=1e-13)


def test_identity_branch():
    curve = mbbefd_curve(MbbefdParams(b=0.5, g=1.0))
    assert float(curve.g(0.37)) == pytest.approx(0.37, abs=1e-14)
    with pytest.raises(DegenerateDistributionError):
        mbbefd_distribution(MbbefdParams(b=0.5, g=1.0))
    with pytest.raises(DegenerateDistributionError):
        mbbefd_distribution(MbbefdParams(b=0.0, g=3.0))


def test_swiss_re_parametrization():
    params = swiss_re_params(3.0)
    assert params.b == pytest.approx(math.exp(3.1 - 0.15 * 4.0 * 3.0), abs=1e-12)
    assert params.g == pytest.approx(math.exp((0.78 + 0.36) * 3.0), abs=1e-12)
    # every Swiss Re / Lloyd's curve has a decreasing density
    for c in (1.5, 2.0, 3.0, 4.0, 5.0):
        assert classify_shape(swiss_re_params(c)).shape == "monotone-decreasing"


def test_classify_shape_cases():
    assert classify_shape(MbbefdParams(b=0.25, g=4.0)).shape == "monotone-decreasing"
    r = classify_shape(MbbefdParams(b=0.1, g=3.0))
    assert r.shape == "unimodal"
    assert r.mode == pytest.approx(0.5440680444, abs=1e-9)
    # r = (1-bg)/(g-1) >= 1 gives an increasing density
    assert classify_shape(MbbefdParams(b=0.01, g=1.5)).shape == "monotone-increasing"


def test_mode_matches_grid_argmax():
    params = MbbefdParams(b=0.1, g=3.0)
    report = classify_shape(params)
    z = np.linspace(0.0, 1.0 - 1e-9, 100_000)
    dist = mbbefd_distribution(params)
    zhat = z[np.argmax(dist.pdf(z))]
    assert abs(zhat - report.mode) < 1e-4


def test_logistic_form_matches_branch_pdf():
    params = MbbefdParams(b=0.1, g=3.0)
    dist = mbbefd_distribution(params)
    z = np.linspace(0.0, 0.999, 101)
    assert np.max(np.abs(logistic_form_pdf(params, z) - dist.pdf(z))) < 1e-12


def test_ab_roundtrip():
    params = MbbefdParams(b=0.1, g=3.0)
    back = from_ab(to_ab(params))
    assert back.b == pytest.approx(params.b, abs=1e-12)
    assert back.g == pytest.approx(params.g, abs=1e-12)


def test_general_branch_moments():
    # mean equals 1/G'(0) and the integral of the survival function
    params = MbbefdParams(b=0.15, g=5.0)
    curve = mbbefd_curve(params)
    dist = mbbefd_distribution(params)
    assert dist.mean == pytest.approx(1.0 / float(curve.g1(0.0)), abs=1e-13)
    tail = quadrature(lambda z: 1.0 - dist.cdf(z), 0.0, 1.0)
    assert dist.mean == pytest.approx(tail, abs=1e-9)

import math

import numpy as np
import pytest

from expocurve import (
    DomainError,
    FAMILY_NAMES,
    InvalidCurveError,
    censored_exponential,
    curve_to_distribution,
    exp_linked_curve,
    exp_linked_distribution,
    get_family,
    linear_inner,
    log_linked_curve,
    log_linked_distribution,
    mbbefd_curve,
    mbbefd_distribution,
    mbbefd_inner,
    pdf_derivative,
    power_log_inner,
    quad_exp_inner,
    quadrature,
    sine_log_inner,
    to_ab,
    unimodality_check,
    validate_exposure_curve,
)
from expocurve.mbbefd import MbbefdParams

from conftest import draw_theta


def test_registry_names():
    assert set(FAMILY_NAMES) == {
        "mbbefd", "power-log", "sine-log", "quad-exp", "power-exp", "exponential",
    }
    with pytest.raises(DomainError, match="unknown family"):
        get_family("weibull")


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_distribution_normalizes(name):
    rng = np.random.default_rng(hash(name) % 2**32)
    spec = get_family(name)
    theta = draw_theta(name, rng)
    dist = spec.make_distribution(theta)
    mass = quadrature(dist.pdf, 0.0, 1.0) + dist.point_mass_p
    assert mass == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_curve_passes_grid_validation(name):
    rng = np.random.default_rng(1 + hash(name) % 2**32)
    spec = get_family(name)
    theta = draw_theta(name, rng)
    assert validate_exposure_curve(spec.curve(theta)).passed


def test_censored_exponential_closed_form():
    lam = 2.0
    dist = censored_exponential(lam)
    assert dist.point_mass_p == pytest.approx(math.exp(-2.0), abs=1e-14)
    assert dist.mean == pytest.approx((1.0 - math.exp(-2.0)) / 2.0, abs=1e-14)
    for z in (0.0, 0.25, 0.9):
        assert dist.cdf(z) == pytest.approx(1.0 - math.exp(-lam * z), abs=1e-14)
        assert dist.pdf(z) == pytest.approx(lam * math.exp(-lam * z), abs=1e-14)


def test_log_link_reproduces_mbbefd():
    params = MbbefdParams(b=0.1, g=3.0)
    ab = to_ab(params)
    built = curve_to_distribution(log_linked_curve(mbbefd_inner(ab.a, ab.b)))
    ref = mbbefd_distribution(params)
    z = np.linspace(0.0, 0.999, 101)
    assert np.max(np.abs(built.cdf(z) - ref.cdf(z))) < 1e-12
    assert built.point_mass_p == pytest.approx(ref.point_mass_p, abs=1e-13)


def test_exp_link_linear_inner_is_exponential():
    lam = 1.7
    built = curve_to_distribution(exp_linked_curve(linear_inner(lam)))
    ref = censored_exponential(lam)
    for z in (0.1, 0.5, 0.95):
        assert built.cdf(z) == pytest.approx(ref.cdf(z), abs=1e-13)


def test_log_link_condition_violation_named():
    # b(z) = 1 + 4^z is positive and increasing but log-convex
    with pytest.raises(InvalidCurveError, match=r"condition .* violated at z="):
        log_linked_curve(mbbefd_inner(a=1.0, b=4.0))
    # a negative inner value trips the positivity precondition instead
    with pytest.raises(InvalidCurveError, match=r"b\(z\) > 0"):
        log_linked_curve(mbbefd_inner(a=-2.0, b=4.0))


def test_exp_link_condition_violation_named():
    # quad-exp with beta > 0 has b' changing sign
    with pytest.raises(InvalidCurveError, match="condition"):
        exp_linked_curve(quad_exp_inner(-1.0, 2.0))


@pytest.mark.parametrize(
    "name,theta,needle",
    [
        ("mbbefd", {"b": 0.2, "g": 1.0}, "g > 1"),
        ("mbbefd", {"b": 0.9, "g": 3.0}, "b < 1/(2g-1)"),
        ("power-log", {"alpha": 1.0, "delta": 3.0, "a": 1.0}, "alpha > 1"),
        ("power-log", {"alpha": 2.0, "delta": 2.0, "a": 1.0}, "delta > 2"),
        ("power-log", {"alpha": 2.0, "delta": 3.0, "a": 0.4}, "1/(delta-1)"),
        ("sine-log", {"beta": 0.2, "alpha": 1.0, "a": 1.2}, "beta in (-pi/2, 0)"),
        ("sine-log", {"beta": -0.5, "alpha": 2.2, "a": 1.2}, "alpha in (0, pi/2 - beta)"),
        ("sine-log", {"beta": -math.pi / 4, "alpha": 1.0, "a": 0.9}, "1 < a"),
        ("quad-exp", {"alpha": 0.5, "beta": -3.0}, "alpha < 0"),
        ("quad-exp", {"alpha": -2.0, "beta": -1.0}, "beta"),
        ("power-exp", {"alpha": 2.5, "delta": 0.5, "epsilon": -1.0, "beta": 5.0}, "alpha in (1, 2)"),
        ("power-exp", {"alpha": 1.5, "delta": 0.5, "epsilon": -1.0, "beta": -5.0}, "beta >"),
        ("exponential", {"lambda": 0.0}, "lambda > 0"),
    ],
)
def test_domain_rejections_name_the_inequality(name, theta, needle):
    with pytest.raises(DomainError) as err:
        get_family(name).check_domain(theta)
    assert needle in str(err.value)


def test_power_log_mode():
    theta = {"alpha": 2.0, "delta": 3.0, "a": 1.0}
    report = unimodality_check("power-log", theta)
    assert report.shape == "unimodal"
    dist = get_family("power-log").make_distribution(theta)
    z = np.linspace(0.0, 1.0 - 1e-9, 100_000)
    assert abs(z[np.argmax(dist.pdf(z))] - report.mode) < 1e-4


def test_power_log_monotone_when_delta_small():
    # below delta = 2 no interior mode can exist
    report = unimodality_check("power-log", {"alpha": 2.0, "delta": 1.8, "a": 2.0})
    assert report.shape.startswith("monotone")


def test_sine_log_mode():
    theta = {"beta": -math.pi / 4.0, "alpha": 1.0, "a": 1.2}
    report = unimodality_check("sine-log", theta)
    assert report.shape == "unimodal"
    expected = (math.asin((1.2**2 - 2.0) / 1.2) - theta["beta"]) / theta["alpha"]
    assert report.mode == pytest.approx(expected, abs=1e-12)
    dist = get_family("sine-log").make_distribution(theta)
    z = np.linspace(0.0, 1.0 - 1e-9, 100_000)
    assert abs(z[np.argmax(dist.pdf(z))] - report.mode) < 1e-4


def test_sine_log_monotone_when_a_large():
    report = unimodality_check("sine-log", {"beta": -0.4, "alpha": 0.5, "a": 2.0})
    assert report.shape.startswith("monotone")


def test_quad_exp_mode():
    theta = {"alpha": -2.0, "beta": -3.0}
    report = unimodality_check("quad-exp", theta)
    assert report.shape == "unimodal"
    assert report.mode == pytest.approx(0.1160254038, abs=1e-9)
    dist = get_family("quad-exp").make_distribution(theta)
    z = np.linspace(0.0, 1.0 - 1e-9, 100_000)
    assert abs(z[np.argmax(dist.pdf(z))] - report.mode) < 1e-4


def test_quad_exp_monotone_branches():
    assert unimodality_check("quad-exp", {"alpha": -2.0, "beta": -3.7}).shape == "monotone-decreasing"


def test_power_exp_shape_by_scan():
    theta = draw_theta("power-exp", np.random.default_rng(3))
    report = unimodality_check("power-exp", theta)
    assert report.shape in ("unimodal", "monotone-decreasing", "monotone-increasing")
    if report.shape == "unimodal":
        dist = get_family("power-exp").make_distribution(theta)
        z = np.linspace(0.0, 1.0 - 1e-9, 100_000)
        assert abs(z[np.argmax(dist.pdf(z))] - report.mode) < 1e-3


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_pdf_derivative_matches_finite_differences(name):
    rng = np.random.default_rng(5 + hash(name) % 2**32)
    spec = get_family(name)
    theta = draw_theta(name, rng)
    dist = spec.make_distribution(theta)
    z = np.array([0.15, 0.45, 0.8])
    h = 1e-6
    fd = (dist.pdf(z + h) - dist.pdf(z - h)) / (2.0 * h)
    analytic = np.asarray(pdf_derivative(name, theta, z), dtype=float)
    assert np.max(np.abs(fd - analytic)) < 1e-4 * max(1.0, np.max(np.abs(analytic)))


def test_pdf_derivative_vanishes_at_mode():
    theta = {"alpha": -2.0, "beta": -3.0}
    mode = unimodality_check("quad-exp", theta).mode
    assert abs(float(pdf_derivative("quad-exp", theta, mode))) < 1e-10


def test_reference_means():
    cases = [
        ("power-log", {"alpha": 2.0, "delta": 3.0, "a": 1.0}, 0.767152),
        ("sine-log", {"beta": -math.pi / 4.0, "alpha": 1.0, "a": 1.2}, 0.7341037),
        ("quad-exp", {"alpha": -2.0, "beta": -3.0}, 0.3310874),
        ("power-exp", {"alpha": 1.5, "delta": 0.5, "epsilon": -1.0, "beta": 0.5}, 0.5526007),
    ]
    for name, theta, mean in cases:
        dist = get_family(name).make_distribution(theta)
        assert dist.mean == pytest.approx(mean, abs=5e-7)

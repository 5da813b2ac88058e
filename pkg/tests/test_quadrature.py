import math

import numpy as np
import pytest

from expocurve import AccuracyError, quadrature


def test_polynomial_exact():
    assert quadrature(lambda x: x * x, 0.0, 1.0) == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert quadrature(lambda x: 4.0 * x**3 - 2.0 * x, 0.0, 2.0) == pytest.approx(12.0, abs=1e-10)


def test_trig():
    val = quadrature(math.sin, 0.0, math.pi)
    assert abs(val - 2.0) < 1e-10


def test_rejects_non_increasing_bounds():
    with pytest.raises(ValueError):
        quadrature(math.exp, 1.0, 0.0)
    with pytest.raises(ValueError):
        quadrature(math.exp, 0.5, 0.5)


def test_square_root_endpoint():
    # infinite derivative at 0 but finite integrand; the offset keeps z > 0
    val = quadrature(math.sqrt, 0.0, 1.0, tol=1e-8)
    assert abs(val - 2.0 / 3.0) < 1e-7


def test_log_singularity_estimate():
    # log z is integrable but too singular for the depth budget; the error
    # still carries a usable estimate
    with pytest.raises(AccuracyError) as err:
        quadrature(math.log, 0.0, 1.0)
    assert abs(err.value.estimate + 1.0) < 1e-3


def test_depth_exhaustion_reports_estimate():
    with pytest.raises(AccuracyError) as err:
        quadrature(lambda x: math.sin(1.0 / (x + 1e-8)), 0.0, 1.0, tol=1e-14, max_depth=4)
    assert np.isfinite(err.value.estimate)

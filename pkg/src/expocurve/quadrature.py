"""Adaptive Simpson quadrature for smooth integrands on a bounded interval."""

import math

from .errors import AccuracyError

#: Offset used to evaluate integrands openly at the interval endpoints.
ENDPOINT_OFFSET = 1e-12

DEFAULT_TOL = 1e-10
MAX_DEPTH = 60


def _simpson(fa, fm, fb, h):
    return h / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = _simpson(fa, flm, fm, m - a)
    right = _simpson(fm, frm, fb, b - m)
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0, True
    if depth <= 0:
        return left + right + delta / 15.0, False
    lv, lok = _adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
    rv, rok = _adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    return lv + rv, lok and rok


def quadrature(f, a, b, tol=DEFAULT_TOL, max_depth=MAX_DEPTH):
    """Integrate ``f`` over ``[a, b]`` to absolute tolerance ``tol``.

    Endpoints are evaluated at an inward offset of ``1e-12`` so integrands
    that are only defined on the open interval are handled. Raises
    :class:`AccuracyError` (carrying the best estimate) if the recursion
    depth is exhausted before the tolerance is met.
    """
    if not a < b:
        raise ValueError(f"integration bounds must satisfy a < b, got {a}, {b}")
    fa = float(f(a + ENDPOINT_OFFSET))
    fb = float(f(b - ENDPOINT_OFFSET))
    m = 0.5 * (a + b)
    fm = float(f(m))
    for v in (fa, fm, fb):
        if not math.isfinite(v):
            raise ValueError("integrand is not finite on the interval interior")
    whole = _simpson(fa, fm, fb, b - a)
    value, ok = _adaptive(f, a, b, fa, fm, fb, whole, tol, max_depth)
    if not ok:
        raise AccuracyError(
            f"adaptive quadrature did not reach tol={tol} within depth {max_depth}",
            estimate=value,
        )
    return value

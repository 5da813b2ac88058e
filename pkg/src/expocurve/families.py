"""Linked exposure-curve families.

A curve is built from an inner function b(z) through a link h as
G(z) = (h(b(z)) - h(b(0))) / (h(b(1)) - h(b(0))). Two links are
supported:

* logarithmic, h = log: G is an exposure curve iff b'(0) > 0, b' >= 0 and
  b''b - b'^2 <= 0 everywhere, or the mirrored set with b decreasing and
  b''b - b'^2 >= 0;
* exponential, h = exp: same structure with b'' + b'^2 in place of
  b''b - b'^2.

Concrete inner functions: a + b^z (the MBBEFD family in disguise),
(1 - z/alpha)^delta + a (power-log), sin(alpha z + beta) + a (sine-log),
alpha z^2 + beta z (quad-exp), epsilon (z+delta)^alpha - beta z
(power-exp), and -lambda z (censored exponential).

The module also hosts the family registry used by the fitting layer and
the CLI: parameter domains, bijections to unconstrained coordinates, and
deterministic starting points.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from .errors import DomainError, InvalidCurveError, UnsupportedOperationError
from .exposure import CensoredDistribution, ExposureCurve
from .mbbefd import MbbefdParams, ShapeReport, classify_shape, mbbefd_distribution, mbbefd_curve

__all__ = [
    "InnerFunction",
    "log_linked_curve",
    "log_linked_distribution",
    "exp_linked_curve",
    "exp_linked_distribution",
    "censored_exponential",
    "pdf_derivative",
    "unimodality_check",
    "FamilySpec",
    "get_family",
    "FAMILY_NAMES",
    "mbbefd_inner",
    "power_log_inner",
    "sine_log_inner",
    "quad_exp_inner",
    "power_exp_inner",
    "linear_inner",
]

CONDITION_TOL = 1e-10
GRID_POINTS = 1001


@dataclass(frozen=True)
class InnerFunction:
    """Inner function b with analytic derivatives; b3 may be absent."""

    b: Callable
    b1: Callable
    b2: Callable
    b3: Optional[Callable] = None
    params: dict = field(default_factory=dict)
    label: str = ""


# ---------------------------------------------------------------------------
# Inner-function constructors


def mbbefd_inner(a: float, b: float) -> InnerFunction:
    """b(z) = a + b^z, the inner function behind the MBBEFD curve."""
    if not b > 0.0 or b == 1.0:
        raise DomainError(f"need b > 0 and b != 1, got b={b}")
    lb = math.log(b)
    return InnerFunction(
        b=lambda z: a + b ** np.asarray(z, dtype=float),
        b1=lambda z: lb * b ** np.asarray(z, dtype=float),
        b2=lambda z: lb ** 2 * b ** np.asarray(z, dtype=float),
        b3=lambda z: lb ** 3 * b ** np.asarray(z, dtype=float),
        params={"a": a, "b": b},
        label=f"a+b^z(a={a:g}, b={b:g})",
    )


def power_log_inner(alpha: float, delta: float, a: float) -> InnerFunction:
    """b(z) = (1 - z/alpha)^delta + a."""
    if not alpha > 1.0:
        raise DomainError(f"power-log requires alpha > 1, got {alpha}")
    if not delta > 1.0:
        raise DomainError(f"power-log requires delta > 1, got {delta}")

    def base(z, k=0.0):
        return (1.0 - np.asarray(z, dtype=float) / alpha) ** (delta - k)

    return InnerFunction(
        b=lambda z: base(z) + a,
        b1=lambda z: -(delta / alpha) * base(z, 1.0),
        b2=lambda z: (delta * (delta - 1.0) / alpha ** 2) * base(z, 2.0),
        b3=lambda z: -(delta * (delta - 1.0) * (delta - 2.0) / alpha ** 3) * base(z, 3.0),
        params={"alpha": alpha, "delta": delta, "a": a},
        label=f"power-log(alpha={alpha:g}, delta={delta:g}, a={a:g})",
    )


def sine_log_inner(beta: float, alpha: float, a: float) -> InnerFunction:
    """b(z) = sin(alpha z + beta) + a."""
    if not -math.pi / 2.0 < beta < 0.0:
        raise DomainError(f"sine-log requires beta in (-pi/2, 0), got {beta}")
    if not 0.0 < alpha < math.pi / 2.0 - beta:
        raise DomainError(f"sine-log requires alpha in (0, pi/2 - beta), got {alpha}")

    def arg(z):
        return alpha * np.asarray(z, dtype=float) + beta

    return InnerFunction(
        b=lambda z: np.sin(arg(z)) + a,
        b1=lambda z: alpha * np.cos(arg(z)),
        b2=lambda z: -(alpha ** 2) * np.sin(arg(z)),
        b3=lambda z: -(alpha ** 3) * np.cos(arg(z)),
        params={"beta": beta, "alpha": alpha, "a": a},
        label=f"sine-log(beta={beta:g}, alpha={alpha:g}, a={a:g})",
    )


def quad_exp_inner(alpha: float, beta: float) -> InnerFunction:
    """b(z) = alpha z^2 + beta z."""
    if not alpha < 0.0:
        raise DomainError(f"quad-exp requires alpha < 0, got {alpha}")
    return InnerFunction(
        b=lambda z: alpha * np.asarray(z, dtype=float) ** 2 + beta * np.asarray(z, dtype=float),
        b1=lambda z: 2.0 * alpha * np.asarray(z, dtype=float) + beta,
        b2=lambda z: 2.0 * alpha * np.ones_like(np.asarray(z, dtype=float)),
        b3=lambda z: np.zeros_like(np.asarray(z, dtype=float)),
        params={"alpha": alpha, "beta": beta},
        label=f"quad-exp(alpha={alpha:g}, beta={beta:g})",
    )


def power_exp_inner(alpha: float, delta: float, epsilon: float, beta: float) -> InnerFunction:
    """b(z) = epsilon (z + delta)^alpha - beta z."""
    if not 1.0 < alpha < 2.0:
        raise DomainError(f"power-exp requires alpha in (1, 2), got {alpha}")
    if not delta > 0.0:
        raise DomainError(f"power-exp requires delta > 0, got {delta}")
    if not epsilon < 0.0:
        raise DomainError(f"power-exp requires epsilon < 0, got {epsilon}")

    def shift(z, k=0.0):
        return (np.asarray(z, dtype=float) + delta) ** (alpha - k)

    return InnerFunction(
        b=lambda z: epsilon * shift(z) - beta * np.asarray(z, dtype=float),
        b1=lambda z: alpha * epsilon * shift(z, 1.0) - beta,
        b2=lambda z: alpha * (alpha - 1.0) * epsilon * shift(z, 2.0),
        b3=lambda z: alpha * (alpha - 1.0) * (alpha - 2.0) * epsilon * shift(z, 3.0),
        params={"alpha": alpha, "delta": delta, "epsilon": epsilon, "beta": beta},
        label=f"power-exp(alpha={alpha:g}, delta={delta:g}, eps={epsilon:g}, beta={beta:g})",
    )


def linear_inner(lam: float) -> InnerFunction:
    """b(z) = -lambda z, the censored-exponential inner function."""
    if not lam > 0.0:
        raise DomainError(f"rate must be positive, got {lam}")
    return InnerFunction(
        b=lambda z: -lam * np.asarray(z, dtype=float),
        b1=lambda z: -lam * np.ones_like(np.asarray(z, dtype=float)),
        b2=lambda z: np.zeros_like(np.asarray(z, dtype=float)),
        b3=lambda z: np.zeros_like(np.asarray(z, dtype=float)),
        params={"lambda": lam},
        label=f"exponential(lambda={lam:g})",
    )


# ---------------------------------------------------------------------------
# Linked constructions


def _check_conditions(inner: InnerFunction, combo: Callable, combo_name: str, link: str):
    """Grid check of the monotone/concavity condition sets; returns branch sign."""
    z = np.linspace(0.0, 1.0, GRID_POINTS)
    bv = np.asarray(inner.b(z), dtype=float)
    b1v = np.asarray(inner.b1(z), dtype=float)
    cv = np.asarray(combo(z), dtype=float)
    for name, vals in (("b", bv), ("b'", b1v), (combo_name, cv)):
        bad = ~np.isfinite(vals)
        if bad.any():
            raise InvalidCurveError(f"{name} is not finite at z={z[bad][0]:.6g}")
    if link == "log" and bv.min() <= 0.0:
        i = int(np.argmin(bv))
        raise InvalidCurveError(f"log link requires b(z) > 0; violated at z={z[i]:.6g}")
    if abs(float(bv[0]) - float(bv[-1])) <= 1e-14:
        raise InvalidCurveError("inner function must satisfy b(0) != b(1)")
    bp0 = float(b1v[0])
    if bp0 > 0.0:
        if b1v.min() < -CONDITION_TOL:
            i = int(np.argmin(b1v))
            raise InvalidCurveError(f"condition b'(z) >= 0 violated at z={z[i]:.6g}")
        if cv.max() > CONDITION_TOL:
            i = int(np.argmax(cv))
            raise InvalidCurveError(f"condition {combo_name} <= 0 violated at z={z[i]:.6g}")
        return 1
    if bp0 < 0.0:
        if b1v.max() > CONDITION_TOL:
            i = int(np.argmax(b1v))
            raise InvalidCurveError(f"condition b'(z) <= 0 violated at z={z[i]:.6g}")
        if cv.min() < -CONDITION_TOL:
            i = int(np.argmin(cv))
            raise InvalidCurveError(f"condition {combo_name} >= 0 violated at z={z[i]:.6g}")
        return -1
    raise InvalidCurveError("condition b'(0) != 0 violated at z=0")


def log_linked_curve(inner: InnerFunction, validate: bool = True) -> ExposureCurve:
    """G(z) = (log b(z) - log b(0)) / (log b(1) - log b(0))."""
    if validate:
        _check_conditions(
            inner,
            lambda z: np.asarray(inner.b2(z)) * np.asarray(inner.b(z)) - np.asarray(inner.b1(z)) ** 2,
            "b''b - b'^2",
            "log",
        )
    b0 = float(inner.b(0.0))
    b1 = float(inner.b(1.0))
    if b0 <= 0.0 or b1 <= 0.0 or b0 == b1:
        raise InvalidCurveError("log link needs b(0), b(1) > 0 and b(0) != b(1)")
    denom = math.log(b1) - math.log(b0)

    def G(z):
        return (np.log(np.asarray(inner.b(z), dtype=float)) - math.log(b0)) / denom

    def G1(z):
        return np.asarray(inner.b1(z), dtype=float) / np.asarray(inner.b(z), dtype=float) / denom

    def G2(z):
        bv = np.asarray(inner.b(z), dtype=float)
        return (np.asarray(inner.b2(z)) * bv - np.asarray(inner.b1(z)) ** 2) / bv ** 2 / denom

    return ExposureCurve(g=G, g1=G1, g2=G2, label=f"log~{inner.label}")


def log_linked_distribution(inner: InnerFunction, validate: bool = True) -> CensoredDistribution:
    """Closed-form distribution of the log-linked curve."""
    if validate:
        log_linked_curve(inner, validate=True)
    b0 = float(inner.b(0.0))
    bp0 = float(inner.b1(0.0))
    b1 = float(inner.b(1.0))
    bp1 = float(inner.b1(1.0))
    p = bp1 / bp0 * b0 / b1
    mean = b0 / (-bp0) * math.log(b0 / b1)

    def cdf(z):
        z = np.asarray(z, dtype=float)
        out = 1.0 - np.asarray(inner.b1(z)) / bp0 * b0 / np.asarray(inner.b(z))
        out = np.where(z >= 1.0, 1.0, out)
        return out if out.ndim else float(out)

    def pdf(z):
        z = np.asarray(z, dtype=float)
        bv = np.asarray(inner.b(z), dtype=float)
        out = b0 / (-bp0) * (np.asarray(inner.b2(z)) * bv - np.asarray(inner.b1(z)) ** 2) / bv ** 2
        return out if out.ndim else float(out)

    return CensoredDistribution(cdf=cdf, pdf=pdf, point_mass_p=p, mean=mean,
                                label=f"log~{inner.label}")


def exp_linked_curve(inner: InnerFunction, validate: bool = True) -> ExposureCurve:
    """G(z) = (e^{b(z)} - e^{b(0)}) / (e^{b(1)} - e^{b(0)})."""
    if validate:
        _check_conditions(
            inner,
            lambda z: np.asarray(inner.b2(z)) + np.asarray(inner.b1(z)) ** 2,
            "b'' + b'^2",
            "exp",
        )
    b0 = float(inner.b(0.0))
    b1 = float(inner.b(1.0))
    if b0 == b1:
        raise InvalidCurveError("inner function must satisfy b(0) != b(1)")
    denom = math.exp(b1 - b0) - 1.0

    def G(z):
        return (np.exp(np.asarray(inner.b(z), dtype=float) - b0) - 1.0) / denom

    def G1(z):
        return np.exp(np.asarray(inner.b(z), dtype=float) - b0) * np.asarray(inner.b1(z)) / denom

    def G2(z):
        ez = np.exp(np.asarray(inner.b(z), dtype=float) - b0)
        return ez * (np.asarray(inner.b1(z)) ** 2 + np.asarray(inner.b2(z))) / denom

    return ExposureCurve(g=G, g1=G1, g2=G2, label=f"exp~{inner.label}")


def exp_linked_distribution(inner: InnerFunction, validate: bool = True) -> CensoredDistribution:
    """Closed-form distribution of the exp-linked curve."""
    if validate:
        exp_linked_curve(inner, validate=True)
    b0 = float(inner.b(0.0))
    bp0 = float(inner.b1(0.0))
    b1 = float(inner.b(1.0))
    bp1 = float(inner.b1(1.0))
    p = math.exp(b1 - b0) * bp1 / bp0
    mean = (math.exp(b1 - b0) - 1.0) / bp0

    def cdf(z):
        z = np.asarray(z, dtype=float)
        out = 1.0 - np.exp(np.asarray(inner.b(z), dtype=float) - b0) * np.asarray(inner.b1(z)) / bp0
        out = np.where(z >= 1.0, 1.0, out)
        return out if out.ndim else float(out)

    def pdf(z):
        z = np.asarray(z, dtype=float)
        ez = np.exp(np.asarray(inner.b(z), dtype=float) - b0)
        out = -ez * (np.asarray(inner.b1(z)) ** 2 + np.asarray(inner.b2(z))) / bp0
        return out if out.ndim else float(out)

    return CensoredDistribution(cdf=cdf, pdf=pdf, point_mass_p=p, mean=mean,
                                label=f"exp~{inner.label}")


def censored_exponential(lam: float) -> CensoredDistribution:
    """Distribution of min(Y, 1) for Y ~ Exp(lam), via the exp link."""
    return exp_linked_distribution(linear_inner(lam), validate=False)


def _inner_pdf_derivative(inner: InnerFunction, link: str, z):
    if inner.b3 is None:
        raise UnsupportedOperationError(
            f"density derivative for {inner.label!r} needs the third derivative of b"
        )
    z = np.asarray(z, dtype=float)
    b0 = float(inner.b(0.0))
    bp0 = float(inner.b1(0.0))
    bv = np.asarray(inner.b(z), dtype=float)
    b1v = np.asarray(inner.b1(z), dtype=float)
    b2v = np.asarray(inner.b2(z), dtype=float)
    b3v = np.asarray(inner.b3(z), dtype=float)
    if link == "log":
        out = b0 / (-bp0) * (b3v * bv ** 2 - 3.0 * b2v * b1v * bv + 2.0 * b1v ** 3) / bv ** 3
    elif link == "exp":
        out = -np.exp(bv - b0) * (b1v ** 3 + 3.0 * b1v * b2v + b3v) / bp0
    else:
        raise ValueError(f"unknown link {link!r}")
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# Parameter transforms


def _sigmoid(t):
    t = np.asarray(t, dtype=float)
    out = np.where(t >= 0, 1.0 / (1.0 + np.exp(-np.abs(t))),
                   np.exp(-np.abs(t)) / (1.0 + np.exp(-np.abs(t))))
    return float(out) if out.ndim == 0 else out


def _logit(u):
    return math.log(u / (1.0 - u))


@dataclass(frozen=True)
class FamilySpec:
    """Named parametric family with domain, transforms and constructors."""

    name: str
    param_names: tuple
    link: str
    check_domain: Callable  # theta dict -> None, raises DomainError
    make_inner: Callable  # theta dict -> InnerFunction
    make_distribution: Callable  # theta dict -> CensoredDistribution (no grid check)
    to_unconstrained: Callable  # theta dict -> np.ndarray
    from_unconstrained: Callable  # np.ndarray -> theta dict
    initial_points: tuple  # deterministic starting thetas
    shape: Callable  # theta dict -> ShapeReport

    @property
    def k(self) -> int:
        return len(self.param_names)

    def curve(self, theta: dict, validate: bool = True) -> ExposureCurve:
        if self.name == "mbbefd":
            return mbbefd_curve(MbbefdParams(b=theta["b"], g=theta["g"]))
        inner = self.make_inner(theta)
        if self.link == "log":
            return log_linked_curve(inner, validate=validate)
        return exp_linked_curve(inner, validate=validate)


def _grid_scan_shape(fprime: Callable, pdf: Callable, points: int = 10_000) -> ShapeReport:
    """Classify the density shape from sign changes of its derivative.

    0 sign changes -> monotone, 1 (+ to -) -> unimodal with interpolated
    mode, anything else -> rejected as multimodal.
    """
    z = np.linspace(0.0, 1.0 - 1e-9, points)
    d = np.asarray(fprime(z), dtype=float)
    scale = float(np.max(np.abs(d))) or 1.0
    s = np.sign(np.where(np.abs(d) <= 1e-12 * scale, 0.0, d))
    nz = s[s != 0]
    changes = np.nonzero(np.diff(nz) != 0)[0]
    if changes.size == 0:
        direction = "monotone-increasing" if (nz.size and nz[0] > 0) else "monotone-decreasing"
        return ShapeReport(shape=direction)
    if changes.size == 1 and nz[0] > 0:
        # locate the crossing on the full grid
        idx = np.nonzero((d[:-1] > 0) & (d[1:] <= 0))[0]
        i = int(idx[0])
        z0, z1 = z[i], z[i + 1]
        d0, d1 = d[i], d[i + 1]
        mode = z0 if d0 == d1 else z0 + (z1 - z0) * d0 / (d0 - d1)
        return ShapeReport(shape="unimodal", mode=float(mode))
    raise DomainError("density derivative changes sign more than once (multimodal); rejected")


# --- per-family definitions -------------------------------------------------


def _mbbefd_bounds_b(g: float):
    return max(0.0, (2.0 - g) / g), 1.0 / (2.0 * g - 1.0)


def _mbbefd_check(theta):
    b, g = theta["b"], theta["g"]
    if not g > 1.0:
        raise DomainError(f"mbbefd fitting domain requires g > 1, got g={g}")
    lo, hi = _mbbefd_bounds_b(g)
    if not lo < b < hi:
        raise DomainError(
            f"mbbefd fitting domain requires max(0,(2-g)/g) < b < 1/(2g-1), "
            f"i.e. {lo:g} < b < {hi:g}, got b={b}"
        )


def _mbbefd_to_unc(theta):
    b, g = theta["b"], theta["g"]
    lo, hi = _mbbefd_bounds_b(g)
    return np.array([math.log(g - 1.0), _logit((b - lo) / (hi - lo))])


def _mbbefd_from_unc(x):
    g = 1.0 + math.exp(float(x[0]))
    lo, hi = _mbbefd_bounds_b(g)
    b = lo + _sigmoid(float(x[1])) * (hi - lo)
    return {"b": b, "g": g}


def _mbbefd_dist(theta):
    return mbbefd_distribution(MbbefdParams(b=theta["b"], g=theta["g"]))


def _mbbefd_make_inner(theta):
    b, g = theta["b"], theta["g"]
    a = b * (g - 1.0) / (1.0 - b * g)
    return mbbefd_inner(a=a, b=b)


def _mbbefd_shape(theta):
    return classify_shape(MbbefdParams(b=theta["b"], g=theta["g"]))


def _powerlog_check(theta):
    al, de, a = theta["alpha"], theta["delta"], theta["a"]
    if not al > 1.0:
        raise DomainError(f"power-log requires alpha > 1, got {al}")
    if not de > 2.0:
        raise DomainError(f"power-log fitting domain requires delta > 2, got {de}")
    if not a > 1.0 / (de - 1.0):
        raise DomainError(f"power-log requires a > 1/(delta-1) = {1.0 / (de - 1.0):g}, got {a}")


def _powerlog_to_unc(theta):
    al, de, a = theta["alpha"], theta["delta"], theta["a"]
    return np.array([math.log(al - 1.0), math.log(de - 2.0), math.log(a - 1.0 / (de - 1.0))])


def _powerlog_from_unc(x):
    al = 1.0 + math.exp(float(x[0]))
    de = 2.0 + math.exp(float(x[1]))
    a = 1.0 / (de - 1.0) + math.exp(float(x[2]))
    return {"alpha": al, "delta": de, "a": a}


def _powerlog_shape(theta):
    al, de, a = theta["alpha"], theta["delta"], theta["a"]
    if de <= 2.0:
        inner = power_log_inner(al, de, a)
        dist = log_linked_distribution(inner, validate=False)
        return _grid_scan_shape(lambda z: _inner_pdf_derivative(inner, "log", z), dist.pdf)
    disc = (de - 1.0) ** 2 * (de + 4.0) ** 2 - 8.0 * (de - 1.0) * (de - 2.0)
    y_minus = a * ((de - 1.0) * (de + 4.0) - math.sqrt(disc)) / 4.0
    lo = (1.0 - 1.0 / al) ** de
    if lo < y_minus <= 1.0:
        mode = al * (1.0 - y_minus ** (1.0 / de))
        return ShapeReport(shape="unimodal", mode=mode)
    inner = power_log_inner(al, de, a)
    dist = log_linked_distribution(inner, validate=False)
    return _grid_scan_shape(lambda z: _inner_pdf_derivative(inner, "log", z), dist.pdf)


def _sinelog_box_check(theta):
    be, al, a = theta["beta"], theta["alpha"], theta["a"]
    if not -math.pi / 2.0 < be < 0.0:
        raise DomainError(f"sine-log requires beta in (-pi/2, 0), got {be}")
    if not 0.0 < al < math.pi / 2.0 - be:
        raise DomainError(f"sine-log requires alpha in (0, pi/2 - beta) = (0, {math.pi / 2.0 - be:g}), got {al}")
    if not -math.sin(be) < a < -1.0 / math.sin(be):
        raise DomainError(
            f"sine-log requires -sin(beta) < a < -1/sin(beta), i.e. "
            f"{-math.sin(be):g} < a < {-1.0 / math.sin(be):g}, got {a}"
        )


def _sinelog_check(theta):
    _sinelog_box_check(theta)
    be, a = theta["beta"], theta["a"]
    hi = min(-1.0 / math.sin(be), 2.0)
    if not 1.0 < a < hi:
        raise DomainError(
            f"sine-log fitting domain requires 1 < a < min(-1/sin(beta), 2) = {hi:g}, got a={a}"
        )


def _sinelog_to_unc(theta):
    be, al, a = theta["beta"], theta["alpha"], theta["a"]
    t1 = _logit(-be / (math.pi / 2.0))
    t2 = _logit(al / (math.pi / 2.0 - be))
    hi = min(-1.0 / math.sin(be), 2.0)
    t3 = _logit((a - 1.0) / (hi - 1.0))
    return np.array([t1, t2, t3])


def _sinelog_from_unc(x):
    be = -(math.pi / 2.0) * _sigmoid(float(x[0]))
    al = (math.pi / 2.0 - be) * _sigmoid(float(x[1]))
    hi = min(-1.0 / math.sin(be), 2.0)
    a = 1.0 + _sigmoid(float(x[2])) * (hi - 1.0)
    return {"beta": be, "alpha": al, "a": a}


def _sinelog_shape(theta):
    be, al, a = theta["beta"], theta["alpha"], theta["a"]
    if 1.0 <= a <= 2.0:
        zstar = (math.asin((a * a - 2.0) / a) - be) / al
        if 0.0 < zstar < 1.0:
            return ShapeReport(shape="unimodal", mode=zstar)
    inner = sine_log_inner(be, al, a)
    dist = log_linked_distribution(inner, validate=False)
    return _grid_scan_shape(lambda z: _inner_pdf_derivative(inner, "log", z), dist.pdf)


def _quadexp_bounds_beta(alpha: float):
    lo = -math.sqrt(-6.0 * alpha)
    hi = min(-2.0 * alpha - math.sqrt(-6.0 * alpha), -math.sqrt(-2.0 * alpha))
    return lo, hi


def _quadexp_check(theta):
    al, be = theta["alpha"], theta["beta"]
    if not al < 0.0:
        raise DomainError(f"quad-exp requires alpha < 0, got {al}")
    if not be < -math.sqrt(-2.0 * al):
        raise DomainError(
            f"quad-exp requires beta < -sqrt(-2*alpha) = {-math.sqrt(-2.0 * al):g}, got {be}"
        )
    lo, hi = _quadexp_bounds_beta(al)
    if not lo < be < hi:
        raise DomainError(
            f"quad-exp fitting domain requires -sqrt(-6*alpha) < beta < "
            f"min(-2*alpha - sqrt(-6*alpha), -sqrt(-2*alpha)), i.e. {lo:g} < beta < {hi:g}, got {be}"
        )


def _quadexp_to_unc(theta):
    al, be = theta["alpha"], theta["beta"]
    lo, hi = _quadexp_bounds_beta(al)
    return np.array([math.log(-al), _logit((be - lo) / (hi - lo))])


def _quadexp_from_unc(x):
    al = -math.exp(float(x[0]))
    lo, hi = _quadexp_bounds_beta(al)
    be = lo + _sigmoid(float(x[1])) * (hi - lo)
    return {"alpha": al, "beta": be}


def _quadexp_shape(theta):
    al, be = theta["alpha"], theta["beta"]
    lo = -math.sqrt(-6.0 * al)
    hi = -2.0 * al - math.sqrt(-6.0 * al)
    if lo < be < hi:
        return ShapeReport(shape="unimodal", mode=(-be - math.sqrt(-6.0 * al)) / (2.0 * al))
    if be <= lo:
        return ShapeReport(shape="monotone-decreasing")
    return ShapeReport(shape="monotone-increasing")


def power_exp_beta_bound(alpha: float, delta: float, epsilon: float) -> float:
    """Lower bound on beta ensuring a well-defined power-exp distribution."""
    return epsilon * alpha * delta ** (alpha - 1.0) + math.sqrt(
        -epsilon * alpha * (alpha - 1.0) * delta ** (alpha - 2.0)
    )


def _powerexp_check(theta):
    al, de, ep, be = theta["alpha"], theta["delta"], theta["epsilon"], theta["beta"]
    if not 1.0 < al < 2.0:
        raise DomainError(f"power-exp requires alpha in (1, 2), got {al}")
    if not de > 0.0:
        raise DomainError(f"power-exp requires delta > 0, got {de}")
    if not ep < 0.0:
        raise DomainError(f"power-exp requires epsilon < 0, got {ep}")
    bound = power_exp_beta_bound(al, de, ep)
    if not be > bound:
        raise DomainError(
            f"power-exp requires beta > eps*alpha*delta^(alpha-1) + "
            f"sqrt(-eps*alpha*(alpha-1)*delta^(alpha-2)) = {bound:g}, got {be}"
        )


def _powerexp_to_unc(theta):
    al, de, ep, be = theta["alpha"], theta["delta"], theta["epsilon"], theta["beta"]
    return np.array([
        _logit(al - 1.0),
        math.log(de),
        math.log(-ep),
        math.log(be - power_exp_beta_bound(al, de, ep)),
    ])


def _powerexp_from_unc(x):
    al = 1.0 + _sigmoid(float(x[0]))
    de = math.exp(float(x[1]))
    ep = -math.exp(float(x[2]))
    be = power_exp_beta_bound(al, de, ep) + math.exp(float(x[3]))
    return {"alpha": al, "delta": de, "epsilon": ep, "beta": be}


def _powerexp_shape(theta):
    # No closed-form criterion for this family; decided by a derivative scan.
    inner = power_exp_inner(theta["alpha"], theta["delta"], theta["epsilon"], theta["beta"])
    dist = exp_linked_distribution(inner, validate=False)
    return _grid_scan_shape(lambda z: _inner_pdf_derivative(inner, "exp", z), dist.pdf)


def _exponential_check(theta):
    if not theta["lambda"] > 0.0:
        raise DomainError(f"exponential requires lambda > 0, got {theta['lambda']}")


_REGISTRY: Dict[str, FamilySpec] = {}


def _register(spec: FamilySpec):
    _REGISTRY[spec.name] = spec


_register(FamilySpec(
    name="mbbefd",
    param_names=("b", "g"),
    link="log",
    check_domain=_mbbefd_check,
    make_inner=_mbbefd_make_inner,
    make_distribution=_mbbefd_dist,
    to_unconstrained=_mbbefd_to_unc,
    from_unconstrained=_mbbefd_from_unc,
    initial_points=(
        {"g": 1.5, "b": 0.4},
        {"g": 2.0, "b": 0.15},
        {"g": 3.0, "b": 0.1},
        {"g": 5.0, "b": 0.08},
        {"g": 8.0, "b": 0.03},
    ),
    shape=_mbbefd_shape,
))

_register(FamilySpec(
    name="power-log",
    param_names=("alpha", "delta", "a"),
    link="log",
    check_domain=_powerlog_check,
    make_inner=lambda t: power_log_inner(t["alpha"], t["delta"], t["a"]),
    make_distribution=lambda t: log_linked_distribution(
        power_log_inner(t["alpha"], t["delta"], t["a"]), validate=False),
    to_unconstrained=_powerlog_to_unc,
    from_unconstrained=_powerlog_from_unc,
    initial_points=(
        {"alpha": 1.5, "delta": 2.5, "a": 1.0},
        {"alpha": 2.0, "delta": 3.0, "a": 1.0},
        {"alpha": 3.0, "delta": 4.0, "a": 2.0},
        {"alpha": 1.2, "delta": 5.0, "a": 0.5},
        {"alpha": 2.5, "delta": 2.2, "a": 1.5},
    ),
    shape=_powerlog_shape,
))

_register(FamilySpec(
    name="sine-log",
    param_names=("beta", "alpha", "a"),
    link="log",
    check_domain=_sinelog_check,
    make_inner=lambda t: sine_log_inner(t["beta"], t["alpha"], t["a"]),
    make_distribution=lambda t: log_linked_distribution(
        sine_log_inner(t["beta"], t["alpha"], t["a"]), validate=False),
    to_unconstrained=_sinelog_to_unc,
    from_unconstrained=_sinelog_from_unc,
    initial_points=(
        {"beta": -math.pi / 4.0, "alpha": 1.0, "a": 1.2},
        {"beta": -math.pi / 3.0, "alpha": 1.0, "a": 1.1},
        {"beta": -math.pi / 4.0, "alpha": 0.5, "a": 1.3},
        {"beta": -1.0, "alpha": 1.5, "a": 1.05},
        {"beta": -0.3, "alpha": 1.0, "a": 1.5},
    ),
    shape=_sinelog_shape,
))

_register(FamilySpec(
    name="quad-exp",
    param_names=("alpha", "beta"),
    link="exp",
    check_domain=_quadexp_check,
    make_inner=lambda t: quad_exp_inner(t["alpha"], t["beta"]),
    make_distribution=lambda t: exp_linked_distribution(
        quad_exp_inner(t["alpha"], t["beta"]), validate=False),
    to_unconstrained=_quadexp_to_unc,
    from_unconstrained=_quadexp_from_unc,
    initial_points=(
        {"alpha": -1.0, "beta": -1.9},
        {"alpha": -2.0, "beta": -3.0},
        {"alpha": -3.0, "beta": -3.5},
        {"alpha": -0.5, "beta": -1.4},
        {"alpha": -4.0, "beta": -3.9},
    ),
    shape=_quadexp_shape,
))

_register(FamilySpec(
    name="power-exp",
    param_names=("alpha", "delta", "epsilon", "beta"),
    link="exp",
    check_domain=_powerexp_check,
    make_inner=lambda t: power_exp_inner(t["alpha"], t["delta"], t["epsilon"], t["beta"]),
    make_distribution=lambda t: exp_linked_distribution(
        power_exp_inner(t["alpha"], t["delta"], t["epsilon"], t["beta"]), validate=False),
    to_unconstrained=_powerexp_to_unc,
    from_unconstrained=_powerexp_from_unc,
    initial_points=(
        {"alpha": 1.3, "delta": 0.5, "epsilon": -0.5, "beta": None},
        {"alpha": 1.5, "delta": 0.5, "epsilon": -1.0, "beta": None},
        {"alpha": 1.7, "delta": 1.0, "epsilon": -1.0, "beta": None},
        {"alpha": 1.5, "delta": 2.0, "epsilon": -2.0, "beta": None},
        {"alpha": 1.9, "delta": 1.0, "epsilon": -0.5, "beta": None},
    ),
    shape=_powerexp_shape,
))

_register(FamilySpec(
    name="exponential",
    param_names=("lambda",),
    link="exp",
    check_domain=_exponential_check,
    make_inner=lambda t: linear_inner(t["lambda"]),
    make_distribution=lambda t: censored_exponential(t["lambda"]),
    to_unconstrained=lambda t: np.array([math.log(t["lambda"])]),
    from_unconstrained=lambda x: {"lambda": math.exp(float(x[0]))},
    initial_points=(
        {"lambda": 0.5},
        {"lambda": 1.0},
        {"lambda": 2.0},
        {"lambda": 5.0},
        {"lambda": 10.0},
    ),
    shape=lambda t: ShapeReport(shape="monotone-decreasing"),
))

# beta offsets for the power-exp starting points, added to the validity bound
_POWEREXP_BETA_OFFSETS = (0.5, 0.5, 1.0, 1.0, 2.0)

FAMILY_NAMES = tuple(_REGISTRY)


def get_family(name: str) -> FamilySpec:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise DomainError(
            f"unknown family {name!r}; available: {', '.join(FAMILY_NAMES)}"
        ) from None


def family_initial_points(spec: FamilySpec) -> List[dict]:
    """Resolve the deterministic starting points (power-exp betas depend on the bound)."""
    points = []
    for i, theta in enumerate(spec.initial_points):
        theta = dict(theta)
        if spec.name == "power-exp":
            theta["beta"] = power_exp_beta_bound(
                theta["alpha"], theta["delta"], theta["epsilon"]
            ) + _POWEREXP_BETA_OFFSETS[i]
        points.append(theta)
    return points


def pdf_derivative(family, theta: dict, z):
    """Closed-form derivative of the density of ``family`` at z in [0, 1)."""
    spec = family if isinstance(family, FamilySpec) else get_family(family)
    inner = spec.make_inner(theta)
    return _inner_pdf_derivative(inner, spec.link, z)


def unimodality_check(family, theta: dict) -> ShapeReport:
    """Shape classification (monotone/unimodal, with mode when it exists)."""
    spec = family if isinstance(family, FamilySpec) else get_family(family)
    return spec.shape(theta)

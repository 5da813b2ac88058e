"""Generic exposure-curve machinery.

An exposure curve is a non-decreasing, concave, twice continuously
differentiable function G on [0, 1] with G(0) = 0, G(1) = 1 and G'(0) > 0.
Every such curve induces a distribution on [0, 1] that is absolutely
continuous on [0, 1) with a point mass at 1:

    F(z) = 1 - G'(z)/G'(0)   for z < 1,      F(1) = 1,
    f(z) = -G''(z)/G'(0),    p = G'(1)/G'(0),   E[Z] = 1/G'(0).

This module provides validation, the curve-to-distribution transform,
mixtures, one-inflation, quantiles and seed-reproducible sampling.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DegenerateDistributionError, DomainError, InvalidCurveError
from .quadrature import quadrature

__all__ = [
    "ExposureCurve",
    "CensoredDistribution",
    "MixtureWeights",
    "ValidationReport",
    "identity_curve",
    "validate_exposure_curve",
    "curve_to_distribution",
    "conditional_distribution",
    "one_inflate",
    "blend_with_identity",
    "mix_curves",
    "quantile",
    "sample",
    "quadrature",
]

# Grid tolerances for the curve validity checks. Concavity uses 1e-9
# rather than 0 to absorb floating-point noise.
TOL_ENDPOINT = 1e-12
TOL_MONOTONE = -1e-12
TOL_CONCAVE = 1e-9
CENSOR_TOL = 1e-12


@dataclass(frozen=True)
class ExposureCurve:
    """Evaluable triple (G, G', G'') on [0, 1] with a label.

    All three callables must accept scalars and numpy arrays.
    """

    g: Callable
    g1: Callable
    g2: Callable
    label: str = ""


@dataclass(frozen=True)
class CensoredDistribution:
    """Distribution on [0, 1]: continuous density on [0, 1), atom at 1.

    ``cdf`` is defined on [0, 1] (with cdf(1) = 1), ``pdf`` on [0, 1).
    """

    cdf: Callable
    pdf: Callable
    point_mass_p: float
    mean: float
    label: str = ""


@dataclass(frozen=True)
class MixtureWeights:
    """Curve weights alpha_i and induced distribution weights w_i."""

    alphas: np.ndarray
    derived_w: np.ndarray


@dataclass
class ValidationReport:
    """Pass/fail record of the exposure-curve definition checks."""

    checks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def identity_curve() -> ExposureCurve:
    """The curve G(z) = z, whose distribution is a unit mass at 1."""
    return ExposureCurve(
        g=lambda z: np.asarray(z, dtype=float) + 0.0,
        g1=lambda z: np.ones_like(np.asarray(z, dtype=float)),
        g2=lambda z: np.zeros_like(np.asarray(z, dtype=float)),
        label="identity",
    )


def validate_exposure_curve(curve: ExposureCurve, grid_points: int = 1001) -> ValidationReport:
    """Check the exposure-curve definition on a uniform grid.

    Verifies G(0) = 0, G(1) = 1, G'(0) > 0, monotonicity (G' >= -1e-12),
    concavity (G'' <= 1e-9), and cross-checks the supplied first derivative
    against central finite differences of G (step 1e-5, max error 1e-6).
    """
    if grid_points < 3:
        raise ValueError("grid_points must be >= 3")
    z = np.linspace(0.0, 1.0, grid_points)
    gv = np.asarray(curve.g(z), dtype=float)
    g1v = np.asarray(curve.g1(z), dtype=float)
    g2v = np.asarray(curve.g2(z), dtype=float)
    for name, vals in (("G", gv), ("G'", g1v), ("G''", g2v)):
        bad = ~np.isfinite(vals)
        if bad.any():
            raise InvalidCurveError(
                f"{name} is not finite at z={z[bad][0]:.6g} (curve {curve.label!r})"
            )

    report = ValidationReport()
    report.checks["G(0)=0"] = abs(gv[0]) <= TOL_ENDPOINT
    report.checks["G(1)=1"] = abs(gv[-1] - 1.0) <= TOL_ENDPOINT
    report.checks["G'(0)>0"] = g1v[0] > 0.0
    report.checks["G' >= 0"] = float(g1v.min()) >= TOL_MONOTONE
    report.checks["G'' <= 0"] = float(g2v.max()) <= TOL_CONCAVE
    report.details["min_g1"] = float(g1v.min())
    report.details["max_g2"] = float(g2v.max())

    h = 1e-5
    zin = z[(z >= h) & (z <= 1.0 - h)]
    fd = (np.asarray(curve.g(zin + h)) - np.asarray(curve.g(zin - h))) / (2.0 * h)
    err = float(np.max(np.abs(fd - np.asarray(curve.g1(zin)))))
    report.checks["G' matches finite differences"] = err <= 1e-6
    report.details["fd_error"] = err
    return report


def curve_to_distribution(curve: ExposureCurve) -> CensoredDistribution:
    """Transform a valid exposure curve into its censored distribution."""
    gp0 = float(curve.g1(0.0))
    if not gp0 > 0.0:
        raise InvalidCurveError(f"G'(0) must be positive, got {gp0}")
    gp1 = float(curve.g1(1.0))
    p = gp1 / gp0
    mean = 1.0 / gp0

    def cdf(z, _g1=curve.g1, _gp0=gp0):
        z = np.asarray(z, dtype=float)
        out = 1.0 - np.asarray(_g1(z), dtype=float) / _gp0
        out = np.where(z >= 1.0, 1.0, out)
        return out if out.ndim else float(out)

    def pdf(z, _g2=curve.g2, _gp0=gp0):
        out = -np.asarray(_g2(np.asarray(z, dtype=float)), dtype=float) / _gp0
        return out if out.ndim else float(out)

    return CensoredDistribution(cdf=cdf, pdf=pdf, point_mass_p=p, mean=mean, label=curve.label)


def conditional_distribution(dist: CensoredDistribution):
    """Density and mean of Z conditioned on Z < 1.

    Returns ``(pdf0, mean0)`` with pdf0 = pdf/(1-p) and
    mean0 = (mean - p)/(1 - p).
    """
    p = dist.point_mass_p
    if p >= 1.0 - CENSOR_TOL:
        raise DegenerateDistributionError(
            f"point mass p={p} leaves no continuous part to condition on"
        )
    scale = 1.0 / (1.0 - p)

    def pdf0(z, _pdf=dist.pdf, _s=scale):
        return _pdf(z) * _s

    mean0 = (dist.mean - p) * scale
    return pdf0, mean0


def one_inflate(dist: CensoredDistribution, q: float) -> CensoredDistribution:
    """Replace the atom at 1 by a freely chosen mass q, rescaling the density.

    The continuous part becomes (1-q) * pdf/(1-p) and the mean
    (1-q) * mean0 + q.
    """
    if not 0.0 < q < 1.0:
        raise DomainError(f"inflation mass q must lie in (0,1), got {q}")
    pdf0, mean0 = conditional_distribution(dist)
    p = dist.point_mass_p

    def cdf(z, _cdf=dist.cdf, _p=p, _q=q):
        z = np.asarray(z, dtype=float)
        out = (1.0 - _q) * np.asarray(_cdf(z), dtype=float) / (1.0 - _p)
        out = np.where(z >= 1.0, 1.0, out)
        return out if out.ndim else float(out)

    def pdf(z, _pdf0=pdf0, _q=q):
        return (1.0 - _q) * np.asarray(_pdf0(z))

    return CensoredDistribution(
        cdf=cdf,
        pdf=pdf,
        point_mass_p=q,
        mean=(1.0 - q) * mean0 + q,
        label=f"{dist.label}|q={q:g}",
    )


def blend_with_identity(curve: ExposureCurve, w: float) -> ExposureCurve:
    """Curve whose distribution is the mixture w*F + (1-w)*delta_1.

    The blend is taken in distribution space: the returned curve is the
    convex combination of ``curve`` and the identity curve with curve
    weights chosen so that the induced distribution weights are (w, 1-w).
    Consequently p_blend = w*p + (1-w) and pdf_blend = w*pdf.
    """
    if not 0.0 <= w <= 1.0:
        raise DomainError(f"blend weight w must lie in [0,1], got {w}")
    gp0 = float(curve.g1(0.0))
    if not gp0 > 0.0:
        raise InvalidCurveError(f"G'(0) must be positive, got {gp0}")
    # alpha-weights (w/G'(0), 1-w), normalized so the blend maps 1 to 1.
    a1 = w / gp0
    a2 = 1.0 - w
    c = a1 + a2

    def g(z, _g=curve.g):
        z = np.asarray(z, dtype=float)
        return (a1 * np.asarray(_g(z), dtype=float) + a2 * z) / c

    def g1(z, _g1=curve.g1):
        z = np.asarray(z, dtype=float)
        return (a1 * np.asarray(_g1(z), dtype=float) + a2) / c

    def g2(z, _g2=curve.g2):
        return a1 * np.asarray(_g2(np.asarray(z, dtype=float)), dtype=float) / c

    return ExposureCurve(g=g, g1=g1, g2=g2, label=f"{curve.label}~blend(w={w:g})")


def mix_curves(curves: Sequence[ExposureCurve], alphas: Sequence[float]):
    """Convex combination of exposure curves.

    Returns the mixed curve and the weight pair (alphas, w) where
    w_i = alpha_i G_i'(0) / sum_j alpha_j G_j'(0) are the induced
    distribution-mixture weights.
    """
    alphas = np.asarray(alphas, dtype=float)
    if len(curves) == 0 or len(curves) != alphas.size:
        raise DomainError("need one non-negative weight per curve")
    if (alphas < 0).any():
        raise DomainError(f"mixture weights must be non-negative, got {alphas}")
    if abs(alphas.sum() - 1.0) > 1e-12:
        raise DomainError(f"mixture weights must sum to 1, got sum {alphas.sum()!r}")
    gp0 = np.array([float(c.g1(0.0)) for c in curves])
    w = alphas * gp0
    w = w / w.sum()

    def g(z):
        z = np.asarray(z, dtype=float)
        return sum(a * np.asarray(c.g(z), dtype=float) for a, c in zip(alphas, curves))

    def g1(z):
        z = np.asarray(z, dtype=float)
        return sum(a * np.asarray(c.g1(z), dtype=float) for a, c in zip(alphas, curves))

    def g2(z):
        z = np.asarray(z, dtype=float)
        return sum(a * np.asarray(c.g2(z), dtype=float) for a, c in zip(alphas, curves))

    mixed = ExposureCurve(g=g, g1=g1, g2=g2, label="mixture")
    return mixed, MixtureWeights(alphas=alphas, derived_w=w)


def quantile(dist: CensoredDistribution, u: float) -> float:
    """Generalized inverse of the cdf at u in (0, 1).

    For u >= 1 - p the quantile lands on the censoring atom and 1 is
    returned exactly; otherwise the unique root of cdf(z) = u is located
    by bisection to |cdf(z) - u| <= 1e-12 or interval width <= 1e-14.
    """
    if not 0.0 < u < 1.0:
        raise DomainError(f"quantile level must lie in (0,1), got {u}")
    if u >= 1.0 - dist.point_mass_p:
        return 1.0
    lo, hi = 0.0, 1.0
    flo = float(dist.cdf(0.0))
    if flo > u + 1e-9:
        raise InvalidCurveError("cdf(0) exceeds the requested level; cdf is not monotone from 0")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = float(dist.cdf(mid))
        if not -1e-9 <= fm <= 1.0 + 1e-9:
            raise InvalidCurveError(f"cdf left [0,1] at z={mid}; distribution is invalid")
        if abs(fm - u) <= 1e-12 or hi - lo <= 1e-14:
            return mid
        if fm < u:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _quantile_vector(dist: CensoredDistribution, u: np.ndarray, iters: int = 80) -> np.ndarray:
    """Vectorized bisection for the continuous branch (u < 1 - p)."""
    lo = np.zeros_like(u)
    hi = np.ones_like(u)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        below = np.asarray(dist.cdf(mid), dtype=float) < u
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def sample(dist: CensoredDistribution, n: int, seed: int) -> np.ndarray:
    """Inverse-cdf sampling of n i.i.d. draws; reproducible given the seed."""
    if n < 1:
        raise DomainError(f"sample size must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    u = rng.random(n)
    out = np.ones(n)
    cont = u < 1.0 - dist.point_mass_p
    if cont.any():
        out[cont] = _quantile_vector(dist, u[cont])
    return out

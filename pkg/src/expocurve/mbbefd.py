"""The classical MBBEFD family of exposure curves and distributions.

Parametrized by b >= 0 and g >= 1, with four branches:

    G(z) = z                                    g = 1 or b = 0,
    G(z) = log(1 + (g-1)z)/log(g)               g > 1, b = 1,
    G(z) = (1 - b^z)/(1 - b)                    g > 1, b*g = 1,
    G(z) = log(((g-1)b + (1-bg)b^z)/(1-b)) / log(bg)   otherwise.

The induced distribution has point mass p = 1/g at 1. For bg < 1 the
density is a rescaled logistic density and can be monotone or unimodal
depending on where (1-bg)/(g-1) sits relative to b and 1.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateDistributionError, DomainError
from .exposure import CensoredDistribution, ExposureCurve, identity_curve

__all__ = [
    "MbbefdParams",
    "AbParams",
    "ShapeReport",
    "swiss_re_params",
    "mbbefd_curve",
    "mbbefd_distribution",
    "classify_shape",
    "logistic_form_pdf",
    "to_ab",
    "from_ab",
]

# The closed-form branch formulas are 0/0 at b=1 and bg=1; reroute to the
# limit branches inside this tolerance.
BRANCH_TOL = 1e-10


@dataclass(frozen=True)
class MbbefdParams:
    b: float
    g: float

    def __post_init__(self):
        if not (math.isfinite(self.b) and math.isfinite(self.g)):
            raise DomainError("parameters must be finite")
        if self.b < 0.0:
            raise DomainError(f"b must be >= 0, got {self.b}")
        if self.g < 1.0:
            raise DomainError(f"g must be >= 1, got {self.g}")

    @property
    def degenerate(self) -> bool:
        """True for the identity-curve case (all mass at 1)."""
        return self.g == 1.0 or self.b == 0.0


@dataclass(frozen=True)
class AbParams:
    """Alternative coordinates a = b(g-1)/(1-bg) for the bg != 1 regime."""

    a: float
    b: float

    def __post_init__(self):
        if self.b < 0.0:
            raise DomainError(f"b must be >= 0, got {self.b}")
        if not self.a > -min(1.0, self.b):
            raise DomainError(f"a must exceed -min(1, b) = {-min(1.0, self.b)}, got {self.a}")


@dataclass(frozen=True)
class ShapeReport:
    shape: str  # monotone-decreasing | unimodal | monotone-increasing
    mode: Optional[float] = None


def swiss_re_params(c: float) -> MbbefdParams:
    """Swiss Re (c in {1.5,...,4}) and Lloyd's (c = 5) parametrization."""
    if not c > 0.0:
        raise DomainError(f"c must be > 0, got {c}")
    b = math.exp(3.1 - 0.15 * (1.0 + c) * c)
    g = math.exp((0.78 + 0.12 * c) * c)
    return MbbefdParams(b=b, g=g)


def _branch(params: MbbefdParams) -> str:
    b, g = params.b, params.g
    if params.degenerate:
        return "identity"
    if abs(b - 1.0) <= BRANCH_TOL:
        return "b1"
    if abs(b * g - 1.0) <= BRANCH_TOL:
        return "bg1"
    return "general"


def mbbefd_curve(params: MbbefdParams) -> ExposureCurve:
    """Exposure curve G_{b,g} with analytic first and second derivatives."""
    b, g = params.b, params.g
    branch = _branch(params)
    label = f"mbbefd(b={b:g}, g={g:g})"
    if branch == "identity":
        c = identity_curve()
        return ExposureCurve(g=c.g, g1=c.g1, g2=c.g2, label=label)
    if branch == "b1":
        lg = math.log(g)

        def G(z):
            return np.log1p((g - 1.0) * np.asarray(z, dtype=float)) / lg

        def G1(z):
            return (g - 1.0) / ((1.0 + (g - 1.0) * np.asarray(z, dtype=float)) * lg)

        def G2(z):
            return -((g - 1.0) ** 2) / ((1.0 + (g - 1.0) * np.asarray(z, dtype=float)) ** 2 * lg)

    elif branch == "bg1":
        lb = math.log(b)

        def G(z):
            return (1.0 - b ** np.asarray(z, dtype=float)) / (1.0 - b)

        def G1(z):
            return -lb * b ** np.asarray(z, dtype=float) / (1.0 - b)

        def G2(z):
            return -(lb ** 2) * b ** np.asarray(z, dtype=float) / (1.0 - b)

    else:
        lb = math.log(b)
        lbg = math.log(b * g)
        c1 = (g - 1.0) * b
        c2 = 1.0 - b * g

        def G(z):
            bz = b ** np.asarray(z, dtype=float)
            return np.log((c1 + c2 * bz) / (1.0 - b)) / lbg

        def G1(z):
            bz = b ** np.asarray(z, dtype=float)
            return c2 * lb * bz / ((c1 + c2 * bz) * lbg)

        def G2(z):
            bz = b ** np.asarray(z, dtype=float)
            d = c1 + c2 * bz
            return c2 * c1 * lb ** 2 * bz / (d ** 2 * lbg)

    return ExposureCurve(g=G, g1=G1, g2=G2, label=label)


def mbbefd_distribution(params: MbbefdParams) -> CensoredDistribution:
    """Closed-form cdf/pdf/point-mass/mean of the MBBEFD distribution."""
    b, g = params.b, params.g
    branch = _branch(params)
    if branch == "identity":
        raise DegenerateDistributionError(
            "g=1 or b=0 puts all mass at 1; excluded from distribution fitting"
        )
    p = 1.0 / g
    label = f"mbbefd(b={b:g}, g={g:g})"
    if branch == "b1":
        mean = math.log(g) / (g - 1.0)

        def cdf(z):
            z = np.asarray(z, dtype=float)
            out = 1.0 - 1.0 / (1.0 + (g - 1.0) * z)
            out = np.where(z >= 1.0, 1.0, out)
            return out if out.ndim else float(out)

        def pdf(z):
            z = np.asarray(z, dtype=float)
            out = (g - 1.0) / (1.0 + (g - 1.0) * z) ** 2
            return out if out.ndim else float(out)

    elif branch == "bg1":
        lb = math.log(b)
        mean = (b - 1.0) / lb

        def cdf(z):
            z = np.asarray(z, dtype=float)
            out = 1.0 - b ** z
            out = np.where(z >= 1.0, 1.0, out)
            return out if out.ndim else float(out)

        def pdf(z):
            z = np.asarray(z, dtype=float)
            out = -lb * b ** z
            return out if out.ndim else float(out)

    else:
        lb = math.log(b)
        mean = (b - 1.0) / lb * math.log(b * g) / (b * g - 1.0)

        def cdf(z):
            z = np.asarray(z, dtype=float)
            out = 1.0 - (1.0 - b) / ((g - 1.0) * b ** (1.0 - z) + (1.0 - b * g))
            out = np.where(z >= 1.0, 1.0, out)
            return out if out.ndim else float(out)

        def pdf(z):
            z = np.asarray(z, dtype=float)
            b1z = b ** (1.0 - z)
            out = (g - 1.0) * (b - 1.0) * lb * b1z / ((g - 1.0) * b1z + (1.0 - b * g)) ** 2
            return out if out.ndim else float(out)

    return CensoredDistribution(cdf=cdf, pdf=pdf, point_mass_p=p, mean=mean, label=label)


def classify_shape(params: MbbefdParams) -> ShapeReport:
    """Monotone/unimodal classification of the MBBEFD density.

    For bg >= 1 the density is monotone decreasing. For bg < 1 the ratio
    r = (1-bg)/(g-1) decides: r <= b decreasing, r >= 1 increasing, and
    b < r < 1 unimodal with mode z* = 1 - log(r)/log(b).
    """
    b, g = params.b, params.g
    if params.degenerate or not b > 0.0:
        raise DomainError("shape classification needs g > 1 and b > 0")
    if b * g >= 1.0:
        return ShapeReport(shape="monotone-decreasing")
    r = (1.0 - b * g) / (g - 1.0)
    if r <= b:
        return ShapeReport(shape="monotone-decreasing")
    if r >= 1.0:
        return ShapeReport(shape="monotone-increasing")
    mode = 1.0 - math.log(r) / math.log(b)
    return ShapeReport(shape="unimodal", mode=mode)


def logistic_form_pdf(params: MbbefdParams, z):
    """Logistic representation of the bg < 1 density.

    f(z) = (a+1) log(1/b) psi'(z log(1/b) + log(a)) with a = b(g-1)/(1-bg)
    and psi'(t) = e^t/(e^t+1)^2. Pointwise equal to the branch density.
    """
    b, g = params.b, params.g
    if params.degenerate or not b > 0.0:
        raise DomainError("logistic form needs g > 1 and b > 0")
    if b * g >= 1.0:
        raise DomainError(f"logistic form requires bg < 1, got bg={b * g}")
    a = b * (g - 1.0) / (1.0 - b * g)
    s = math.log(1.0 / b)
    t = np.asarray(z, dtype=float) * s + math.log(a)
    et = np.exp(t)
    out = (a + 1.0) * s * et / (et + 1.0) ** 2
    return out if out.ndim else float(out)


def to_ab(params: MbbefdParams) -> AbParams:
    """Reparametrize (b, g) as (a, b) with a = b(g-1)/(1-bg)."""
    b, g = params.b, params.g
    if abs(b * g - 1.0) <= BRANCH_TOL:
        raise DomainError("reparametrization is singular at bg = 1")
    return AbParams(a=b * (g - 1.0) / (1.0 - b * g), b=b)


def from_ab(ab: AbParams) -> MbbefdParams:
    """Inverse reparametrization g = (a+b)/((a+1)b)."""
    if (ab.a + 1.0) * ab.b == 0.0:
        raise DomainError("reparametrization needs (a+1)*b != 0")
    return MbbefdParams(b=ab.b, g=(ab.a + ab.b) / ((ab.a + 1.0) * ab.b))

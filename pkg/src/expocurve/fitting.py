"""Maximum-likelihood fitting, empirical statistics, AIC and comparison.

Two estimation modes are supported for every registered family:

* standard: maximize sum_i [log f(z_i) 1{z_i<1} + log p 1{z_i=1}] over the
  family parameters; the point mass p is implied by the parameters.
* extended: add a free atom q at 1. The likelihood separates additively in
  q, so q_hat equals the censored fraction in closed form and only the
  family parameters are optimized through the conditional density
  f0 = f/(1-p).

Optimization is a derivative-free downhill simplex (Nelder-Mead) in the
family's unconstrained coordinates, multi-started from five deterministic
points with one restart from the perturbed optimum.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from .errors import DataError, FitFailureError
from .families import FamilySpec, family_initial_points, get_family

__all__ = [
    "EmpiricalStats",
    "FitResult",
    "ComparisonTable",
    "empirical_stats",
    "loglik_standard",
    "loglik_extended",
    "aic",
    "fit",
    "compare",
]

CENSOR_TOL = 1e-12
NEG_INF = float("-inf")


@dataclass
class EmpiricalStats:
    n: int
    point_mass_at_1: float
    mean: float
    hist_edges: np.ndarray
    hist_counts: np.ndarray
    kde_grid: np.ndarray
    kde_values: np.ndarray
    bandwidth: float


@dataclass
class FitResult:
    family: str
    mode: str
    theta: dict
    q: Optional[float]
    loglik_total: float
    loglik_conditional: float
    aic: float
    point_mass: float
    mean: float
    n: int
    converged: bool
    iterations: int
    boundary_proximity: float

    @property
    def k(self) -> int:
        return len(self.theta) + (1 if self.mode == "extended" else 0)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "mode": self.mode,
            "params": dict(self.theta),
            "q": self.q,
            "point_mass": self.point_mass,
            "mean": self.mean,
            "loglik_total": self.loglik_total,
            "loglik_conditional": self.loglik_conditional,
            "aic": self.aic,
            "n": self.n,
            "converged": self.converged,
            "iterations": self.iterations,
        }


def _as_sample(sample) -> np.ndarray:
    z = np.asarray(sample, dtype=float)
    if z.size == 0:
        raise DataError("empty sample")
    if not np.isfinite(z).all():
        raise DataError("sample contains non-finite values")
    if (z <= 0.0).any() or (z > 1.0 + CENSOR_TOL).any():
        bad = z[(z <= 0.0) | (z > 1.0 + CENSOR_TOL)][0]
        raise DataError(f"sample values must lie in (0, 1], got {bad!r}")
    return np.minimum(z, 1.0)


def _split(z: np.ndarray):
    cens = z >= 1.0 - CENSOR_TOL
    return z[~cens], int(cens.sum())


def empirical_stats(sample, bins: int = 50, kde_points: int = 512) -> EmpiricalStats:
    """Censored fraction, mean, histogram and a Gaussian KDE on [0, 1).

    The KDE bandwidth is 0.9 * min(sd, IQR/1.34) * m^(-1/5) over the m
    uncensored observations, and the density is renormalized to integrate
    to 1 on [0, 1).
    """
    if bins < 1:
        raise DataError(f"bins must be >= 1, got {bins}")
    z = _as_sample(sample)
    zu, m1 = _split(z)
    n = z.size
    grid = np.linspace(0.0, 1.0, kde_points, endpoint=False)
    if zu.size == 0:
        return EmpiricalStats(
            n=n, point_mass_at_1=m1 / n, mean=float(z.mean()),
            hist_edges=np.linspace(0.0, 1.0, bins + 1), hist_counts=np.zeros(bins, dtype=int),
            kde_grid=grid, kde_values=np.zeros_like(grid), bandwidth=0.0,
        )
    counts, edges = np.histogram(zu, bins=bins, range=(0.0, 1.0))
    sd = float(np.std(zu, ddof=1)) if zu.size > 1 else 0.0
    q75, q25 = np.percentile(zu, [75.0, 25.0])
    iqr = float(q75 - q25)
    spread = min(x for x in (sd, iqr / 1.34) if x > 0.0) if max(sd, iqr) > 0.0 else 0.0
    h = 0.9 * spread * zu.size ** (-0.2)
    if h > 0.0:
        u = (grid[:, None] - zu[None, :]) / h
        dens = np.exp(-0.5 * u * u).sum(axis=1) / (zu.size * h * math.sqrt(2.0 * math.pi))
        mass = np.trapezoid(dens, grid)
        dens = dens / mass if mass > 0.0 else dens
    else:
        dens = np.zeros_like(grid)
    return EmpiricalStats(
        n=n, point_mass_at_1=m1 / n, mean=float(z.mean()),
        hist_edges=edges, hist_counts=counts,
        kde_grid=grid, kde_values=dens, bandwidth=h,
    )


def _standard_parts(spec: FamilySpec, theta: dict, zu: np.ndarray, m1: int):
    """(sum log f over uncensored, log p, p, mean) or None on invalid theta."""
    try:
        dist = spec.make_distribution(theta)
    except Exception:
        return None
    p = dist.point_mass_p
    f = np.asarray(dist.pdf(zu), dtype=float) if zu.size else np.empty(0)
    if not np.isfinite(p) or (zu.size and (not np.isfinite(f).all() or (f <= 0.0).any())):
        return None
    if m1 and p <= 0.0:
        return None
    if p >= 1.0 and zu.size:
        return None
    sum_log_f = float(np.log(f).sum()) if zu.size else 0.0
    return sum_log_f, (math.log(p) if p > 0.0 else NEG_INF), p, dist.mean


def loglik_standard(family, theta: dict, sample) -> float:
    """Censored log-likelihood; -inf if the density or atom is invalid."""
    spec = family if isinstance(family, FamilySpec) else get_family(family)
    zu, m1 = _split(_as_sample(sample))
    parts = _standard_parts(spec, theta, zu, m1)
    if parts is None:
        return NEG_INF
    sum_log_f, log_p, _, _ = parts
    if m1 and log_p == NEG_INF:
        return NEG_INF
    return sum_log_f + m1 * log_p


def loglik_extended(family, theta: dict, q: float, sample) -> float:
    """Log-likelihood with a free atom q at 1 and conditional density f0."""
    spec = family if isinstance(family, FamilySpec) else get_family(family)
    if not 0.0 < q < 1.0:
        return NEG_INF
    zu, m1 = _split(_as_sample(sample))
    parts = _standard_parts(spec, theta, zu, m1)
    if parts is None:
        return NEG_INF
    sum_log_f, _, p, _ = parts
    if p >= 1.0 - CENSOR_TOL and zu.size:
        return NEG_INF
    sum_log_f0 = sum_log_f - zu.size * math.log1p(-p)
    return sum_log_f0 + zu.size * math.log1p(-q) + m1 * math.log(q)


def aic(loglik_total: float, k: int) -> float:
    """AIC = 2k - 2 * loglik; k counts the free atom in extended mode."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return 2.0 * k - 2.0 * loglik_total


@dataclass
class FitOptions:
    max_evals: int = 10_000
    fatol: float = 1e-9
    xatol: float = 1e-6
    screen_evals: int = 200


def _simplex(fun, x0, maxfev, fatol, xatol):
    return minimize(
        fun, x0, method="Nelder-Mead",
        options={"maxfev": maxfev, "fatol": fatol, "xatol": xatol, "adaptive": len(x0) > 2},
    )


def fit(family, sample, mode: str = "standard", options: Optional[FitOptions] = None) -> FitResult:
    """Maximum-likelihood fit of one family in the given mode.

    Multi-start: the five deterministic starting points are screened with a
    short simplex run, the best is polished to convergence, and the search
    is restarted once from the perturbed optimum.
    """
    if mode not in ("standard", "extended"):
        raise ValueError(f"mode must be 'standard' or 'extended', got {mode!r}")
    spec = family if isinstance(family, FamilySpec) else get_family(family)
    opts = options or FitOptions()
    z = _as_sample(sample)
    if z.size < 2:
        raise FitFailureError(f"sample of size {z.size} is under-determined; need at least 2")
    zu, m1 = _split(z)
    n = z.size
    if mode == "standard" and zu.size == 0:
        raise FitFailureError("standard fit needs at least one uncensored observation")

    # Negative mean log-likelihood of the theta-dependent part.
    if mode == "standard":
        def nll(x):
            parts = _standard_parts(spec, spec.from_unconstrained(x), zu, m1)
            if parts is None:
                return math.inf
            sum_log_f, log_p, _, _ = parts
            if m1 and log_p == NEG_INF:
                return math.inf
            return -(sum_log_f + m1 * log_p) / n
    else:
        def nll(x):
            parts = _standard_parts(spec, spec.from_unconstrained(x), zu, m1)
            if parts is None:
                return math.inf
            sum_log_f, _, p, _ = parts
            if p >= 1.0 - CENSOR_TOL and zu.size:
                return math.inf
            return -(sum_log_f - zu.size * math.log1p(-p)) / n

    starts = [spec.to_unconstrained(t) for t in family_initial_points(spec)]
    nfev = 0
    screened = []
    for x0 in starts:
        r = _simplex(nll, x0, opts.screen_evals, 1e-6, 1e-3)
        nfev += r.nfev
        screened.append(r)
    screened = [r for r in screened if math.isfinite(r.fun)]
    if not screened:
        raise FitFailureError(
            f"all {len(starts)} starting points gave an invalid likelihood for {spec.name}"
        )
    best = min(screened, key=lambda r: r.fun)
    polished = _simplex(nll, best.x, opts.max_evals, opts.fatol, opts.xatol)
    nfev += polished.nfev
    if polished.fun > best.fun:
        polished = best
    # one restart from the perturbed optimum
    x_pert = polished.x * (1.0 + 1e-3) + 1e-4
    restart = _simplex(nll, x_pert, opts.max_evals, opts.fatol, opts.xatol)
    nfev += restart.nfev
    final = restart if restart.fun < polished.fun else polished
    if not math.isfinite(final.fun):
        raise FitFailureError(f"optimizer diverged for family {spec.name}")

    theta = spec.from_unconstrained(final.x)
    parts = _standard_parts(spec, theta, zu, m1)
    if parts is None:
        raise FitFailureError(f"optimum of {spec.name} does not define a valid distribution")
    sum_log_f, log_p, p, mean = parts

    if mode == "standard":
        ll_total = sum_log_f + (m1 * log_p if m1 else 0.0)
        ll_cond = sum_log_f - zu.size * math.log1p(-p) if p < 1.0 else math.inf
        q_hat = None
        point_mass = p
        fitted_mean = mean
        k = spec.k
    else:
        q_hat = m1 / n
        sum_log_f0 = sum_log_f - zu.size * math.log1p(-p)
        ll_cond = sum_log_f0
        ll_total = sum_log_f0
        if zu.size and q_hat < 1.0:
            ll_total += zu.size * math.log1p(-q_hat)
        if m1 and q_hat > 0.0:
            ll_total += m1 * math.log(q_hat)
        point_mass = q_hat
        mean0 = (mean - p) / (1.0 - p)
        fitted_mean = (1.0 - q_hat) * mean0 + q_hat
        k = spec.k + 1

    boundary = float(np.max(np.abs(final.x)))
    if mode == "extended" and (q_hat == 0.0 or q_hat == 1.0):
        boundary = math.inf
    return FitResult(
        family=spec.name,
        mode=mode,
        theta=theta,
        q=q_hat,
        loglik_total=ll_total,
        loglik_conditional=ll_cond,
        aic=aic(ll_total, k),
        point_mass=point_mass,
        mean=fitted_mean,
        n=n,
        converged=bool(final.success),
        iterations=nfev,
        boundary_proximity=boundary,
    )


@dataclass
class ComparisonTable:
    """Per-(family, mode) fit summary plus an empirical reference row."""

    rows: List[dict] = field(default_factory=list)

    COLUMNS = ("family", "mode", "point_mass", "mean",
               "loglik_conditional", "loglik_total", "aic", "status")

    def to_csv(self) -> str:
        lines = [",".join(self.COLUMNS)]
        for row in self.rows:
            cells = []
            for col in self.COLUMNS:
                v = row.get(col)
                cells.append("" if v is None else (repr(v) if isinstance(v, float) else str(v)))
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> list:
        return [dict(row) for row in self.rows]


def compare(families: Sequence, sample, modes: Sequence[str] = ("standard", "extended"),
            options: Optional[FitOptions] = None) -> ComparisonTable:
    """Fit every (family, mode) pair and tabulate, sorted by AIC ascending.

    Individual fit failures become failed rows and never abort the table.
    Ties in AIC are broken by fewer parameters, then family name.
    """
    if len(families) == 0:
        raise DataError("need at least one family to compare")
    z = _as_sample(sample)
    stats = empirical_stats(z, bins=1)
    fitted, failed = [], []
    for fam in families:
        spec = fam if isinstance(fam, FamilySpec) else get_family(fam)
        for mode in modes:
            try:
                res = fit(spec, z, mode=mode, options=options)
            except Exception as exc:
                failed.append({
                    "family": spec.name, "mode": mode,
                    "point_mass": None, "mean": None,
                    "loglik_conditional": None, "loglik_total": None, "aic": None,
                    "status": f"failed: {exc}",
                })
                continue
            fitted.append({
                "family": res.family, "mode": res.mode,
                "point_mass": res.point_mass, "mean": res.mean,
                "loglik_conditional": res.loglik_conditional,
                "loglik_total": res.loglik_total, "aic": res.aic,
                "status": "ok",
                "_k": res.k,
            })
    fitted.sort(key=lambda r: (r["aic"], r["_k"], r["family"], r["mode"]))
    for row in fitted:
        row.pop("_k")
    empirical = {
        "family": "empirical", "mode": "",
        "point_mass": stats.point_mass_at_1, "mean": stats.mean,
        "loglik_conditional": None, "loglik_total": None, "aic": None,
        "status": "",
    }
    return ComparisonTable(rows=[empirical] + fitted + failed)

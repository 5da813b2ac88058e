"""Shared fixtures: random in-domain parameter draws for every family."""

import math

import numpy as np

from expocurve.families import power_exp_beta_bound

# fraction of the open interval kept away from each bound when sampling
_MARGIN = 0.05


def _interior(lo, hi, u):
    return lo + (_MARGIN + (1.0 - 2.0 * _MARGIN) * u) * (hi - lo)


def draw_theta(family: str, rng: np.random.Generator) -> dict:
    """One random parameter point strictly inside the fitting domain."""
    if family == "mbbefd":
        g = 1.0 + 10.0 ** rng.uniform(-1.0, 1.0)
        lo, hi = max(0.0, (2.0 - g) / g), 1.0 / (2.0 * g - 1.0)
        return {"b": _interior(lo, hi, rng.uniform()), "g": g}
    if family == "power-log":
        alpha = 1.0 + 10.0 ** rng.uniform(-1.0, 0.5)
        delta = 2.0 + 10.0 ** rng.uniform(-1.0, 0.6)
        a = 1.0 / (delta - 1.0) + 10.0 ** rng.uniform(-1.0, 0.5)
        return {"alpha": alpha, "delta": delta, "a": a}
    if family == "sine-log":
        beta = -rng.uniform(0.1, math.pi / 2.0 - 0.1)
        alpha = _interior(0.0, math.pi / 2.0 - beta, rng.uniform())
        hi = min(-1.0 / math.sin(beta), 2.0)
        return {"beta": beta, "alpha": alpha, "a": _interior(1.0, hi, rng.uniform())}
    if family == "quad-exp":
        alpha = -(10.0 ** rng.uniform(-0.5, 0.7))
        lo = -math.sqrt(-6.0 * alpha)
        hi = min(-2.0 * alpha - math.sqrt(-6.0 * alpha), -math.sqrt(-2.0 * alpha))
        return {"alpha": alpha, "beta": _interior(lo, hi, rng.uniform())}
    if family == "power-exp":
        alpha = 1.0 + rng.uniform(0.1, 0.9)
        delta = 10.0 ** rng.uniform(-1.0, 0.3)
        epsilon = -(10.0 ** rng.uniform(-0.7, 0.5))
        beta = power_exp_beta_bound(alpha, delta, epsilon) + 10.0 ** rng.uniform(-1.0, 0.5)
        return {"alpha": alpha, "delta": delta, "epsilon": epsilon, "beta": beta}
    if family == "exponential":
        return {"lambda": 10.0 ** rng.uniform(-1.0, 1.0)}
    raise ValueError(f"no sampler for family {family!r}")

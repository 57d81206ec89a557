"""Slow reference values for moments and weighted integrals.

The integral over [-1, 1] is rewritten with x = cos(theta) and split at
theta = pi/2; on the right half the variable t = pi - theta is used so that
both endpoint singularities sit at 0 and the factors (1-x)^alpha,
(1+x)^beta and ln((1+x)/2) are evaluated from sin/cos of half angles
without cancellation.  Each half is cut into panels graded geometrically
toward its singular end, uniform panels resolving the oscillation of the
polynomial factor, and breaks at declared kinks of f.  Panels are
integrated by mpmath's tanh-sinh rule.

Results are accepted once two runs with different grading ratios (the
second at higher working precision) agree to the target accuracy; the
working precision is raised until they do.  Extended precision is needed
because moments such as M_100(100, -0.5) ~ 3e-29 come out of integrands
of size 1e30.
"""

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import AccuracyFailure, UsageError
from .integrands import as_integrand
from .moments import ChebBasis, WeightFamily, _params, initial_T

__all__ = ["OracleConfig", "oracle_moment", "oracle_integral", "MAX_ORACLE_INDEX"]

MAX_ORACLE_INDEX = 512


@dataclass(frozen=True)
class OracleConfig:
    target: float = 1e-13
    max_dps: int = 400
    grading: tuple = (0.5, 1.0 / 3.0)
    levels: int = 12
    start_dps: int = 30
    # results below zero_floor * int|w f| are treated as zero
    zero_floor: float = 1e-100

    def __post_init__(self):
        if self.target < 1e-15:
            raise UsageError("oracle target accuracy must be >= 1e-15")


def _breakpoints(half, ratio, levels, oscillation, kinks):
    pts = {mpmath.mpf(0), half}
    for j in range(1, levels + 1):
        pts.add(half * mpmath.mpf(ratio) ** j)
    panels = max(1, int(math.ceil(oscillation)))
    for i in range(1, panels):
        pts.add(half * i / panels)
    for k in kinks:
        if 0 < k < half:
            pts.add(k)
    return sorted(pts)


def _half_integrand(p, family, poly, f, side):
    """Integrand on one half, as a function of the distance u to its endpoint.

    side = +1: u = theta (near x = 1); side = -1: u = pi - theta (near x = -1).
    """
    a = mpmath.mpf(p.alpha)
    b = mpmath.mpf(p.beta)
    scale = mpmath.power(2, a + b + 1)

    def g(u):
        s, c = mpmath.sin(u / 2), mpmath.cos(u / 2)
        if side > 0:
            sin_half, cos_half = s, c
        else:
            sin_half, cos_half = c, s
        val = scale * sin_half ** (2 * a + 1) * cos_half ** (2 * b + 1)
        if family is WeightFamily.LOG:
            val *= 2 * mpmath.log(cos_half)
        x = side * mpmath.cos(u)
        val *= poly(u) * f(x)
        return val

    return g


def _poly_factor(n, basis, side):
    sign = 1 if (side > 0 or n % 2 == 0) else -1
    if basis is ChebBasis.T:
        # T_n(cos theta) * d(theta) Jacobian sin(theta) is carried by the weight
        return lambda u: sign * mpmath.cos(n * u)
    # U_n(cos theta) sin(theta) = sin((n+1) theta); divide out the sin(theta)
    # already inside the weight factor
    return lambda u: sign * mpmath.sin((n + 1) * u) / mpmath.sin(u)


def _integrate_once(p, family, basis, n, f, kinks, ratio, levels, dps):
    with mpmath.workdps(dps):
        half = mpmath.pi / 2
        # kink positions as distances from each endpoint
        theta_k = [mpmath.acos(mpmath.mpf(x)) for x in kinks]
        total = mpmath.mpf(0)
        for side in (1, -1):
            dist = [t if side > 0 else mpmath.pi - t for t in theta_k]
            pts = _breakpoints(half, ratio, levels, n / 2.0, dist)
            g = _half_integrand(p, family, _poly_factor(n, basis, side), f, side)
            total += mpmath.quad(g, pts)
        return total


def _scale(p, family, fmax):
    m0 = initial_T(p, family)[0]
    return abs(m0) * fmax


def _run(p, family, basis, n, f, kinks, fmax, config):
    scale = _scale(p, family, fmax)
    dps = config.start_dps
    r1, r2 = config.grading
    best = None
    while dps <= config.max_dps:
        est = _integrate_once(p, family, basis, n, f, kinks, r1, config.levels, dps)
        chk = _integrate_once(p, family, basis, n, f, kinks, r2, config.levels, dps + 15)
        diff = abs(est - chk)
        best = (float(chk), float(diff))
        if diff <= config.target * abs(chk) + config.zero_floor * scale:
            return float(chk)
        dps = int(dps * 1.6)
    raise AccuracyFailure(
        f"oracle did not reach relative accuracy {config.target}",
        estimate=best[0],
        error_bound=best[1],
    )


def oracle_moment(n, params, family=WeightFamily.PLAIN, basis=ChebBasis.T, config=None):
    """Reference value of int w(x) T_n(x) dx (or U_n) for n <= 512."""
    config = config or OracleConfig()
    p = _params(params)
    if not 0 <= n <= MAX_ORACLE_INDEX:
        raise UsageError(f"oracle_moment needs 0 <= n <= {MAX_ORACLE_INDEX}")
    family = WeightFamily(family)
    basis = ChebBasis(basis)
    fmax = 1.0 if basis is ChebBasis.T else float(n + 1)
    return _run(p, family, basis, n, lambda x: 1, (), fmax, config)


def oracle_integral(f, params, family=WeightFamily.PLAIN, config=None):
    """Reference value of int f(x) w(x) dx, splitting at the kinks of f."""
    config = config or OracleConfig()
    p = _params(params)
    family = WeightFamily(family)
    f = as_integrand(f)
    mp_f = f.mp_func if f.mp_func is not None else f.func
    probe = np.cos(np.linspace(0.0, np.pi, 257))
    fmax = float(np.max(np.abs(f(probe))))
    return _run(p, family, ChebBasis.T, 0, mp_f, f.kinks, fmax, config)

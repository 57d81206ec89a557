"""Clenshaw-Curtis and Fejer rules against Jacobi and log-Jacobi weights.

An integral is evaluated along one of two equivalent routes:

* coefficient route: Chebyshev coefficients of the interpolant (FFT, DCT or
  inverse DST of the samples) dotted with the modified moments;
* weight route: explicit node weights built from the moments, dotted with
  the samples.

Clenshaw-Curtis and Fejer-1 work in the T basis, Fejer-2 in the U basis.
"""

import enum
from dataclasses import dataclass

import numpy as np

from . import transforms
from .errors import UsageError
from .integrands import as_integrand
from .moments import ChebBasis, JacobiParams, MomentVector, WeightFamily, _params, moments

__all__ = [
    "NodeFamily",
    "QuadratureRule",
    "nodes",
    "coefficients",
    "rule_moments",
    "integrate",
    "rule_weights",
    "rule_weights_direct",
    "integrate_with_rule",
]


class NodeFamily(enum.Enum):
    CC = "cc"
    FEJER1 = "f1"
    FEJER2 = "f2"

    @property
    def basis(self):
        return ChebBasis.U if self is NodeFamily.FEJER2 else ChebBasis.T


@dataclass(frozen=True)
class QuadratureRule:
    family: NodeFamily
    nodes: np.ndarray
    weights: np.ndarray
    weight_family: WeightFamily
    params: JacobiParams

    @property
    def N(self):
        return self.nodes.size - 1


def nodes(family, N):
    """Nodes j = 0..N in decreasing order, exactly antisymmetric about 0."""
    family = NodeFamily(family)
    if family is NodeFamily.CC:
        if N < 1:
            raise UsageError("Clenshaw-Curtis needs N >= 1")
        return transforms.cospi_ratio(np.arange(N + 1), N)
    if N < 0:
        raise UsageError("N must be non-negative")
    j = np.arange(N + 1)
    if family is NodeFamily.FEJER1:
        return transforms.cospi_ratio(2 * j + 1, 2 * N + 2)
    return transforms.cospi_ratio(j + 1, N + 2)


def _fejer2_sines(N):
    return transforms.cospi_ratio(N + 2 - 2 * (np.arange(N + 1) + 1), 2 * (N + 2))


def coefficients(family, fvals):
    """Interpolation coefficients of samples taken at ``nodes(family, N)``.

    T-basis for CC and Fejer-1, U-basis for Fejer-2.
    """
    family = NodeFamily(family)
    fvals = np.asarray(fvals, dtype=float)
    N = fvals.size - 1
    if family is NodeFamily.CC:
        return transforms.cc_coefficients(fvals)
    if fvals.size < 1:
        raise UsageError("need at least one sample")
    if family is NodeFamily.FEJER1:
        a = transforms.dct_ii(fvals) * np.sqrt(2.0 / (N + 1))
        a[0] /= np.sqrt(2.0)
        return a
    return transforms.idst_i(fvals * _fejer2_sines(N))


def rule_moments(family, N, weight_family, params, method="auto", m=4):
    family = NodeFamily(family)
    return moments(N, params, WeightFamily(weight_family), family.basis, method, m)


def _check_moments(mv, family, N, weight_family, p):
    if mv.basis is not family.basis or mv.family is not weight_family:
        raise UsageError("moment vector basis/family does not match the rule")
    if mv.params != p or mv.N < N:
        raise UsageError("moment vector parameters or length do not match")
    return mv.values[: N + 1]


def integrate(f, N, family, weight_family=WeightFamily.PLAIN, params=(0.0, 0.0),
              mv=None, method="auto", m=4):
    """Interpolatory (N+1)-point rule along the coefficient route.

    ``mv`` may be a precomputed :class:`MomentVector` in the rule's basis.
    """
    family = NodeFamily(family)
    weight_family = WeightFamily(weight_family)
    p = _params(params)
    f = as_integrand(f)
    a = coefficients(family, f(nodes(family, N)))
    if mv is None:
        mv = rule_moments(family, N, weight_family, p, method, m)
    mu = _check_moments(mv, family, N, weight_family, p)
    return float(np.dot(a, mu))


def _weights_from_moments(family, mu):
    N = mu.size - 1
    if family is NodeFamily.CC:
        # the weight map is the same symmetric DCT-I as the coefficient map
        return transforms.cc_coefficients(mu)
    if family is NodeFamily.FEJER1:
        L = N + 1
        scaled = mu * np.sqrt(2.0 / L)
        scaled[0] = mu[0] / np.sqrt(L)
        return transforms.idct_ii(scaled)
    return _fejer2_sines(N) * transforms.idst_i(mu)


def _weights_direct(family, mu):
    N = mu.size - 1
    j = np.arange(N + 1)[:, None]
    k = np.arange(N + 1)[None, :]
    if family is NodeFamily.CC:
        c = transforms.cospi_ratio((j * k) % (2 * N), N)
        mm = mu.copy()
        mm[0] *= 0.5
        mm[N] *= 0.5
        w = (2.0 / N) * (c @ mm)
        w[0] *= 0.5
        w[N] *= 0.5
        return w
    if family is NodeFamily.FEJER1:
        period = 4 * (N + 1)
        c = transforms.cospi_ratio((k * (2 * j + 1)) % period, 2 * N + 2)
        mm = 2.0 * mu
        mm[0] = mu[0]
        return (c @ mm) / (N + 1)
    period = 2 * (N + 2)
    # sin(pi p / q) = cos(pi (q - 2p) / (2q))
    arg = ((k + 1) * (j + 1)) % period
    s = transforms.cospi_ratio(N + 2 - 2 * arg, 2 * (N + 2))
    return 2.0 * _fejer2_sines(N) / (N + 2) * (s @ mu)


def rule_weights(family, N, weight_family=WeightFamily.PLAIN, params=(0.0, 0.0),
                 mv=None, direct=False, method="auto", m=4):
    """Quadrature rule with weights from the moments.

    ``direct=True`` sums the defining trigonometric series in O(N^2);
    the default uses O(N log N) transforms.
    """
    family = NodeFamily(family)
    weight_family = WeightFamily(weight_family)
    p = _params(params)
    x = nodes(family, N)
    if mv is None:
        mv = rule_moments(family, N, weight_family, p, method, m)
    mu = np.array(_check_moments(mv, family, N, weight_family, p))
    w = _weights_direct(family, mu) if direct else _weights_from_moments(family, mu)
    return QuadratureRule(family, x, w, weight_family, p)


def rule_weights_direct(family, N, weight_family=WeightFamily.PLAIN, params=(0.0, 0.0), mv=None):
    return rule_weights(family, N, weight_family, params, mv=mv, direct=True)


def integrate_with_rule(rule, f):
    f = as_integrand(f)
    return float(np.dot(rule.weights, f(rule.nodes)))

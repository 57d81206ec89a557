"""Double precision Gamma, log-Gamma, digamma, Beta and the composite Phi.

Gamma and log-Gamma come from the C library through :mod:`math`; the
digamma function is evaluated by shifting the argument up to ``x >= 8``
and summing the asymptotic series.
"""

import math

from .errors import DomainError

__all__ = [
    "gamma_fn",
    "ln_gamma",
    "digamma_fn",
    "beta_fn",
    "phi_cap",
    "jacobi_prefactor",
]

# B_{2k} / (2k) for k = 1..7
_DIGAMMA_SERIES = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


def _is_nonpositive_integer(x):
    return x <= 0.0 and x == math.floor(x)


def gamma_fn(x):
    """Gamma function; raises DomainError at the poles 0, -1, -2, ..."""
    x = float(x)
    if _is_nonpositive_integer(x):
        raise DomainError(f"gamma has a pole at {x}")
    try:
        return math.gamma(x)
    except OverflowError:
        return math.inf


def ln_gamma(x):
    """Natural log of Gamma for x > 0."""
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def digamma_fn(x):
    """Psi(x) = Gamma'(x)/Gamma(x).

    Negative non-integer arguments are mapped through the reflection
    formula ``Psi(1-x) - Psi(x) = pi*cot(pi*x)``.
    """
    x = float(x)
    if _is_nonpositive_integer(x):
        raise DomainError(f"digamma has a pole at {x}")
    if x < 0.0:
        # tan has period pi, so reduce first; x - round(x) is exact
        return digamma_fn(1.0 - x) - math.pi / math.tan(math.pi * (x - round(x)))
    shift = 0.0
    while x < 8.0:
        shift += 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    for c in reversed(_DIGAMMA_SERIES):
        series = (series + c) * inv2
    return math.log(x) - 0.5 / x - series - shift


def beta_fn(x, y):
    """Beta function B(x, y) for x, y > 0.

    The arguments are sorted first so that B(x, y) and B(y, x) run the
    exact same floating point operations.
    """
    x, y = float(x), float(y)
    if not (x > 0.0 and y > 0.0):
        raise DomainError(f"beta_fn requires positive arguments, got ({x}, {y})")
    a, b = min(x, y), max(x, y)
    s = a + b
    if s < 170.0:
        return math.gamma(a) * (math.gamma(b) / math.gamma(s))
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(s))


def phi_cap(alpha, beta):
    """B(alpha+1, beta) * (Psi(alpha+beta+1) - Psi(beta))."""
    return beta_fn(alpha + 1.0, beta) * (
        digamma_fn(alpha + beta + 1.0) - digamma_fn(beta)
    )


def jacobi_prefactor(alpha, beta):
    """Zeroth Jacobi moment 2^(a+b+1) Gamma(a+1) Gamma(b+1) / Gamma(a+b+2).

    Evaluated directly while every Gamma value is finite (the ratio is taken
    first so intermediates stay in range), in log space beyond that.
    """
    s = alpha + beta
    if s + 2.0 < 170.0:
        return (
            2.0 ** (s + 1.0)
            * (math.gamma(alpha + 1.0) / math.gamma(s + 2.0))
            * math.gamma(beta + 1.0)
        )
    return math.exp(
        (s + 1.0) * math.log(2.0)
        + math.lgamma(alpha + 1.0)
        + math.lgamma(beta + 1.0)
        - math.lgamma(s + 2.0)
    )

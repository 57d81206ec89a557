"""Built-in integrands addressable by name.

Each entry carries a vectorized double precision evaluator, an mpmath
evaluator for the reference quadrature, and the interior points where it
is not smooth.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import mpmath
import numpy as np

from .errors import UsageError

__all__ = ["Integrand", "get_integrand", "as_integrand", "REGISTRY_NAMES", "cheb_T", "cheb_U"]


@dataclass(frozen=True)
class Integrand:
    name: str
    func: Callable
    mp_func: Optional[Callable] = None
    kinks: Tuple[float, ...] = field(default_factory=tuple)

    def __call__(self, x):
        return np.asarray(self.func(np.asarray(x, dtype=float)), dtype=float)


def cheb_T(k, x):
    """T_k(x) by the three-term recurrence (works on arrays and mpf)."""
    t0, t1 = x * 0 + 1, x
    if k == 0:
        return t0
    for _ in range(k - 1):
        t0, t1 = t1, 2 * x * t1 - t0
    return t1


def cheb_U(k, x):
    u0, u1 = x * 0 + 1, 2 * x
    if k == 0:
        return u0
    for _ in range(k - 1):
        u0, u1 = u1, 2 * x * u1 - u0
    return u1


def _tan_abs_mp(x):
    return mpmath.tan(abs(x))


def _abs_shift_pow(x):
    return np.abs(x - 0.5) ** 0.6


def _abs_shift_pow_mp(x):
    return abs(x - mpmath.mpf(1) / 2) ** (mpmath.mpf(3) / 5)


_FIXED = {
    "one": Integrand("one", lambda x: np.ones_like(x), lambda x: mpmath.mpf(1)),
    "exp": Integrand("exp", np.exp, mpmath.exp),
    "runge": Integrand("runge", lambda x: 1.0 / (1.0 + 25.0 * x * x),
                       lambda x: 1 / (1 + 25 * x * x)),
    "tan_abs": Integrand("tan_abs", lambda x: np.tan(np.abs(x)), _tan_abs_mp, (0.0,)),
    "abs_shift_pow": Integrand("abs_shift_pow", _abs_shift_pow, _abs_shift_pow_mp, (0.5,)),
}

REGISTRY_NAMES = tuple(_FIXED) + ("cheb_T:<k>", "cheb_U:<k>")


def get_integrand(name):
    """Look up a registry integrand; ``cheb_T:<k>`` and ``cheb_U:<k>`` take a degree."""
    if name in _FIXED:
        return _FIXED[name]
    kind, sep, deg = name.partition(":")
    if sep and kind in ("cheb_T", "cheb_U") and deg.isdigit():
        k = int(deg)
        poly = cheb_T if kind == "cheb_T" else cheb_U
        return Integrand(name, lambda x: poly(k, x), lambda x: poly(k, x))
    raise UsageError(f"unknown integrand {name!r}; known: {', '.join(REGISTRY_NAMES)}")


def as_integrand(f):
    """Accept a registry name, an Integrand, or a plain callable."""
    if isinstance(f, Integrand):
        return f
    if isinstance(f, str):
        return get_integrand(f)
    if callable(f):
        return Integrand(getattr(f, "__name__", "callback"), f, f)
    raise UsageError(f"cannot use {f!r} as an integrand")

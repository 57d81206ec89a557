"""Modified Chebyshev moments of Jacobi and log-Jacobi weights.

For ``w(x) = (1-x)^alpha (1+x)^beta`` the T-moments

    M_k = int_{-1}^{1} w(x) T_k(x) dx

satisfy the three-term recurrence

    (a+b+k+2) M_{k+1} + 2(a-b) M_k + (a+b-k+2) M_{k-1} = 0,

and the log-Jacobi moments ``G_k`` (extra factor ln((1+x)/2)) satisfy the
same recurrence with right-hand side ``2 M_k - M_{k-1} - M_{k+1}``.

Forward recursion is stable except when one exponent is a half-integer and
smaller than the other.  Those cases are handled by Oliver's method: the
recurrence is solved as a tridiagonal boundary value problem with an end
value taken from a terminating 3F2 sum or from an asymptotic expansion.
"""

import enum
import math
import warnings
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import DomainError, NumericalFailure, UnstableRecurrenceWarning, UsageError
from .specialfun import digamma_fn, jacobi_prefactor, phi_cap

__all__ = [
    "WeightFamily",
    "ChebBasis",
    "StabilityCase",
    "JacobiParams",
    "MomentVector",
    "TridiagonalSystem",
    "classify_stability",
    "initial_T",
    "forward_T",
    "end_value_3f2",
    "end_value_asym_M",
    "end_value_asym_G",
    "asymptotic_coeffs",
    "oliver_T",
    "oliver_logT",
    "reflect",
    "to_U_basis",
    "forward_U_threeterm",
    "tridiagonal_solve",
    "moments",
    "HYPERGEOMETRIC_MAX_INDEX",
    "OLIVER_EXTENSION",
    "LOG_OLIVER_EXTENSION",
]

# end values up to this index come from the exact 3F2 sum, beyond it from
# the asymptotic expansion
HYPERGEOMETRIC_MAX_INDEX = 2001
OLIVER_EXTENSION = 1000
LOG_OLIVER_EXTENSION = 1000

_HALF_INT_TOL = 1e-12
_PIVOT_TINY = 1e-300


class WeightFamily(enum.Enum):
    PLAIN = "jacobi"
    LOG = "logjacobi"


class ChebBasis(enum.Enum):
    T = "T"
    U = "U"


class StabilityCase(enum.Enum):
    FORWARD_STABLE = "forward-stable"
    CASE25 = "case25"  # alpha > beta, beta half-integer
    CASE26 = "case26"  # beta > alpha, alpha half-integer


@dataclass(frozen=True)
class JacobiParams:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1.0 and self.beta > -1.0):
            raise DomainError(
                f"Jacobi exponents must exceed -1, got ({self.alpha}, {self.beta})"
            )

    def swapped(self):
        return JacobiParams(self.beta, self.alpha)


def _params(params):
    if isinstance(params, JacobiParams):
        return params
    alpha, beta = params
    return JacobiParams(float(alpha), float(beta))


@dataclass(frozen=True)
class MomentVector:
    """Moments k = 0..N of one weight family in one Chebyshev basis."""

    basis: ChebBasis
    family: WeightFamily
    params: JacobiParams
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.values.size

    def __getitem__(self, k):
        return self.values[k]

    @property
    def N(self):
        return self.values.size - 1


@dataclass(frozen=True)
class TridiagonalSystem:
    """``sub[i]`` couples row i+1 to column i; ``sup[i]`` couples row i to column i+1."""

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        n = len(self.diag)
        if len(self.rhs) != n or len(self.sub) != n - 1 or len(self.sup) != n - 1:
            raise UsageError("inconsistent tridiagonal dimensions")

    def matvec(self, x):
        x = np.asarray(x, dtype=float)
        y = np.asarray(self.diag, dtype=float) * x
        y[1:] += np.asarray(self.sub, dtype=float) * x[:-1]
        y[:-1] += np.asarray(self.sup, dtype=float) * x[1:]
        return y


def _is_half_integer(x):
    twice = 2.0 * x
    r = round(twice)
    return r % 2 == 1 and abs(twice - r) <= _HALF_INT_TOL


def classify_stability(params):
    p = _params(params)
    if p.alpha > p.beta and _is_half_integer(p.beta):
        return StabilityCase.CASE25
    if p.beta > p.alpha and _is_half_integer(p.alpha):
        return StabilityCase.CASE26
    return StabilityCase.FORWARD_STABLE


def initial_T(params, family=WeightFamily.PLAIN):
    """First two T-moments (M_0, M_1) or (G_0, G_1)."""
    p = _params(params)
    a, b = p.alpha, p.beta
    if family is WeightFamily.PLAIN:
        m0 = jacobi_prefactor(a, b)
        return m0, m0 * (b - a) / (a + b + 2.0)
    scale = 2.0 ** (a + b + 1.0)
    phi1 = phi_cap(a, b + 1.0)
    phi2 = phi_cap(a, b + 2.0)
    return -scale * phi1, -scale * (2.0 * phi2 - phi1)


def _plain_forward(N, a, b, m0, m1):
    vals = [m0, m1]
    s = a + b
    d = 2.0 * (b - a)
    for k in range(1, N):
        vals.append((d * vals[k] - (s - k + 2.0) * vals[k - 1]) / (s + k + 2.0))
    return vals[: N + 1]


def _log_forward(N, a, b, g0, g1, M):
    vals = [g0, g1]
    s = a + b
    d = 2.0 * (b - a)
    for k in range(1, N):
        rhs = 2.0 * M[k] - M[k - 1] - M[k + 1]
        vals.append((d * vals[k] - (s - k + 2.0) * vals[k - 1] + rhs) / (s + k + 2.0))
    return vals[: N + 1]


def forward_T(N, params, family=WeightFamily.PLAIN):
    """T-moments 0..N by forward recursion.

    No stability check is made here; on Case25/Case26 parameters the plain
    recursion loses all accuracy as N grows.
    """
    p = _params(params)
    if N < 0:
        raise UsageError("N must be non-negative")
    m0, m1 = initial_T(p, family)
    if family is WeightFamily.PLAIN:
        vals = _plain_forward(N, p.alpha, p.beta, m0, m1)
    else:
        M = moments(N + 1, p, WeightFamily.PLAIN).values
        vals = _log_forward(N, p.alpha, p.beta, m0, m1, M)
    return MomentVector(ChebBasis.T, family, p, vals[: N + 1])


def end_value_3f2(n, params):
    """M_n from the terminating series 3F2(n, -n, a+1; 1/2, a+b+2; 1).

    The terms grow to about 4^n times the result before cancelling, so
    the sum is carried out in mpmath with enough guard bits to absorb the
    cancellation; the precision is raised until the result is resolved.
    """
    p = _params(params)
    if not (isinstance(n, (int, np.integer)) and 1 <= n <= HYPERGEOMETRIC_MAX_INDEX):
        raise UsageError(f"end_value_3f2 needs 1 <= n <= {HYPERGEOMETRIC_MAX_INDEX}")
    n = int(n)
    a, b = p.alpha, p.beta

    # log2 of the largest term, from the term ratios in double precision
    log_term = 0.0
    log_max = 0.0
    for j in range(n):
        ratio = (n + j) * (n - j) * (a + 1.0 + j) / ((0.5 + j) * (a + b + 2.0 + j) * (j + 1.0))
        log_term += math.log2(abs(ratio)) if ratio != 0.0 else -math.inf
        log_max = max(log_max, log_term)

    prec = int(log_max) + 120
    while True:
        with mpmath.workprec(prec):
            A = mpmath.mpf(a) + 1
            C = mpmath.mpf(a) + mpmath.mpf(b) + 2
            half = mpmath.mpf(1) / 2
            term = mpmath.mpf(1)
            total = mpmath.mpf(1)
            for j in range(n):
                term = term * (n + j) * (j - n) * (A + j) / ((half + j) * (C + j) * (j + 1))
                total += term
            if total == 0:
                resolved_bits = prec
            else:
                resolved_bits = prec - (log_max - float(mpmath.log(abs(total), 2)))
            if resolved_bits >= 80:
                value = float(total)
                break
        prec += int(prec - resolved_bits) + 80
        if prec > 200000:
            raise NumericalFailure("3F2 sum did not resolve")
    return jacobi_prefactor(a, b) * value


def _cospi(t):
    """cos(pi t), exactly zero at half-integers."""
    r = math.fmod(abs(t), 2.0)
    if r == 0.5 or r == 1.5:
        return 0.0
    return math.cos(math.pi * r)


def _sinpi(t):
    r = math.fmod(t, 2.0)
    if r == 0.0 or abs(r) == 1.0:
        return 0.0
    return math.sin(math.pi * r)


def _log_h_magnitude(s, n):
    """log(Gamma(2s+2) n^(-2s-2)) with s > -1."""
    return math.lgamma(2.0 * s + 2.0) - (2.0 * s + 2.0) * math.log(n)


def _h(s, n):
    c = _cospi(s + 1.0)
    if c == 0.0:
        return 0.0
    return c * math.exp(_log_h_magnitude(s, n))


def asymptotic_coeffs(alpha, beta):
    """Expansion coefficients (a_k(alpha, beta), b_k, c_k) for k = 0..3."""
    a, b = alpha, beta
    ak = (
        1.0,
        -a / 12.0 - b / 4.0 - 1.0 / 6.0,
        1.0 / 120.0 + 19.0 * a / 1440.0 + a * a / 288.0 + a * b / 48.0 + b / 32.0 + b * b / 32.0,
        -1.0 / 5040.0
        - b / 960.0
        - 107.0 * a / 181440.0
        - b * b / 384.0
        - a * a / 1920.0
        - b**3 / 384.0
        - a**3 / 10368.0
        - 7.0 * a * b / 2880.0
        - a * a * b / 1152.0
        - a * b * b / 384.0,
    )
    bk = (
        0.0,
        -1.0 / 12.0,
        19.0 / 1440.0 + a / 48.0 + b / 144.0,
        -7.0 * a / 2880.0
        - b / 960.0
        - a * a / 384.0
        - b * b / 3456.0
        - 107.0 / 181440.0
        - a * b / 576.0,
    )
    ck = (
        0.0,
        -0.25,
        1.0 / 32.0 + a / 48.0 + b / 16.0,
        -7.0 * a / 2880.0
        - b / 192.0
        - a * a / 1152.0
        - b * b / 128.0
        - 1.0 / 960.0
        - a * b / 192.0,
    )
    return ak, bk, ck


def _check_order(m):
    if m not in (1, 2, 3, 4):
        raise UsageError(f"expansion order must be 1..4, got {m}")


def end_value_asym_M(n, params, m=4):
    """Large-n expansion of M_n with m terms per endpoint."""
    _check_order(m)
    p = _params(params)
    a, b = p.alpha, p.beta
    ak_ab = asymptotic_coeffs(a, b)[0]
    ak_ba = asymptotic_coeffs(b, a)[0]
    right = sum(ak_ab[k] * _h(a + k, n) for k in range(m))
    left = sum(ak_ba[k] * _h(b + k, n) for k in range(m))
    sign = -1.0 if n % 2 else 1.0
    return 2.0 ** (b - a) * right + sign * 2.0 ** (a - b) * left


def _h_phi(s, n):
    """h(s) * phi(s), with the tan(pi s) pole of phi cancelled analytically.

    cos(pi(s+1)) * (-pi/2) tan(pi s) = (pi/2) sin(pi s), so the product is
    finite for every s > -1, including the half-integers where h vanishes.
    """
    c = _cospi(s + 1.0)
    core = c * (digamma_fn(2.0 * s + 2.0) - math.log(2.0 * n)) + 0.5 * math.pi * _sinpi(s)
    if core == 0.0:
        return 0.0
    return core * math.exp(_log_h_magnitude(s, n))


def end_value_asym_G(n, params, m=4):
    """Large-n expansion of the log-Jacobi moment G_n with m terms."""
    _check_order(m)
    if n < 2:
        raise UsageError("end_value_asym_G needs n >= 2")
    p = _params(params)
    a, b = p.alpha, p.beta
    _, bk, ck = asymptotic_coeffs(a, b)
    ak_ba = asymptotic_coeffs(b, a)[0]
    right = sum(ck[k] * _h(a + k, n) for k in range(m))
    left = sum(2.0 * ak_ba[k] * _h_phi(b + k, n) + bk[k] * _h(b + k, n) for k in range(m))
    sign = -1.0 if n % 2 else 1.0
    return 2.0 ** (b - a) * right + sign * 2.0 ** (a - b) * left


def tridiagonal_solve(system):
    """Solve a tridiagonal system by LU chasing (no pivoting), O(n)."""
    sub = np.asarray(system.sub, dtype=float).tolist()
    diag = np.asarray(system.diag, dtype=float).tolist()
    sup = np.asarray(system.sup, dtype=float).tolist()
    rhs = np.asarray(system.rhs, dtype=float).tolist()
    n = len(diag)
    piv = diag[0]
    if abs(piv) < _PIVOT_TINY:
        raise NumericalFailure("zero pivot in row 0")
    ratios = [0.0] * n
    y = [0.0] * n
    y[0] = rhs[0] / piv
    for i in range(1, n):
        ratios[i - 1] = sup[i - 1] / piv
        l = sub[i - 1]
        piv = diag[i] - l * ratios[i - 1]
        if abs(piv) < _PIVOT_TINY:
            raise NumericalFailure(f"zero pivot in row {i}")
        y[i] = (rhs[i] - l * y[i - 1]) / piv
    for i in range(n - 2, -1, -1):
        y[i] -= ratios[i] * y[i + 1]
    return np.array(y)


def _plain_end_value(n, p, m):
    if n <= HYPERGEOMETRIC_MAX_INDEX:
        return end_value_3f2(n, p)
    return end_value_asym_M(n, p, m)


def _recurrence_bands(size, s, d):
    k = np.arange(size, dtype=float)
    sub = s + 2.0 - k[1:]
    sup = s + 2.0 + k[:-1]
    diag = np.full(size, d)
    return sub, diag, sup


def oliver_T(N, params, m=4, extension=OLIVER_EXTENSION, end_value=None):
    """Plain T-moments 0..N from Oliver's boundary value system.

    The system is solved for M_0..M_L with L = N + extension: row 0 ties
    M_0 and M_1 together, rows 1..L carry the recurrence, and M_{L+1} is
    moved to the right-hand side of the last row.  The end value is the
    3F2 sum for L+1 <= 2001 and the m-term expansion beyond.  Solving past
    N pushes the end value error far away from the returned entries.
    """
    p = _params(params)
    if N < 1:
        raise UsageError("oliver_T needs N >= 1")
    a, b = p.alpha, p.beta
    s = a + b
    L = N + extension
    if end_value is None:
        end_value = _plain_end_value(L + 1, p, m)
    sub, diag, sup = _recurrence_bands(L + 1, s, 2.0 * (a - b))
    rhs = np.zeros(L + 1)
    rhs[0] = jacobi_prefactor(a, b) * (a - b)
    rhs[-1] -= (s + 2.0 + L) * end_value
    values = tridiagonal_solve(TridiagonalSystem(sub, diag, sup, rhs))
    return MomentVector(ChebBasis.T, WeightFamily.PLAIN, p, values[: N + 1])


def oliver_logT(N, params, m=4, extension=LOG_OLIVER_EXTENSION, plain=None):
    """Log-Jacobi T-moments 0..N from an extended Oliver system.

    The system has N+extension+1 unknowns G_0..G_{N+extension}.  Row 0
    carries the starting pair (G_0, G_1) in the same form as the plain
    system, rows 1..N+extension-1 carry the inhomogeneous recurrence and the
    last row pins G_{N+extension} to its m-term asymptotic value.
    """
    p = _params(params)
    if N < 1:
        raise UsageError("oliver_logT needs N >= 1")
    a, b = p.alpha, p.beta
    s = a + b
    d = 2.0 * (a - b)
    size = N + extension + 1
    if plain is None:
        plain = moments(size, p, WeightFamily.PLAIN).values
    M = np.asarray(plain, dtype=float)
    if M.size < size + 1:
        raise UsageError("need plain moments up to index N+extension")
    g0, g1 = initial_T(p, WeightFamily.LOG)
    sub, diag, sup = _recurrence_bands(size, s, d)
    rhs = np.empty(size)
    rhs[0] = d * g0 + (s + 2.0) * g1
    rhs[1:-1] = 2.0 * M[1 : size - 1] - M[0 : size - 2] - M[2:size]
    # last row: identity
    sub[-1] = 0.0
    diag[-1] = 1.0
    rhs[-1] = end_value_asym_G(size - 1, p, m)
    values = tridiagonal_solve(TridiagonalSystem(sub, diag, sup, rhs))
    return MomentVector(ChebBasis.T, WeightFamily.LOG, p, values[: N + 1])


def reflect(mv):
    """Map the plain T-moments of (alpha, beta) to those of (beta, alpha)."""
    if mv.family is not WeightFamily.PLAIN or mv.basis is not ChebBasis.T:
        raise UsageError("reflect applies to plain-Jacobi T-moments only")
    values = mv.values.copy()
    values[1::2] = -values[1::2]
    return MomentVector(ChebBasis.T, WeightFamily.PLAIN, mv.params.swapped(), values)


def to_U_basis(mvT, m1_hat_seed=None):
    """U-moments from T-moments via U_{k+2} = 2 T_{k+2} + U_k."""
    if mvT.basis is not ChebBasis.T:
        raise UsageError("to_U_basis expects a T-basis moment vector")
    t = mvT.values.tolist()
    u = [0.0] * len(t)
    u[0] = t[0]
    if len(t) > 1:
        u[1] = 2.0 * t[1] if m1_hat_seed is None else float(m1_hat_seed)
    for k in range(len(t) - 2):
        u[k + 2] = 2.0 * t[k + 2] + u[k]
    return MomentVector(ChebBasis.U, mvT.family, mvT.params, u)


def forward_U_threeterm(N, params, family=WeightFamily.PLAIN):
    """U-moments by their own three-term recurrence (cross-check only)."""
    p = _params(params)
    a, b = p.alpha, p.beta
    s = a + b
    d = 2.0 * (b - a)
    t0, t1 = initial_T(p, family)
    u = [t0, 2.0 * t1]
    if family is WeightFamily.LOG:
        Mhat = forward_U_threeterm(N + 1, p, WeightFamily.PLAIN).values
    for k in range(1, N):
        nxt = d * u[k] - (s - k) * u[k - 1]
        if family is WeightFamily.LOG:
            nxt += 2.0 * Mhat[k] - Mhat[k - 1] - Mhat[k + 1]
        u.append(nxt / (s + k + 2.0))
    return MomentVector(ChebBasis.U, family, p, u[: N + 1])


def moments(N, params, family=WeightFamily.PLAIN, basis=ChebBasis.T, method="auto", m=4):
    """Moments 0..N, choosing forward recursion or Oliver's method.

    ``method="auto"`` follows the stability analysis:

    ========================  ===========================
    ForwardStable             forward recursion
    Case25, plain             Oliver
    Case26, plain             Oliver on (beta, alpha), reflected
    Case25, log               forward recursion
    Case26, log               extended Oliver
    ========================  ===========================
    """
    p = _params(params)
    family = WeightFamily(family)
    basis = ChebBasis(basis)
    if N < 0:
        raise UsageError("N must be non-negative")
    if method not in ("auto", "forward", "oliver"):
        raise UsageError(f"unknown method {method!r}")
    case = classify_stability(p)

    if N <= 1:
        vals = initial_T(p, family)[: N + 1]
        mv = MomentVector(ChebBasis.T, family, p, vals)
    elif method == "forward" or (
        method == "auto"
        and (case is StabilityCase.FORWARD_STABLE
             or (case is StabilityCase.CASE25 and family is WeightFamily.LOG))
    ):
        unstable = case is StabilityCase.CASE26 or (
            case is StabilityCase.CASE25 and family is WeightFamily.PLAIN
        )
        if unstable:
            warnings.warn(
                f"forward recursion is unstable for (alpha, beta) = "
                f"({p.alpha}, {p.beta}); results will lose accuracy",
                UnstableRecurrenceWarning,
                stacklevel=2,
            )
        mv = forward_T(N, p, family)
    elif family is WeightFamily.PLAIN:
        if case is StabilityCase.CASE26:
            mv = reflect(oliver_T(N, p.swapped(), m))
        else:
            mv = oliver_T(N, p, m)
    else:
        mv = oliver_logT(N, p, m)

    if basis is ChebBasis.U:
        mv = to_U_basis(mv)
    return mv

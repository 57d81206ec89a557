import math
import warnings

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccquad.errors import DomainError, NumericalFailure, UnstableRecurrenceWarning, UsageError
from ccquad.moments import (
    ChebBasis,
    JacobiParams,
    MomentVector,
    StabilityCase,
    TridiagonalSystem,
    WeightFamily,
    asymptotic_coeffs,
    classify_stability,
    end_value_3f2,
    end_value_asym_G,
    end_value_asym_M,
    forward_T,
    forward_U_threeterm,
    initial_T,
    moments,
    oliver_logT,
    oliver_T,
    reflect,
    to_U_basis,
    tridiagonal_solve,
)
from ccquad.oracle import oracle_moment
from conftest import rel_err

PLAIN = WeightFamily.PLAIN
LOG = WeightFamily.LOG


def exact_plain_moment(n, a, b, dps=60):
    """M_n from the 3F2 representation summed in high precision."""
    with mpmath.workdps(dps + 2 * n):
        a = mpmath.mpf(a)
        b = mpmath.mpf(b)
        m0 = mpmath.power(2, a + b + 1) * mpmath.beta(a + 1, b + 1)
        return float(m0 * mpmath.hyp3f2(n, -n, a + 1, 0.5, a + b + 2, 1))


# ---------------------------------------------------------------- params


def test_params_validation():
    with pytest.raises(DomainError):
        JacobiParams(-1.0, 0.0)
    with pytest.raises(DomainError):
        JacobiParams(0.0, -1.5)
    assert JacobiParams(0.2, 0.3).swapped() == JacobiParams(0.3, 0.2)


@pytest.mark.parametrize(
    "params, case",
    [
        ((-0.6, -0.5), StabilityCase.FORWARD_STABLE),
        ((20.0, -0.5), StabilityCase.CASE25),
        ((-0.5, 100.0), StabilityCase.CASE26),
        ((0.0, 0.0), StabilityCase.FORWARD_STABLE),
        ((0.6, 1.5), StabilityCase.FORWARD_STABLE),
        ((3.0, 2.5), StabilityCase.CASE25),
        ((-0.4999, -0.5), StabilityCase.CASE25),
        ((0.9999, -0.4999), StabilityCase.FORWARD_STABLE),
    ],
)
def test_classify_stability(params, case):
    assert classify_stability(params) is case


# ---------------------------------------------------------------- initial values


def test_initial_values():
    assert initial_T((0.0, 0.0)) == pytest.approx((2.0, 0.0), abs=1e-15)
    m0, m1 = initial_T((-0.5, -0.5))
    assert m0 == pytest.approx(math.pi, rel=1e-15)
    assert m1 == 0.0
    g0, g1 = initial_T((0.0, 0.0), LOG)
    assert g0 == pytest.approx(-2.0, rel=1e-14)
    assert g1 == pytest.approx(1.0, rel=1e-14)


@pytest.mark.parametrize("params", [(-0.6, -0.5), (2.5, 0.3), (0.0, 1.7)])
def test_log_initial_values_against_oracle(params):
    g0, g1 = initial_T(params, LOG)
    assert rel_err(g0, oracle_moment(0, params, LOG)) < 1e-13
    assert rel_err(g1, oracle_moment(1, params, LOG)) < 1e-13


# ---------------------------------------------------------------- forward recursion


def test_forward_reference_values():
    mv = forward_T(2000, (-0.6, -0.5))
    assert mv.values[10] == pytest.approx(0.061104330977316, rel=1e-13)
    assert mv.values[1000] == pytest.approx(0.001535055343264, rel=1e-12)
    assert moments(2, (0.0, 0.0)).values[2] == pytest.approx(-2.0 / 3.0, rel=1e-15)


def test_forward_log_against_oracle():
    # -3.0531923838557... is G_10 for (1, -0.6); (10, -0.6) is checked against the oracle
    mv = forward_T(10, (1.0, -0.6), LOG)
    assert mv.values[10] == pytest.approx(-3.053192383855787, rel=1e-13)
    ref = oracle_moment(10, (10.0, -0.6), LOG)
    assert rel_err(forward_T(10, (10.0, -0.6), LOG).values[10], ref) < 1e-12


def test_forward_instability_witness():
    bad = forward_T(100, (20.0, -0.5)).values[100]
    exact = end_value_3f2(100, (20.0, -0.5))
    assert abs(bad - exact) / abs(exact) > 1e20


def test_degenerate_sizes():
    assert moments(0, (0.3, 0.2)).values.tolist() == [initial_T((0.3, 0.2))[0]]
    assert moments(1, (0.3, 0.2), LOG).values.tolist() == list(initial_T((0.3, 0.2), LOG))


def test_forced_forward_warns():
    with pytest.warns(UnstableRecurrenceWarning):
        mv = moments(100, (-0.5, 100.0), LOG, method="forward")
    # the collapse: wrong sign and a huge magnitude
    assert mv.values[100] < 0 and 1e13 < abs(mv.values[100]) < 1e16
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        moments(100, (-0.6, -0.5), method="forward")


def test_bad_method_and_size():
    with pytest.raises(UsageError):
        moments(5, (0, 0), method="backward")
    with pytest.raises(UsageError):
        moments(-1, (0, 0))


# ---------------------------------------------------------------- end values


def test_end_value_3f2_values():
    assert end_value_3f2(100, (100.0, -0.5)) == pytest.approx(2.805165440968788e-29, rel=1e-13)
    assert end_value_3f2(5, (20.0, -0.5)) == pytest.approx(-1.734810854604316e5, rel=1e-14)
    assert end_value_3f2(100, (20.0, -0.5)) == pytest.approx(-3.083991348593134e-41, rel=1e-13)
    for params in [(0.3, -0.2), (5.0, 1.0), (-0.7, 2.0)]:
        assert end_value_3f2(1, params) == pytest.approx(initial_T(params)[1], rel=1e-14)


@pytest.mark.parametrize("n", [3, 17, 60, 250])
@pytest.mark.parametrize("params", [(0.6, -0.5), (10.0, -0.5), (2.5, 0.3)])
def test_end_value_3f2_against_mpmath(n, params):
    assert rel_err(end_value_3f2(n, params), exact_plain_moment(n, *params)) < 1e-13


def test_end_value_3f2_range():
    with pytest.raises(UsageError):
        end_value_3f2(0, (0.6, -0.5))
    with pytest.raises(UsageError):
        end_value_3f2(2002, (0.6, -0.5))


def test_asymptotic_coefficients():
    ak, bk, ck = asymptotic_coeffs(0.3, -0.2)
    assert ak[0] == 1.0 and bk[0] == 0.0 and ck[0] == 0.0
    assert ak[1] == pytest.approx(-0.3 / 12 + 0.2 / 4 - 1 / 6, rel=1e-15)
    assert bk[1] == pytest.approx(-1 / 12, rel=1e-15)


def test_end_value_asym_M():
    exact = 1.131065744497495e-13
    assert abs(end_value_asym_M(8000, (0.6, -0.5), 4) - exact) < 2e-26
    assert rel_err(end_value_asym_M(8000, (10.0, -0.5), 4), -4.781368848995069e-70) < 1e-13
    # the one-term expansion carries a relative error of order 1/n^2
    one = end_value_asym_M(8000, (0.6, -0.5), 1)
    assert 1e-10 < rel_err(one, exact) < 1e-6


@pytest.mark.parametrize("n", [1500, 2000])
def test_3f2_and_expansion_agree(n):
    p = (0.6, -0.5)
    assert rel_err(end_value_asym_M(n, p, 4), end_value_3f2(n, p)) < 1e-10


def test_expansion_order_checked():
    with pytest.raises(UsageError):
        end_value_asym_M(3000, (0.6, -0.5), 5)
    with pytest.raises(UsageError):
        end_value_asym_G(3000, (0.6, -0.5), 0)


def test_end_value_asym_G_converges():
    params = (0.9999, -0.5)
    errs = {}
    for n in (64, 128, 256):
        ref = oracle_moment(n, params, LOG)
        errs[n] = [rel_err(end_value_asym_G(n, params, m), ref) for m in (1, 2)]
    for m in range(2):
        assert errs[64][m] > errs[128][m] > errs[256][m]
    for n in errs:
        assert errs[n][1] < errs[n][0]


# ---------------------------------------------------------------- tridiagonal solver


def test_tridiagonal_small():
    eye = TridiagonalSystem(np.zeros(3), np.ones(4), np.zeros(3), np.array([1.0, 2, 3, 4]))
    assert np.array_equal(tridiagonal_solve(eye), [1, 2, 3, 4])
    two = TridiagonalSystem(np.array([1.0]), np.array([2.0, 2.0]), np.array([1.0]), np.array([3.0, 3.0]))
    assert np.allclose(tridiagonal_solve(two), [1.0, 1.0], rtol=1e-15)


def test_tridiagonal_against_dense():
    rng = np.random.default_rng(7)
    n = 500
    sub = rng.uniform(-1, 1, n - 1)
    sup = rng.uniform(-1, 1, n - 1)
    diag = 2.5 + rng.uniform(0, 1, n)
    rhs = rng.standard_normal(n)
    dense = np.diag(diag) + np.diag(sub, -1) + np.diag(sup, 1)
    x = tridiagonal_solve(TridiagonalSystem(sub, diag, sup, rhs))
    ref = np.linalg.solve(dense, rhs)
    assert np.max(np.abs(x - ref)) <= 1e-12 * np.max(np.abs(ref))
    sys_ = TridiagonalSystem(sub, diag, sup, rhs)
    assert np.max(np.abs(sys_.matvec(x) - rhs)) <= 1e-12 * np.max(np.abs(rhs))


def test_tridiagonal_zero_pivot():
    sys_ = TridiagonalSystem(np.array([1.0]), np.array([0.0, 1.0]), np.array([1.0]), np.ones(2))
    with pytest.raises(NumericalFailure):
        tridiagonal_solve(sys_)


# ---------------------------------------------------------------- Oliver


def test_oliver_T_values():
    mv = oliver_T(8000, (0.6, -0.5))
    assert rel_err(mv.values[2000], 9.551684021848334e-12) < 1e-12
    assert rel_err(oliver_T(4000, (10.0, -0.5)).values[4000], -2.005493070382302e-63) < 1e-12
    assert rel_err(oliver_T(100, (100.0, -0.5)).values[100], 2.805165440968788e-29) < 1e-12


def test_oliver_one_term_value():
    # the one-term expansion only enters through the far end value
    mv = oliver_T(8000, (0.6, -0.5), m=1)
    assert rel_err(mv.values[8000], 1.131065757767465e-13) < 1e-8


def test_oliver_needs_size():
    with pytest.raises(UsageError):
        oliver_T(0, (0.6, -0.5))


def test_oliver_log_values():
    mv = oliver_logT(1000, (-0.5, 100.0))
    assert rel_err(mv.values[100], 1.089944378602585e-28) < 1e-11
    assert rel_err(mv.values[1000], 5.715301877322031e-259) < 1e-11
    mv = oliver_logT(10, (-0.4999, -0.5))
    assert rel_err(mv.values[10], -0.314181354550401) < 1e-11


def test_auto_routes_reference_values():
    mv = moments(2000, (-0.6, -0.5))
    assert rel_err(mv.values[2000], 0.000881657781753) < 1e-12
    mv = moments(1000, (100.0, -0.5), LOG)
    assert rel_err(mv.values[1000], -5.632306274999927e27) < 1e-12
    mv = moments(1000, (-0.5, 100.0), LOG)
    assert rel_err(mv.values[1000], 5.715301877322031e-259) < 1e-11


# ---------------------------------------------------------------- reflection and U basis


def test_reflect_involution_and_sign():
    mv = moments(50, (0.0, 1.0))
    assert np.array_equal(reflect(reflect(mv)).values, mv.values)
    r = reflect(moments(3, (0.0, 1.0)))
    assert r.params == JacobiParams(1.0, 0.0)
    assert r.values[1] == pytest.approx(initial_T((1.0, 0.0))[1], rel=1e-15)
    assert r.values[1] == pytest.approx(-2.0 / 3.0, rel=1e-15)


def test_case26_plain_is_reflected_oliver():
    mv = moments(200, (-0.5, 100.0))
    assert mv.values[0] == pytest.approx(initial_T((100.0, -0.5))[0], rel=1e-14)
    assert np.array_equal(mv.values, reflect(oliver_T(200, (100.0, -0.5))).values)


def test_to_U_basis_examples():
    u = moments(2, (0.0, 0.0), basis=ChebBasis.U).values
    assert u[0] == pytest.approx(2.0) and u[1] == 0.0
    assert u[2] == pytest.approx(2.0 / 3.0, rel=1e-15)
    g = moments(1, (0.0, 0.0), LOG, ChebBasis.U).values
    assert g == pytest.approx([-2.0, 2.0], rel=1e-14)
    ref = oracle_moment(7, (0.3, -0.2), PLAIN, ChebBasis.U)
    assert rel_err(moments(7, (0.3, -0.2), basis="U").values[7], ref) < 1e-13


def test_to_U_basis_seed_and_basis():
    mvT = moments(4, (0.2, 0.1))
    seeded = to_U_basis(mvT, m1_hat_seed=5.0)
    assert seeded.values[1] == 5.0
    with pytest.raises(UsageError):
        to_U_basis(to_U_basis(mvT))


@pytest.mark.parametrize("family", [PLAIN, LOG])
def test_U_threeterm_cross_check(family):
    a = to_U_basis(moments(200, (-0.3, -0.4), family)).values
    b = forward_U_threeterm(200, (-0.3, -0.4), family).values
    scale = np.max(np.abs(a))
    assert np.max(np.abs(a - b)) <= 1e-11 * scale


# ---------------------------------------------------------------- invariants

ROUTE_CASES = [
    ((-0.6, -0.5), PLAIN),
    ((0.6, -0.5), PLAIN),
    ((10.0, -0.5), PLAIN),
    ((-0.5, 100.0), PLAIN),
    ((2.5, 0.3), PLAIN),
    ((-0.6, -0.5), LOG),
    ((100.0, -0.5), LOG),
    ((-0.5, 100.0), LOG),
    ((-0.4999, -0.5), LOG),
    ((2.5, 0.3), LOG),
]


@pytest.mark.parametrize("params, family", ROUTE_CASES)
def test_recurrence_residual(params, family):
    N = 3000
    mv = moments(N, params, family)
    a, b = params
    s = a + b
    k = np.arange(1, N)
    v = mv.values
    lhs = (s + k + 2) * v[2:] + 2 * (a - b) * v[1:-1] + (s - k + 2) * v[:-2]
    scale = np.maximum.reduce([np.abs(v[:-2]), np.abs(v[1:-1]), np.abs(v[2:])])
    if family is LOG:
        M = moments(N, params).values
        rhs = 2 * M[1:-1] - M[:-2] - M[2:]
        lhs = lhs - rhs
        scale = np.maximum(scale, np.maximum.reduce([np.abs(M[:-2]), np.abs(M[1:-1]), np.abs(M[2:])]))
    # (-0.5, 100) moments underflow past k ~ 1800; subnormals carry no
    # relative accuracy, so only normal-range entries are checked
    normal = scale >= np.finfo(float).tiny
    assert np.all(np.abs(lhs[normal]) <= 1e-10 * scale[normal] * (s + k[normal] + 2))


@pytest.mark.parametrize("params", [(-0.3, -0.6), (0.25, 1.75), (0.0, 0.0)])
def test_reflection_symmetry(params):
    a, b = params
    fwd = moments(500, (a, b)).values
    swp = moments(500, (b, a)).values
    signs = (-1.0) ** np.arange(501)
    assert np.max(np.abs(fwd - signs * swp)) <= 1e-11 * np.max(np.abs(fwd))


@settings(max_examples=40, deadline=None)
@given(
    st.floats(min_value=-0.95, max_value=6.0),
    st.floats(min_value=-0.95, max_value=6.0),
    st.sampled_from([PLAIN, LOG]),
)
def test_moment_bound(a, b, family):
    mv = moments(400, (a, b), family)
    v = mv.values
    assert np.all(np.abs(v) <= abs(v[0]) * (1 + 1e-12))


ORACLE_GRID = [(-0.6, -0.5), (0.6, -0.5), (10.0, -0.5), (2.5, 0.3)]


@pytest.mark.parametrize("params", ORACLE_GRID)
@pytest.mark.parametrize("family, tol", [(PLAIN, 1e-12), (LOG, 1e-11)])
def test_oracle_agreement(params, family, tol):
    mv = moments(50, params, family)
    for k in (0, 1, 2, 5, 10, 50):
        ref = oracle_moment(k, params, family)
        assert rel_err(mv.values[k], ref) < tol, (k, mv.values[k], ref)


def test_moment_vector_is_read_only():
    mv = moments(5, (0.1, 0.2))
    assert isinstance(mv, MomentVector)
    with pytest.raises(ValueError):
        mv.values[0] = 1.0

"""Real trigonometric transforms and the Clenshaw-Curtis coefficient transform.

Conventions (1-based indices as in the defining sums, ``L = len(X)``)::

    dct_ii:  Y(k) = w(k) sum_s X(s) cos((k-1) pi (2s-1) / (2L)),
             w(1) = 1/sqrt(L), w(k) = sqrt(2/L) otherwise
    dst_i:   Y(k) = sum_s X(s) sin(k pi s / (L+1))
    idst_i:  X = 2/(L+1) * dst_i(Y)

All of them run in O(L log L) through :mod:`scipy.fft` (pocketfft handles
arbitrary lengths, with a constant that depends on the factorization of
the FFT length).
"""

import numpy as np
import scipy.fft

from .errors import UsageError

__all__ = [
    "cospi_ratio",
    "dct_ii",
    "idct_ii",
    "dst_i",
    "idst_i",
    "cc_coefficients",
]


def _as_samples(X, name):
    X = np.asarray(X, dtype=float)
    if X.ndim != 1 or X.size == 0:
        raise UsageError(f"{name} needs a non-empty 1-d sample vector")
    return X


def cospi_ratio(p, q):
    """cos(pi * p / q) for integer arrays p and scalar q.

    Evaluated as sin(pi (q - 2p) / (2q)) so that cos(pi p/q) and
    cos(pi (q-p)/q) are exact negatives of each other.
    """
    p = np.asarray(p)
    return np.sin(np.pi * (q - 2 * p) / (2.0 * q))


def dct_ii(X):
    """Orthonormal DCT-II."""
    X = _as_samples(X, "dct_ii")
    return scipy.fft.dct(X, type=2, norm="ortho")


def idct_ii(Y):
    """Inverse (= transpose) of :func:`dct_ii`."""
    Y = _as_samples(Y, "idct_ii")
    return scipy.fft.idct(Y, type=2, norm="ortho")


def dst_i(X):
    """Unnormalized DST-I, ``dst_i(dst_i(X)) == (L+1)/2 * X``."""
    X = _as_samples(X, "dst_i")
    # scipy's unnormalized DST-I carries an extra factor 2
    return 0.5 * scipy.fft.dst(X, type=1)


def idst_i(Y):
    """Inverse of :func:`dst_i`."""
    Y = _as_samples(Y, "idst_i")
    return scipy.fft.dst(Y, type=1) / (Y.size + 1)


def cc_coefficients(fvals):
    """Chebyshev T-coefficients of the interpolant through Clenshaw-Curtis samples.

    ``fvals[j]`` is f(cos(j pi / N)), j = 0..N.  The samples are mirrored
    into an even sequence of length 2N and sent through a real FFT::

        a_0 = g_0,  a_j = 2 g_j (0 < j < N),  a_N = g_N

    where g is the FFT of the mirrored samples divided by 2N.
    """
    fvals = np.asarray(fvals, dtype=float)
    if fvals.ndim != 1 or fvals.size < 2:
        raise UsageError("cc_coefficients needs at least 2 samples")
    N = fvals.size - 1
    mirrored = np.concatenate([fvals, fvals[-2:0:-1]]) / (2 * N)
    g = scipy.fft.rfft(mirrored).real
    a = 2.0 * g
    a[0] = g[0]
    a[N] = g[N]
    return a

"""Scalar special functions used by the closed-form wavelet expressions.

Gamma-function work is done in log space through :func:`log_gamma`; the
Dawson function is taken from :mod:`scipy.special`, while its derivatives,
the Hermite polynomials, complete Bell polynomials and the imaginary-axis
Scorer function are implemented here.
"""
from math import comb

import numpy as np
from scipy import special as _sp

from . import kernels
from .errors import ConvergenceError, DomainError, UnsupportedOrderError

HERMITE_MAX_ORDER = 64
DAWSON_MAX_ORDER = 30
BELL_MAX_ORDER = 20

# Upper limit of the Scorer integral; u**10 * exp(-u**3/3) < 1e-30 beyond it.
SCORER_U_MAX = 6.5
SCORER_MAX_ORDER = 10
SCORER_MAX_ABS_Y = 1.0e4
SCORER_TOL = 1e-10
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def log_gamma(x):
    """Natural log of the gamma function for positive real ``x``.

    Accepts scalars or arrays; raises :class:`DomainError` if any ``x <= 0``.
    """
    xa = np.asarray(x, dtype=float)
    if np.any(~(xa > 0)):
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    out = _sp.gammaln(xa)
    return float(out) if out.ndim == 0 else out


def gamma_ratio(x, n, r):
    """``Gamma(x + n r) / Gamma(x + r) / x**((n - 1) r)``, evaluated in log space.

    Tends to one as ``x`` grows for any fixed positive ``n`` and ``r``.
    """
    for name, v in (("x", x), ("n", n), ("r", r)):
        if not np.all(np.asarray(v, dtype=float) > 0):
            raise DomainError(f"gamma_ratio requires {name} > 0, got {v!r}")
    x = np.asarray(x, dtype=float)
    out = np.exp(log_gamma(x + n * r) - log_gamma(x + r) - (n - 1) * r * np.log(x))
    return float(out) if np.ndim(out) == 0 else out


def dawson(t):
    """Dawson's integral ``exp(-t**2) * int_0^t exp(u**2) du``."""
    t = np.asarray(t, dtype=float)
    # evaluate on |t| and restore the sign so oddness holds bit-for-bit
    out = np.sign(t) * _sp.dawsn(np.abs(t))
    return float(out) if out.ndim == 0 else out


def hermite(n, x):
    """Physicists' Hermite polynomial ``H_n(x)`` by three-term recurrence.

    ``x`` may be real or complex, scalar or array.
    """
    if n < 0 or n > HERMITE_MAX_ORDER or int(n) != n:
        raise UnsupportedOrderError(
            f"hermite order must be an integer in [0, {HERMITE_MAX_ORDER}], got {n}")
    x = np.asarray(x)
    h_prev = np.ones_like(x, dtype=np.result_type(x, float))
    if n == 0:
        return h_prev if x.ndim else h_prev[()]
    h = 2 * x * h_prev
    for k in range(1, int(n)):
        h_prev, h = h, 2 * x * h - 2 * k * h_prev
    return h if x.ndim else h[()]


def dawson_derivative(n, t):
    """``n``-th derivative of the Dawson function.

    Uses the Leibniz-rule closed form

        D^(n)(t) = (-1)^n [H_n(t) D(t)
                           - sum_{k=1}^n C(n,k) H_{n-k}(t) i^(k-1) H_{k-1}(i t)]

    which is exact but loses relative accuracy to cancellation once
    ``|t|`` is large compared with ``n``.
    """
    if n < 0 or n > DAWSON_MAX_ORDER or int(n) != n:
        raise UnsupportedOrderError(
            f"dawson_derivative order must be an integer in [0, {DAWSON_MAX_ORDER}], got {n}")
    n = int(n)
    t = np.asarray(t, dtype=float)
    d = dawson(t)
    if n == 0:
        return d
    acc = hermite(n, t) * d
    for k in range(1, n + 1):
        # i^(k-1) H_{k-1}(i t) is real: H_m(i t) carries the factor i^m
        poly = (1j ** (k - 1) * hermite(k - 1, 1j * t)).real
        acc = acc - comb(n, k) * hermite(n - k, t) * poly
    out = (-1) ** n * acc
    return float(out) if np.ndim(out) == 0 else out


def complete_bell(coeffs):
    """Complete Bell polynomial ``B_n(c_1, ..., c_n)`` with ``n = len(coeffs)``.

    Built from ``B_0 = 1`` and ``B_{m+1} = sum_k C(m, k) B_{m-k} c_{k+1}``,
    the moment-from-cumulant recursion.  Binomials are exact integers.
    """
    c = list(coeffs)
    n = len(c)
    if n < 1 or n > BELL_MAX_ORDER:
        raise UnsupportedOrderError(
            f"complete_bell needs 1 <= n <= {BELL_MAX_ORDER} coefficients, got {n}")
    if not all(np.isfinite(v) for v in c):
        raise DomainError("complete_bell coefficients must be finite")
    return complete_bell_sequence(c)[n]


def complete_bell_sequence(coeffs):
    """All of ``B_0 .. B_n`` for the given ``c_1 .. c_n``, as a list."""
    c = list(coeffs)
    b = [1 + 0j]
    for m in range(len(c)):
        b.append(sum(comb(m, k) * b[m - k] * c[k] for k in range(m + 1)))
    return b


def scorer_hi_imag(y, derivative=0):
    """Scorer function ``Hi`` (or its ``derivative``-th derivative) at ``i y``.

    ``Hi^(n)(i y) = (1/pi) int_0^inf u^n exp(-u^3/3 + i y u) du``, integrated
    with 16-point Gauss-Legendre panels on ``[0, SCORER_U_MAX]``.  The panel
    count is doubled until two successive estimates agree to
    ``SCORER_TOL``; :class:`ConvergenceError` if that never happens.
    """
    if derivative < 0 or derivative > SCORER_MAX_ORDER or int(derivative) != derivative:
        raise UnsupportedOrderError(
            f"scorer derivative order must be in [0, {SCORER_MAX_ORDER}], got {derivative}")
    ya = np.asarray(y, dtype=float).ravel()
    if ya.size and np.max(np.abs(ya)) > SCORER_MAX_ABS_Y:
        raise DomainError(f"|y| must not exceed {SCORER_MAX_ABS_Y:g}")
    out = np.empty(ya.size, dtype=complex)
    # group by oscillation rate so each group shares a panel count
    cycles = np.ceil(SCORER_U_MAX * (np.abs(ya) + 1.0) / np.pi).astype(int)
    levels = np.maximum(8, 2 ** np.ceil(np.log2(np.maximum(cycles, 1))).astype(int))
    for panels in np.unique(levels):
        idx = np.flatnonzero(levels == panels)
        yy = ya[idx]
        coarse = kernels.scorer_quadrature(yy, int(derivative), SCORER_U_MAX,
                                           int(panels), _GL_NODES, _GL_WEIGHTS)
        for _ in range(4):
            fine = kernels.scorer_quadrature(yy, int(derivative), SCORER_U_MAX,
                                             int(2 * panels), _GL_NODES, _GL_WEIGHTS)
            if np.all(np.abs(fine - coarse) < SCORER_TOL):
                break
            coarse, panels = fine, 2 * panels
        else:
            raise ConvergenceError("Scorer quadrature did not reach tolerance")
        out[idx] = fine
    if np.ndim(y) == 0:
        return complex(out[0])
    return out.reshape(np.shape(y))

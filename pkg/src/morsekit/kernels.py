"""Hot inner loops, each in a numba and a pure-numpy flavour.

The public names (``morse_bank``, ``wvd_lag_products``, ``scorer_quadrature``)
point at whichever implementation ``_accel.USE_NUMBA`` selects.  The
``*_numba`` / ``*_numpy`` variants stay importable for tests and benchmarks.
"""
import numpy as np

from ._accel import USE_NUMBA, njit, prange


# -- generalized Morse filter bank ------------------------------------------

@njit(parallel=True, cache=True)
def morse_bank_numba(omega, scales, beta, gamma, log_amp):
    ns = scales.shape[0]
    nw = omega.shape[0]
    out = np.zeros((ns, nw))
    for i in prange(ns):
        s = scales[i]
        for k in range(nw):
            w = omega[k]
            if w > 0.0:
                x = s * w
                out[i, k] = np.exp(log_amp + beta * np.log(x) - x ** gamma)
    return out


def morse_bank_numpy(omega, scales, beta, gamma, log_amp):
    omega = np.asarray(omega, dtype=float)
    scales = np.asarray(scales, dtype=float)
    out = np.zeros((scales.size, omega.size))
    pos = omega > 0
    x = scales[:, None] * omega[pos][None, :]
    out[:, pos] = np.exp(log_amp + beta * np.log(x) - x ** gamma)
    return out


# -- Wigner-Ville lag products ----------------------------------------------

@njit(parallel=True, cache=True)
def wvd_lag_products_numba(y, centers):
    n = y.shape[0]
    nr = centers.shape[0]
    out = np.empty((nr, n), dtype=np.complex128)
    for r in prange(nr):
        c = centers[r]
        for m in range(n):
            out[r, m] = y[(c + m) % n] * np.conj(y[(c - m) % n])
    return out


def wvd_lag_products_numpy(y, centers):
    y = np.asarray(y, dtype=complex)
    n = y.size
    m = np.arange(n)
    c = np.asarray(centers)[:, None]
    return y[(c + m) % n] * np.conj(y[(c - m) % n])


# -- Gauss-Legendre panels for the Scorer integral --------------------------

@njit(parallel=True, cache=True)
def scorer_quadrature_numba(y, order, u_max, n_panels, nodes, weights):
    ny = y.shape[0]
    out = np.empty(ny, dtype=np.complex128)
    h = u_max / n_panels
    nn = nodes.shape[0]
    for j in prange(ny):
        yj = y[j]
        re = 0.0
        im = 0.0
        for p in range(n_panels):
            left = p * h
            for q in range(nn):
                u = left + 0.5 * h * (nodes[q] + 1.0)
                g = weights[q] * u ** order * np.exp(-u * u * u / 3.0)
                re += g * np.cos(yj * u)
                im += g * np.sin(yj * u)
        out[j] = complex(re, im) * (0.5 * h / np.pi)
    return out


def scorer_quadrature_numpy(y, order, u_max, n_panels, nodes, weights):
    y = np.asarray(y, dtype=float)
    h = u_max / n_panels
    left = np.arange(n_panels) * h
    u = (left[:, None] + 0.5 * h * (nodes[None, :] + 1.0)).ravel()
    g = np.tile(weights, n_panels) * u ** order * np.exp(-u ** 3 / 3.0)
    out = np.empty(y.size, dtype=complex)
    # chunked to bound the (ny, nu) temporary
    chunk = max(1, 2 ** 22 // u.size)
    for i in range(0, y.size, chunk):
        out[i:i + chunk] = np.exp(1j * np.outer(y[i:i + chunk], u)) @ g
    return out * (0.5 * h / np.pi)


if USE_NUMBA:
    morse_bank = morse_bank_numba
    wvd_lag_products = wvd_lag_products_numba
    scorer_quadrature = scorer_quadrature_numba
else:
    morse_bank = morse_bank_numpy
    wvd_lag_products = wvd_lag_products_numpy
    scorer_quadrature = scorer_quadrature_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"

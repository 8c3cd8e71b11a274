"""Time-domain generalized Morse wavelets.

Closed forms exist for the Cauchy (gamma=1), analytic derivative-of-Gaussian
(gamma=2) and Airy (gamma=3) families.  Every other member, the
Hypergaussian gamma=4 family included, is produced by :func:`spectral_inverse`.
"""
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import AliasingWarning, DomainError, UnsupportedOrderError
from .morse import (MorseParams, SpectralWavelet, _log_amplitude, evaluate_spectrum,
                    moments, normalization, peak_frequency)
from .special import (DAWSON_MAX_ORDER, dawson_derivative, hermite, log_gamma,
                      scorer_hi_imag)

AIRY_MAX_BETA = 10
ALIAS_TOL = 1e-6


@dataclass
class SampledWavelet:
    """Complex samples ``psi(t)``; ``source`` records wavelet and method."""

    t: np.ndarray
    values: np.ndarray
    source: str = ""

    @property
    def dt(self) -> float:
        return float(self.t[1] - self.t[0])


def _amplitude(beta, gamma):
    # beta = 0 filters use amplitude 2 (supremum convention)
    return float(np.exp(_log_amplitude(MorseParams(beta, gamma))))


def cauchy_time(beta: float, t) -> SampledWavelet:
    """``psi_{beta,1}(t) = (e/beta)**beta Gamma(beta+1) / (pi (1 - i t)**(beta+1))``."""
    if not beta > 0:
        raise DomainError(f"Cauchy wavelet needs beta > 0, got {beta}")
    t = np.asarray(t, dtype=float)
    # principal branch; Re(1 - i t) = 1 > 0 so the cut is never crossed
    logc = beta * (1.0 - np.log(beta)) + log_gamma(beta + 1.0) - np.log(np.pi)
    vals = np.exp(logc - (beta + 1.0) * np.log(1.0 - 1j * t))
    return SampledWavelet(t=t, values=vals, source=f"cauchy(beta={beta!r}) closed")


def gaussian_family_time(beta: int, t) -> SampledWavelet:
    """Analytic derivative-of-Gaussian wavelet ``psi_{beta,2}`` for integer ``beta``.

    Real part from Hermite-Gaussians, imaginary part from Dawson derivatives.
    """
    if int(beta) != beta or beta < 0:
        raise DomainError(f"gamma=2 closed form needs integer beta >= 0, got {beta}")
    beta = int(beta)
    if beta > DAWSON_MAX_ORDER:
        raise UnsupportedOrderError(f"beta must be <= {DAWSON_MAX_ORDER}")
    t = np.asarray(t, dtype=float)
    u = 0.5 * t
    a = _amplitude(beta, 2.0)
    pref = a / (4.0 * np.sqrt(np.pi)) * (0.5j) ** beta
    vals = pref * (hermite(beta, u) * np.exp(-u * u)
                   + 1j * (-1) ** beta * (2.0 / np.sqrt(np.pi)) * dawson_derivative(beta, u))
    return SampledWavelet(t=t, values=np.asarray(vals, dtype=complex),
                          source=f"gaussian(beta={beta}) closed")


def airy_time(beta: int, t) -> SampledWavelet:
    """Airy wavelet ``psi_{beta,3}`` for integer ``beta``.

    Differentiating ``psi_{0,3}(t) = 3**(-1/3) Hi(i t 3**(-1/3))`` ``beta``
    times and scaling by ``a (-i)**beta / 2`` gives
    ``a/2 * 3**(-(beta+1)/3) * Hi^(beta)(i t 3**(-1/3))``.
    """
    if int(beta) != beta or beta < 0:
        raise DomainError(f"gamma=3 closed form needs integer beta >= 0, got {beta}")
    beta = int(beta)
    if beta > AIRY_MAX_BETA:
        raise UnsupportedOrderError(f"beta must be <= {AIRY_MAX_BETA}")
    t = np.asarray(t, dtype=float)
    c = 3.0 ** (-1.0 / 3.0)
    a = _amplitude(beta, 3.0)
    vals = 0.5 * a * c ** (beta + 1) * scorer_hi_imag(t * c, derivative=beta)
    return SampledWavelet(t=t, values=np.asarray(vals, dtype=complex),
                          source=f"airy(beta={beta}) closed")


CLOSED_FORMS = {1: cauchy_time, 2: gaussian_family_time, 3: airy_time}


def closed_form_time(p: MorseParams, t) -> SampledWavelet:
    """Dispatch to the closed form for ``gamma`` in {1, 2, 3}."""
    fn = CLOSED_FORMS.get(p.gamma)
    if fn is None:
        raise DomainError(
            f"no closed time-domain form for gamma={p.gamma}; use the spectral method")
    return fn(p.beta, t)


def analytic_filter_apply(x):
    """Analytic signal ``x_+`` with spectrum ``2 U(omega) X(omega)``.

    DC (and Nyquist, for even lengths) keep weight 1 so ``Re(x_+) == x``.
    """
    x = np.asarray(x)
    n = x.shape[-1]
    h = np.zeros(n)
    h[0] = 1.0
    if n % 2 == 0:
        h[n // 2] = 1.0
        h[1:n // 2] = 2.0
    else:
        h[1:(n + 1) // 2] = 2.0
    return np.fft.ifft(np.fft.fft(x, axis=-1) * h, axis=-1)


def time_grid(n: int, dt: float) -> np.ndarray:
    """``n`` samples at spacing ``dt`` with ``t = 0`` at index ``n // 2``."""
    return (np.arange(n) - n // 2) * dt


def spectral_inverse(w: SpectralWavelet, n_time: int) -> SampledWavelet:
    """Inverse Fourier transform of a one-sided sampled spectrum.

    ``w.omega`` must be ``0, dw, 2 dw, ...``; bins beyond ``n_time // 2`` are
    discarded.  The result lives on :func:`time_grid` with
    ``dt = 2 pi / (n_time dw)`` and is periodic with period ``n_time dt``.
    """
    omega = np.asarray(w.omega, dtype=float)
    if omega[0] != 0:
        raise DomainError("spectral grid must start at omega = 0")
    dw = w.d_omega
    half = min(len(omega), n_time // 2)
    spec = np.zeros(n_time, dtype=complex)
    spec[:half] = w.values[:half]
    dt = 2 * np.pi / (n_time * dw)
    psi = np.fft.ifft(spec) * (n_time * dw / (2 * np.pi))
    psi = np.fft.fftshift(psi) if n_time % 2 == 0 else np.roll(psi, n_time // 2)
    peak = np.max(np.abs(psi))
    edge = max(abs(psi[0]), abs(psi[-1]))
    if peak > 0 and edge > ALIAS_TOL * peak:
        warnings.warn(f"time-domain wavelet not decayed at window edge "
                      f"({edge / peak:.2e} of peak); periodic aliasing likely",
                      AliasingWarning, stacklevel=2)
    return SampledWavelet(t=time_grid(n_time, dt), values=psi,
                          source=f"{w.source} spectral")


def morse_time(p: MorseParams, n_time: int, dt: float) -> SampledWavelet:
    """Sample ``psi_{beta,gamma}`` on :func:`time_grid` by spectral inversion."""
    dw = 2 * np.pi / (n_time * dt)
    omega = np.arange(n_time // 2 + 1) * dw
    return spectral_inverse(evaluate_spectrum(p, omega), n_time)


def decay_envelope(p: MorseParams, t):
    """Leading large-``|t|`` behaviour ``(a/2pi) Gamma(beta+1) / (-i t)**(beta+1)``.

    Valid once ``|t| omega_peak`` is well above 20.  For ``t > 0`` this is
    ``(a/2pi) e^{i pi (beta+1)/2} Gamma(beta+1) / t**(beta+1)``.
    """
    t = np.asarray(t, dtype=float)
    a = normalization(p)
    val = a / (2 * np.pi) * np.exp(log_gamma(p.beta + 1.0) - (p.beta + 1.0) * np.log(-1j * t))
    return complex(val) if val.ndim == 0 else val


def sinusoid_limit_check(p: MorseParams, n_max: int):
    """``(M_n / M_0) / omega_peak**n`` for ``n = 0..n_max``; each tends to 1 as beta grows."""
    m = moments(p, n_max).moments
    wp = peak_frequency(p)
    n = np.arange(n_max + 1)
    return np.exp(np.log(m / m[0]) - n * np.log(wp))

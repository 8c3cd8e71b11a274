"""Wigner-Ville distributions and instantaneous frequency of sampled wavelets."""
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .closed_forms import SampledWavelet
from .errors import AliasingWarning, DomainError

DECAY_TOL = 1e-6
IF_MASK = 1e-8


@dataclass
class WignerVille:
    """``values[j, k]`` is the distribution at ``times[j]``, ``frequencies[k]``.

    Normalized so that ``sum(values) * dt * d_omega / (2 pi)`` is the
    sampled energy ``sum(|psi|^2) dt`` when every sample is a center.
    """

    times: np.ndarray
    frequencies: np.ndarray
    values: np.ndarray
    imag_residue: float = 0.0

    @property
    def d_omega(self) -> float:
        return float(self.frequencies[1] - self.frequencies[0])

    def frequency_marginal(self, dt: float) -> np.ndarray:
        """``int WV dt`` on the frequency grid (trapezoid-free sum over centers)."""
        return self.values.sum(axis=0) * dt


def spectral_interpolate(y, factor: int):
    """Band-limited upsampling of ``y`` by an integer ``factor`` via zero padding."""
    y = np.asarray(y, dtype=complex)
    n = y.size
    Y = np.fft.fft(y)
    Z = np.zeros(n * factor, dtype=complex)
    h = n // 2
    Z[:h] = Y[:h]
    Z[-(n - h):] = Y[h:]
    if n % 2 == 0:
        # split the Nyquist bin so real inputs stay real
        Z[h] = 0.5 * Y[h]
        Z[-h] = 0.5 * Y[h]
    return np.fft.ifft(Z) * factor


def _check_decay(values):
    peak = np.max(np.abs(values))
    edge = max(abs(values[0]), abs(values[-1]))
    if peak > 0 and edge > DECAY_TOL * peak:
        warnings.warn(f"wavelet not decayed at grid ends ({edge / peak:.2e} of peak); "
                      "the distribution wraps around", AliasingWarning, stacklevel=3)


def wigner_ville(w: SampledWavelet, oversample: int = 2, time_step: int = 1,
                 t_max: Optional[float] = None) -> WignerVille:
    """Discrete Wigner-Ville distribution of a sampled wavelet.

    Half-sample shifts come from ``oversample``-fold spectral interpolation,
    lag products are taken circularly and Fourier transformed over lag.
    Centers are every ``time_step``-th original sample, optionally limited
    to ``|t| <= t_max`` so that long, well-decayed grids stay affordable.
    The frequency axis is ascending and spans ``+-oversample * pi / (2 dt)``.
    """
    if int(oversample) != oversample or oversample < 2:
        raise DomainError("oversample must be an integer >= 2")
    if int(time_step) != time_step or time_step < 1:
        raise DomainError("time_step must be a positive integer")
    oversample, time_step = int(oversample), int(time_step)
    y = np.asarray(w.values, dtype=complex)
    if y.size < 4:
        raise DomainError("need at least 4 samples")
    _check_decay(y)
    dt = w.dt
    h = dt / oversample
    y2 = spectral_interpolate(y, oversample)
    m_len = y2.size
    idx = np.arange(0, y.size, time_step)
    if t_max is not None:
        idx = idx[np.abs(np.asarray(w.t)[idx]) <= t_max]
        if idx.size == 0:
            raise DomainError(f"no sample centers with |t| <= {t_max}")
    centers = idx * oversample
    r = kernels.wvd_lag_products(y2, centers.astype(np.int64))
    spec = np.fft.fftshift(np.fft.fft(r, axis=1), axes=1) * (2 * h)
    residue = float(np.max(np.abs(spec.imag)) / max(np.max(np.abs(spec.real)), 1e-300))
    freqs = 2 * np.pi * np.fft.fftshift(np.fft.fftfreq(m_len, d=2 * h))
    return WignerVille(times=np.asarray(w.t)[idx].copy(), frequencies=freqs,
                       values=spec.real, imag_residue=residue)


def spectral_derivative(y, dt: float):
    """Derivative of periodic samples ``y`` by multiplication with ``i omega``."""
    y = np.asarray(y, dtype=complex)
    n = y.size
    omega = 2 * np.pi * np.fft.fftfreq(n, d=dt)
    if n % 2 == 0:
        omega[n // 2] = 0.0  # Nyquist mode has no well-defined derivative
    return np.fft.ifft(np.fft.fft(y) * 1j * omega)


def instantaneous_frequency(w: SampledWavelet) -> np.ndarray:
    """``Im(psi'/psi)``, not-a-number where ``|psi| <= 1e-8 max|psi|``."""
    y = np.asarray(w.values, dtype=complex)
    dy = spectral_derivative(y, w.dt)
    mag = np.abs(y)
    ok = mag > IF_MASK * mag.max()
    out = np.full(y.size, np.nan)
    out[ok] = (dy[ok] / y[ok]).imag
    return out


def sampled_curvature(w: SampledWavelet) -> float:
    """Nondimensional curvature of the instantaneous frequency at ``t = 0``.

    ``omega''(0) / K2**1.5`` where ``K2 = -(ln|psi|)''(0)``.  Both come from
    central differences of the spectrally computed ``psi'/psi``.
    """
    t = np.asarray(w.t)
    c = int(np.argmin(np.abs(t)))
    if t[c] != 0 or c < 1 or c + 1 >= t.size:
        raise DomainError("time grid must contain t = 0 away from the ends")
    y = np.asarray(w.values, dtype=complex)
    dt = w.dt
    # r = d/dt ln psi = (ln|psi|)' + i omega(t)
    r = spectral_derivative(y, dt)[c - 1:c + 2] / y[c - 1:c + 2]
    k2 = -((r[2] - r[0]) / (2 * dt)).real
    if not k2 > 0:
        raise DomainError("log-amplitude is not concave at t = 0")
    omega_dd = ((r[2] - 2 * r[1] + r[0]) / dt ** 2).imag
    return float(omega_dd / k2 ** 1.5)

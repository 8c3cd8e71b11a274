"""Continuous analytic wavelet transform and its scale/frequency bookkeeping.

Coefficients follow the 1/s-normalized definition

    W(t, s) = (1/2pi) int Psi*(s omega) X(omega) exp(i omega t) d omega,

realized with the FFT.  Every wavelet here has ``Psi(omega_peak) = 2``, so
at the peak scale a real unit cosine comes back with unit modulus and the
analytic exponential ``exp(i omega t)`` with modulus 2.
"""
import enum
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.integrate import trapezoid as _trapezoid

from . import kernels
from ._accel import thread_cap
from .errors import DomainError, ScaleOutOfBandError, TruncationBiasWarning
from .morse import MorseParams, _log_amplitude

MIN_SIGNAL_LENGTH = 16
BOUNDARIES = ("zero", "periodic", "mirror")
# relative |W|**2 at a scale-grid edge above which the energy-mean scale is biased
TRUNCATION_TOL = 1e-6


class FrequencyConvention(enum.Enum):
    """Which wavelet frequency a scale is divided into."""

    PEAK = "peak"
    ENERGY = "energy"
    INSTANTANEOUS = "instantaneous"

    def wavelet_frequency(self, wavelet) -> float:
        if self is FrequencyConvention.PEAK:
            return float(wavelet.peak_frequency)
        if self is FrequencyConvention.ENERGY:
            return float(wavelet.energy_frequency)
        return float(wavelet.central_instantaneous_frequency)


def _convention(conv) -> FrequencyConvention:
    return conv if isinstance(conv, FrequencyConvention) else FrequencyConvention(conv)


def scale_to_frequency(s, wavelet, conv=FrequencyConvention.PEAK):
    """Radian frequency ``omega_conv / s``."""
    s = np.asarray(s, dtype=float)
    if np.any(~(s > 0)):
        raise DomainError("scales must be positive")
    out = _convention(conv).wavelet_frequency(wavelet) / s
    return float(out) if out.ndim == 0 else out


def frequency_to_scale(omega, wavelet, conv=FrequencyConvention.PEAK):
    """Inverse of :func:`scale_to_frequency`."""
    omega = np.asarray(omega, dtype=float)
    if np.any(~(omega > 0)):
        raise DomainError("frequencies must be positive")
    out = _convention(conv).wavelet_frequency(wavelet) / omega
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class ScaleGrid:
    """Log-uniform scales ``s_k = s_0 2**(k / voices)``."""

    scales: np.ndarray
    voices: float

    def __post_init__(self):
        s = np.asarray(self.scales, dtype=float)
        if s.ndim != 1 or s.size == 0 or np.any(~(s > 0)):
            raise DomainError("scales must be a non-empty 1-D array of positive values")
        if s.size > 1 and np.any(np.diff(s) <= 0):
            raise DomainError("scales must be strictly increasing")
        object.__setattr__(self, "scales", s)

    @classmethod
    def log_uniform(cls, s_min: float, s_max: float, voices: float = 32) -> "ScaleGrid":
        """Scales from ``s_min`` up to (at most) ``s_max``."""
        if not (0 < s_min <= s_max) or not voices > 0:
            raise DomainError("need 0 < s_min <= s_max and voices > 0")
        n = int(np.floor(voices * np.log2(s_max / s_min) + 1e-9)) + 1
        return cls(scales=s_min * 2.0 ** (np.arange(n) / voices), voices=float(voices))

    @classmethod
    def from_band(cls, wavelet, f_min: float, f_max: float, voices: float = 32,
                  conv=FrequencyConvention.PEAK) -> "ScaleGrid":
        """Scales whose ``conv`` frequencies span radian band ``[f_min, f_max]``."""
        if not (0 < f_min <= f_max):
            raise DomainError("need 0 < f_min <= f_max")
        return cls.log_uniform(frequency_to_scale(f_max, wavelet, conv),
                               frequency_to_scale(f_min, wavelet, conv), voices)

    @property
    def ratio(self) -> float:
        return 2.0 ** (1.0 / self.voices)

    def __len__(self):
        return self.scales.size


@dataclass
class Scalogram:
    """Coefficients ``W[k, j] = W(times[j], scales[k])``."""

    times: np.ndarray
    scales: np.ndarray
    coefficients: np.ndarray
    convention: FrequencyConvention = FrequencyConvention.PEAK
    boundary: str = "periodic"
    time_derivative: Optional[np.ndarray] = None
    wavelet: str = ""

    def __post_init__(self):
        if self.coefficients.shape != (self.scales.size, self.times.size):
            raise DomainError("coefficient matrix does not match the grids")

    @property
    def phase_rate(self) -> np.ndarray:
        """``Im(dW/dt / W)``; not-a-number where ``|W|`` is numerically zero."""
        if self.time_derivative is None:
            raise DomainError("scalogram was computed without its time derivative")
        w = self.coefficients
        mag = np.abs(w)
        ok = mag > 1e-12 * np.max(mag, initial=0.0)
        out = np.full(w.shape, np.nan)
        out[ok] = (self.time_derivative[ok] / w[ok]).imag
        return out

    def argmax_scale_index(self) -> np.ndarray:
        """Per-time index of the scale with the largest ``|W|``."""
        return np.argmax(np.abs(self.coefficients), axis=0)


@dataclass
class ModulatedSignal:
    """Analytic signal ``a(t) exp(i phi(t))`` with its derived rates.

    ``frequency`` defaults to a central-difference derivative of ``phase``
    when not given analytically.
    """

    t: np.ndarray
    amplitude: np.ndarray
    phase: np.ndarray
    frequency: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        self.amplitude = np.asarray(self.amplitude, dtype=float)
        self.phase = np.asarray(self.phase, dtype=float)
        if np.any(~(self.amplitude > 0)):
            raise DomainError("amplitude must be positive")
        if self.frequency is None:
            self.frequency = np.gradient(self.phase, self.t)
        self.frequency = np.asarray(self.frequency, dtype=float)

    @property
    def bandwidth(self) -> np.ndarray:
        """Instantaneous bandwidth ``(ln a)'``."""
        return np.gradient(np.log(self.amplitude), self.t)

    @property
    def analytic(self) -> np.ndarray:
        return self.amplitude * np.exp(1j * self.phase)

    @property
    def real(self) -> np.ndarray:
        return self.amplitude * np.cos(self.phase)


# -- transform ---------------------------------------------------------------

def _filter_bank(wavelet, omega, scales):
    """Rows ``Psi(s_k omega)`` for signed FFT frequencies ``omega``."""
    if isinstance(wavelet, MorseParams):
        if not wavelet.is_wavelet:
            raise DomainError("the transform needs a Morse wavelet with beta, gamma > 0")
        return kernels.morse_bank(omega, scales, float(wavelet.beta), float(wavelet.gamma),
                                  float(_log_amplitude(wavelet)))
    return np.stack([np.asarray(wavelet.spectrum(s * omega), dtype=float) for s in scales])


def _extend(x, boundary):
    n = x.size
    if boundary == "periodic":
        return x, 0
    if boundary == "zero":
        return np.concatenate([np.zeros(n, x.dtype), x, np.zeros(n, x.dtype)]), n
    return np.pad(x, n, mode="symmetric"), n


def _workers(requested):
    if requested is not None:
        return max(1, int(requested))
    cap = thread_cap()
    return cap if cap is not None else min(4, os.cpu_count() or 1)


def cwt(x, wavelet, grid: ScaleGrid, boundary: str = "periodic", dt: float = 1.0,
        t0: float = 0.0, convention=FrequencyConvention.PEAK, derivative: bool = True,
        workers: Optional[int] = None) -> Scalogram:
    """Wavelet transform of a uniformly sampled real or complex signal.

    ``boundary`` is ``"periodic"`` (no extension), ``"zero"`` or ``"mirror"``
    (the record is extended by its own length on each side).  Scales are
    processed in independent blocks on up to ``workers`` threads
    (default: ``MORSEKIT_THREADS`` or the CPU count, at most 4).
    """
    x = np.asarray(x)
    if x.ndim != 1 or x.size < MIN_SIGNAL_LENGTH:
        raise DomainError(f"signal must be 1-D with at least {MIN_SIGNAL_LENGTH} samples")
    if not np.all(np.isfinite(x)):
        raise DomainError("signal contains non-finite samples")
    if boundary not in BOUNDARIES:
        raise DomainError(f"boundary must be one of {BOUNDARIES}, got {boundary!r}")
    if not dt > 0:
        raise DomainError("dt must be positive")
    nyquist = np.pi / dt
    if wavelet.peak_frequency / grid.scales[0] > nyquist * (1 + 1e-12):
        raise ScaleOutOfBandError(
            f"smallest scale {grid.scales[0]:.6g} puts the wavelet peak at "
            f"{wavelet.peak_frequency / grid.scales[0]:.6g} rad/unit, above Nyquist {nyquist:.6g}")
    n = x.size
    xe, off = _extend(x, boundary)
    ne = xe.size
    X = np.fft.fft(xe)
    omega = 2 * np.pi * np.fft.fftfreq(ne, d=dt)
    scales = grid.scales
    coef = np.empty((scales.size, n), dtype=complex)
    deriv = np.empty((scales.size, n), dtype=complex) if derivative else None

    def block(lo, hi):
        # the spectra are real, so conjugation is a no-op
        bank = _filter_bank(wavelet, omega, scales[lo:hi]) * X
        coef[lo:hi] = np.fft.ifft(bank, axis=1)[:, off:off + n]
        if derivative:
            deriv[lo:hi] = np.fft.ifft(bank * (1j * omega), axis=1)[:, off:off + n]

    step = max(1, min(64, 2 ** 22 // ne))
    bounds = [(i, min(i + step, scales.size)) for i in range(0, scales.size, step)]
    nw = min(_workers(workers), len(bounds))
    if nw <= 1:
        for b in bounds:
            block(*b)
    else:
        with ThreadPoolExecutor(max_workers=nw) as pool:
            list(pool.map(lambda b: block(*b), bounds))
    times = t0 + dt * np.arange(n)
    label = wavelet.label() if hasattr(wavelet, "label") else str(wavelet)
    return Scalogram(times=times, scales=scales.copy(), coefficients=coef,
                     convention=_convention(convention), boundary=boundary,
                     time_derivative=deriv, wavelet=label)


def energy_mean_scale(sg: Scalogram, t_index: int) -> float:
    """``int s |W|^2 ds / int |W|^2 ds`` at one time, trapezoidal in ``s``.

    Warns with :class:`TruncationBiasWarning` when the energy has not decayed
    at either end of the scale grid.
    """
    e = np.abs(sg.coefficients[:, t_index]) ** 2
    s = sg.scales
    if not np.any(e > 0):
        raise DomainError("no scalogram energy at this time")
    if s.size == 1:
        return float(s[0])
    peak = e.max()
    if e[0] > TRUNCATION_TOL * peak or e[-1] > TRUNCATION_TOL * peak:
        warnings.warn("scale grid truncates the scalogram energy; energy-mean scale is biased",
                      TruncationBiasWarning, stacklevel=2)
    return float(_trapezoid(s * e, s) / _trapezoid(e, s))


def predict_ridge_response(sig: ModulatedSignal, wavelet) -> np.ndarray:
    """Transform of ``sig`` at the moving scale ``s(t) = omega_peak / omega(t)``.

    Second- and third-order expansion in the signal's amplitude and
    frequency modulation, weighted by the wavelet's normalized derivatives
    at its peak; higher-order terms are dropped.  Derivatives of ``a`` and
    ``omega`` are central differences on the sample grid.
    """
    w = sig.frequency
    if np.any(~(w > 0)):
        raise DomainError("instantaneous frequency must be positive for a ridge prediction")
    d = wavelet.normalized_derivatives(3)
    p2, p3 = np.conj(d[2]), np.conj(d[3])
    t = sig.t
    a = sig.amplitude
    a1 = np.gradient(a, t)
    a2 = np.gradient(a1, t)
    a3 = np.gradient(a2, t)
    w1 = np.gradient(w, t)
    w2 = np.gradient(w1, t)
    second = -0.5 * (a2 / a + 1j * w1) * p2 / w ** 2
    third = (1j / 6.0) * (a3 / a + 3j * (a1 / a) * w1 + 1j * w2) * p3 / w ** 3
    return sig.analytic * (1.0 + second + third)


# -- chirp demonstration -----------------------------------------------------

CHIRP_DURATION = 1024.0
CHIRP_RATE = 1.0 / 256.0
CHIRP_ENVELOPE = 160.0
CHIRP_DT = 1.0


def make_chirp(duration: float = CHIRP_DURATION, rate: float = CHIRP_RATE,
               envelope_width: float = CHIRP_ENVELOPE, dt: float = CHIRP_DT):
    """Gaussian-enveloped linear chirp ``exp(-t^2/2 sigma^2) cos(rate t^2 / 2)``.

    Samples ``t = -duration/2, ..., duration/2 - dt``.  Returns the real
    signal and a :class:`ModulatedSignal` whose ``frequency`` is the phase
    derivative ``rate t`` (the frequency of one of the two chirp components,
    not of their sum).
    """
    if not rate > 0:
        raise DomainError("chirp rate must be positive")
    if not (duration > 0 and envelope_width > 0 and dt > 0):
        raise DomainError("duration, envelope width and dt must be positive")
    n = int(round(duration / dt))
    t = (np.arange(n) - n // 2) * dt
    env = np.exp(-0.5 * (t / envelope_width) ** 2)
    phase = 0.5 * rate * t * t
    desc = ModulatedSignal(t=t, amplitude=env, phase=phase, frequency=rate * t)
    return env * np.cos(phase), desc


def interference_metric(sg: Scalogram, floor: float = 0.0) -> float:
    """Ripple of ``|W|`` along the per-time argmax-scale curve.

    ``std(second differences) / mean`` of the ridge magnitude.  Times whose
    ridge magnitude is below ``floor`` times the maximum are excluded.
    """
    if sg.times.size < 8:
        raise DomainError("interference metric needs at least 8 time points")
    mag = np.abs(sg.coefficients)
    ridge = mag[sg.argmax_scale_index(), np.arange(sg.times.size)]
    keep = ridge >= floor * ridge.max()
    # longest contiguous run above the floor keeps the differences local
    idx = np.flatnonzero(keep)
    if idx.size < 8:
        raise DomainError("fewer than 8 ridge samples above the floor")
    runs = np.split(idx, np.flatnonzero(np.diff(idx) > 1) + 1)
    seg = ridge[max(runs, key=len)]
    if seg.size < 8:
        raise DomainError("fewer than 8 contiguous ridge samples above the floor")
    mean = seg.mean()
    if mean == 0:
        raise DomainError("ridge magnitude is identically zero")
    return float(np.std(np.diff(seg, 2)) / mean)

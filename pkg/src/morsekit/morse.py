"""Generalized Morse wavelets: frequency-domain form and closed-form properties.

The wavelet with parameters ``(beta, gamma)`` is

    Psi(omega) = U(omega) a * omega**beta * exp(-omega**gamma),
    a = 2 (e gamma / beta)**(beta / gamma),

so that ``Psi`` peaks at ``omega = (beta/gamma)**(1/gamma)`` with value 2.
All gamma-function expressions are evaluated in log space, which keeps
``beta`` in the hundreds well clear of overflow.
"""
from dataclasses import dataclass, field
from math import comb, factorial, isfinite
from typing import List, Optional

import numpy as np

from . import kernels
from .errors import DivergenceError, DomainError, UnsupportedOrderError
from .special import complete_bell, complete_bell_sequence, log_gamma

MAX_MOMENT_ORDER = 20
MAX_DERIVATIVE_ORDER = 10

_LOG2 = np.log(2.0)
_LOG2PI = np.log(2 * np.pi)


@dataclass(frozen=True)
class MorseParams:
    """One generalized Morse wavelet (or, for ``beta == 0`` or ``gamma == 0``, filter)."""

    beta: float
    gamma: float

    def __post_init__(self):
        if not (isfinite(self.beta) and isfinite(self.gamma)):
            raise DomainError("beta and gamma must be finite")
        if self.beta < 0 or self.gamma < 0:
            raise DomainError(f"beta and gamma must be >= 0, got ({self.beta}, {self.gamma})")

    @property
    def is_wavelet(self) -> bool:
        return self.beta > 0 and self.gamma > 0

    @property
    def duration(self) -> float:
        return float(np.sqrt(self.beta * self.gamma))

    # wavelet-protocol members shared with MorletParams
    @property
    def peak_frequency(self) -> float:
        return peak_frequency(self)

    @property
    def energy_frequency(self) -> float:
        return frequency_measures(self)[0]

    @property
    def central_instantaneous_frequency(self) -> float:
        return frequency_measures(self)[1]

    def spectrum(self, omega):
        return _spectrum_values(self, np.asarray(omega, dtype=float))

    def normalized_derivatives(self, n_max: int):
        return frequency_derivatives_at_peak(self, n_max)

    def label(self) -> str:
        return f"morse(beta={self.beta!r}, gamma={self.gamma!r})"


@dataclass
class SpectralWavelet:
    """Samples of ``Psi(s * omega)`` on a uniform radian-frequency grid."""

    omega: np.ndarray
    values: np.ndarray
    scale: float = 1.0
    source: str = ""

    @property
    def d_omega(self) -> float:
        return float(self.omega[1] - self.omega[0])


@dataclass
class MomentSet:
    """Frequency-domain moments ``M_n``, energy moments ``N_n`` and cumulants ``K_n``."""

    order: int
    moments: np.ndarray
    energy_moments: np.ndarray
    cumulants: np.ndarray


@dataclass
class PropertyReport:
    """Scalar diagnostics of one wavelet.

    Fields that do not exist for a given wavelet (e.g. the time spread when
    its defining integral diverges) are ``None`` and explained in ``notes``.
    """

    wavelet: str
    peak_frequency: float
    energy_frequency: float
    central_instantaneous_frequency: float
    duration: float
    demodulate_skewness_imag: float
    demodulate_kurtosis: float
    frequency_curvature: float
    heisenberg_area: Optional[float]
    time_spread: Optional[float]
    freq_spread: float
    admissibility: float
    beta: Optional[float] = None
    gamma: Optional[float] = None
    morlet_carrier: Optional[float] = None
    notes: List[str] = field(default_factory=list)


def _require_wavelet(p: MorseParams):
    if not p.is_wavelet:
        raise DomainError(
            f"operation requires beta > 0 and gamma > 0, got ({p.beta}, {p.gamma})")


def _log_amplitude(p: MorseParams) -> float:
    """log of the spectral amplitude, including the filter conventions.

    For ``beta == 0`` the filter is scaled so its supremum is 2, which
    for ``gamma == 0`` absorbs the constant ``exp(-1)`` as well.
    """
    if p.beta == 0 or p.gamma == 0:
        return _LOG2 + (1.0 if p.gamma == 0 else 0.0)
    return _LOG2 + (p.beta / p.gamma) * (1.0 + np.log(p.gamma / p.beta))


def normalization(p: MorseParams) -> float:
    """``a = 2 (e gamma / beta)**(beta/gamma)``."""
    if p.beta <= 0:
        raise DomainError("normalization is undefined for beta = 0; the filter uses amplitude 2")
    if p.gamma <= 0:
        raise DomainError("normalization is undefined for gamma = 0")
    return float(np.exp(_log_amplitude(p)))


def peak_frequency(p: MorseParams) -> float:
    _require_wavelet(p)
    return float((p.beta / p.gamma) ** (1.0 / p.gamma))


def _spectrum_values(p: MorseParams, omega, scale=1.0):
    flat = np.atleast_1d(omega).ravel()
    vals = kernels.morse_bank(flat, np.array([float(scale)]), float(p.beta),
                              float(p.gamma), float(_log_amplitude(p)))[0]
    if np.ndim(omega) == 0:
        return float(vals[0])
    return vals.reshape(np.shape(omega))


def evaluate_spectrum(p: MorseParams, omega_grid, s: float = 1.0) -> SpectralWavelet:
    """Sample ``Psi(s omega)``; identically zero for ``omega <= 0``.

    The zero-frequency bin is zero for wavelets; for ``beta == 0`` filters it
    holds half the positive-side limit (the Heaviside midpoint).
    """
    omega = np.asarray(omega_grid, dtype=float)
    vals = _spectrum_values(p, omega, s)
    if p.beta == 0:
        # limit as omega -> 0+ is 2 for every beta = 0 filter
        vals = np.where(omega == 0, 1.0, vals)
    return SpectralWavelet(omega=omega, values=vals, scale=float(s), source=p.label())


def _log_moment(beta, gamma, n):
    """log M_n for the (beta, gamma) wavelet."""
    la = _LOG2 + (beta / gamma) * (1.0 + np.log(gamma / beta))
    return la - _LOG2PI - np.log(gamma) + log_gamma((beta + 1 + n) / gamma)


def cumulants_from_moments(m):
    """Formal cumulants ``K_0..K_n`` from moments ``M_0..M_n`` (``K_0 = ln M_0``)."""
    m = np.asarray(m)
    r = m / m[0]
    k = np.zeros(len(m), dtype=np.result_type(m, float))
    k[0] = np.log(m[0])
    for n in range(1, len(m)):
        k[n] = r[n] - sum(comb(n - 1, j - 1) * k[j] * r[n - j] for j in range(1, n))
    return k


def moments_from_cumulants(k):
    """Inverse of :func:`cumulants_from_moments` via complete Bell polynomials."""
    k = np.asarray(k)
    b = complete_bell_sequence(list(k[1:]))
    out = np.exp(k[0]) * np.array(b)
    return out.real if not np.iscomplexobj(k) else out


def moments(p: MorseParams, n_max: int) -> MomentSet:
    _require_wavelet(p)
    if n_max < 0 or n_max > MAX_MOMENT_ORDER:
        raise UnsupportedOrderError(f"n_max must be in [0, {MAX_MOMENT_ORDER}], got {n_max}")
    b, g = p.beta, p.gamma
    n = np.arange(n_max + 1)
    m = np.exp([_log_moment(b, g, k) for k in n])
    # N_n = 2 * 2**(-(1+n)/gamma) * M_n(2 beta, gamma)
    en = np.exp([_LOG2 - (1 + k) / g * _LOG2 + _log_moment(2 * b, g, k) for k in n])
    return MomentSet(order=n_max, moments=m, energy_moments=en,
                     cumulants=cumulants_from_moments(m))


def frequency_measures(p: MorseParams):
    """Energy frequency, central instantaneous frequency and its curvature.

    Returns ``(omega_tilde, omega_breve_0, curvature)`` with curvature
    ``-K_3 / K_2**1.5``; positive values mean convex wavelets.
    """
    _require_wavelet(p)
    b, g = p.beta, p.gamma
    energy = np.exp(-_LOG2 / g + log_gamma((2 * b + 2) / g) - log_gamma((2 * b + 1) / g))
    inst = np.exp(log_gamma((b + 2) / g) - log_gamma((b + 1) / g))
    k = moments(p, 3).cumulants
    return float(energy), float(inst), float(-k[3] / k[2] ** 1.5)


def demodulate_stats(p: MorseParams):
    """Duration ``P``, demodulate skewness (purely imaginary) and kurtosis."""
    _require_wavelet(p)
    P = np.sqrt(p.beta * p.gamma)
    skew = (p.gamma - 3.0) / P
    return float(P), 1j * skew, float(3.0 - skew ** 2 - 2.0 / P ** 2)


def log_derivative_terms(p: MorseParams, omega: float, n_max: int):
    """``omega**n d^n/d omega^n ln Psi`` for ``n = 1..n_max``."""
    return _log_derivative_terms(p, omega ** p.gamma, n_max)


def _log_derivative_terms(p, omega_to_gamma, n_max):
    out = []
    for n in range(1, n_max + 1):
        falling = np.prod([p.gamma - q for q in range(n)])
        out.append((-1) ** (n - 1) * factorial(n - 1) * p.beta - omega_to_gamma * falling)
    return out


def frequency_derivatives_at_peak(p: MorseParams, n_max: int):
    """Normalized derivatives ``omega**n Psi^(n) / Psi`` at the peak, ``n = 0..n_max``.

    Entry 0 is 1 and entry 1 is exactly 0.
    """
    _require_wavelet(p)
    if n_max < 1 or n_max > MAX_DERIVATIVE_ORDER:
        raise UnsupportedOrderError(
            f"n_max must be in [1, {MAX_DERIVATIVE_ORDER}], got {n_max}")
    # omega_peak**gamma == beta/gamma exactly; the first term then cancels
    terms = _log_derivative_terms(p, p.beta / p.gamma, n_max)
    terms[0] = 0.0
    out = [1.0 + 0j] + [complete_bell(terms[:n]) for n in range(1, n_max + 1)]
    return np.array(out)


def _log_j(b, g):
    """log of (1/2pi) int_0^inf w**b exp(-2 w**g) dw."""
    if b <= -1:
        raise DivergenceError("integral diverges at omega = 0")
    return -_LOG2PI - np.log(g) - (b + 1) / g * _LOG2 + log_gamma((b + 1) / g)


def concentration(p: MorseParams):
    """Time spread, frequency spread and Heisenberg area (all dimensionless).

    The time spread needs ``int |Psi'|**2`` to converge at the origin,
    which holds only for ``beta > 1/2``; :class:`DivergenceError` otherwise.
    """
    _require_wavelet(p)
    b, g = p.beta, p.gamma
    wp = peak_frequency(p)
    sw = _freq_spread(p)
    if 2 * (b - 1) <= -1:
        raise DivergenceError(f"time spread diverges for beta <= 1/2 (beta={b})")
    lj0 = _log_j(2 * b, g)
    ratio = (b ** 2 * np.exp(_log_j(2 * b - 2, g) - lj0)
             + g ** 2 * np.exp(_log_j(2 * b - 2 + 2 * g, g) - lj0)
             - 2 * b * g * np.exp(_log_j(2 * b - 2 + g, g) - lj0))
    st = wp * np.sqrt(ratio)
    return float(st), float(sw), float(st * sw)


def admissibility(p: MorseParams) -> float:
    """``c = (1/2pi) int |Psi|**2 / omega d omega``."""
    if p.beta <= 0:
        raise DivergenceError("admissibility integral diverges for beta = 0")
    _require_wavelet(p)
    b, g = p.beta, p.gamma
    la = _log_amplitude(p)
    val = 2 * la - np.log(np.pi * g) - (2 * b / g + 1) * _LOG2 + log_gamma(2 * b / g)
    return float(np.exp(val))


def convergence_radius(p: MorseParams) -> float:
    """Radius of convergence of the time-domain moment series (``inf`` for gamma > 1)."""
    if p.gamma < 1:
        raise DomainError("convergence radius is only characterised for gamma >= 1")
    return 1.0 if p.gamma == 1 else float("inf")


def moment_series(p: MorseParams, t, n_terms: int):
    """Partial sums ``sum_{n<N} (i t)^n / n! M_n`` for ``N = 1..n_terms``.

    Terms are formed in log space, so orders well beyond the cumulant limit
    are fine here.
    """
    _require_wavelet(p)
    t = float(t)
    n = np.arange(n_terms)
    logmag = np.array([_log_moment(p.beta, p.gamma, k) for k in n]) - log_gamma(n + 1.0)
    if t != 0:
        logmag = logmag + n * np.log(abs(t))
    else:
        logmag = np.where(n == 0, logmag, -np.inf)
    terms = np.exp(logmag) * (1j * np.sign(t) if t else 1j) ** n
    return np.cumsum(terms)


def params_from_duration_skewness(P: float, skew: float) -> MorseParams:
    """Invert ``P = sqrt(beta gamma)``, ``skew = (gamma - 3) / P``."""
    if not P > 0:
        raise DomainError(f"duration P must be > 0, got {P}")
    if not skew > -3.0 / P:
        raise DomainError(
            f"skewness must exceed -3/P = {-3.0 / P:.12g} (gamma > 0), got {skew}")
    g = skew * P + 3.0
    return MorseParams(beta=P * P / g, gamma=g)


def morse_report(p: MorseParams) -> PropertyReport:
    _require_wavelet(p)
    wt, wb, curv = frequency_measures(p)
    P, a3, a4 = demodulate_stats(p)
    notes = []
    try:
        st, sw, area = concentration(p)
    except DivergenceError as exc:
        sw = _freq_spread(p)
        st = area = None
        notes.append(str(exc))
    return PropertyReport(
        wavelet=p.label(), peak_frequency=peak_frequency(p), energy_frequency=wt,
        central_instantaneous_frequency=wb, duration=P,
        demodulate_skewness_imag=float(a3.imag), demodulate_kurtosis=a4,
        frequency_curvature=curv, heisenberg_area=area, time_spread=st,
        freq_spread=sw, admissibility=admissibility(p), beta=p.beta, gamma=p.gamma,
        notes=notes)


def _freq_spread(p):
    m = moments(p, 2).energy_moments
    wt = m[1] / m[0]
    return float(np.sqrt(m[2] / m[0] - wt ** 2) / peak_frequency(p))

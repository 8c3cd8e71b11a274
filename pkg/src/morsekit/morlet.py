"""Morlet wavelet with the zero-mean correction and peak-frequency normalization.

    Psi(omega) = a exp(-(omega - nu)**2 / 2) (1 - exp(-omega nu))

The peak ``omega_nu`` is the root of ``omega - nu = omega exp(-omega nu)``.
Writing ``L = -ln(1 - nu/omega_nu)`` gives ``nu = sqrt(L (1 - e^-L))`` and
``omega_nu = sqrt(L / (1 - e^-L))``, a monotone map that is solved for ``L``
by bracketed root finding.  Working in ``L`` rather than ``nu/omega_nu``
keeps large carriers (where ``nu/omega_nu`` rounds to 1) exact.
"""
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize

from .errors import ConvergenceError, DomainError
from .morse import PropertyReport, SpectralWavelet, cumulants_from_moments
from .special import complete_bell

_SQRT2PI = np.sqrt(2 * np.pi)


@dataclass(frozen=True)
class MorletParams:
    """Carrier ``nu``, peak frequency ``omega_nu`` and amplitude ``a_nu``.

    ``log_gap`` is ``L`` from the module docstring; it pins ``omega_nu - nu``
    without cancellation.
    """

    carrier: float
    peak: float
    norm: float
    log_gap: float

    @property
    def peak_frequency(self) -> float:
        return self.peak

    @property
    def peak_gap(self) -> float:
        """``omega_nu - nu`` computed as ``omega_nu exp(-L)``."""
        return self.peak * np.exp(-self.log_gap)

    @property
    def energy_frequency(self) -> float:
        return _numeric_moments(self)["energy_frequency"]

    @property
    def central_instantaneous_frequency(self) -> float:
        # Im(psi'(0)/psi(0)) with psi'(0) = i a nu
        return float(self.carrier / -np.expm1(-0.5 * self.carrier ** 2))

    @property
    def duration(self) -> float:
        return duration(self)

    def spectrum(self, omega):
        return _spectrum(self, np.asarray(omega, dtype=float))

    def normalized_derivatives(self, n_max: int):
        return frequency_derivatives_at_peak(self, n_max)

    def label(self) -> str:
        return f"morlet(nu={self.carrier!r})"


def _carrier_of(L):
    return np.sqrt(L * -np.expm1(-L))


def peak_from_carrier(nu: float) -> MorletParams:
    """Solve for the peak frequency and amplitude of the carrier-``nu`` Morlet."""
    if not nu > 0:
        raise DomainError(f"Morlet carrier must be > 0, got {nu}")
    # nu(L) grows like sqrt(L) for large L and like L for small L
    hi = max(4.0, 2.0 * nu * nu + 4.0)
    lo = min(1e-3, 0.5 * nu)
    while _carrier_of(lo) > nu:
        lo *= 0.5
    try:
        L = optimize.brentq(lambda x: _carrier_of(x) - nu, lo, hi, xtol=1e-300, rtol=1e-15,
                            maxiter=500)
    except (RuntimeError, ValueError) as exc:  # pragma: no cover - monotone map
        raise ConvergenceError(f"Morlet peak solver failed for nu={nu}") from exc
    ratio = -np.expm1(-L)
    peak = np.sqrt(L / ratio)
    gap = peak * np.exp(-L)
    norm = 2.0 * (peak / nu) * np.exp(0.5 * gap * gap)
    return MorletParams(carrier=float(nu), peak=float(peak), norm=float(norm), log_gap=float(L))


def peak_residual(m: MorletParams) -> float:
    """``(omega - nu) - omega exp(-omega nu)`` at the solved peak."""
    return float(m.peak_gap - m.peak * np.exp(-m.peak * m.carrier))


def _spectrum(m: MorletParams, omega):
    nu = m.carrier
    omega = np.asarray(omega, dtype=float)
    pos = m.norm * np.exp(-0.5 * (omega - nu) ** 2) * -np.expm1(-np.maximum(omega, 0.0) * nu)
    # below zero expand the product so exp(-omega nu) never overflows
    neg = m.norm * (np.exp(-0.5 * (omega - nu) ** 2) - np.exp(-0.5 * (omega ** 2 + nu ** 2)))
    return np.where(omega >= 0, pos, neg)


def evaluate_spectrum(m: MorletParams, omega_grid, s: float = 1.0) -> SpectralWavelet:
    omega = np.asarray(omega_grid, dtype=float)
    return SpectralWavelet(omega=omega, values=_spectrum(m, s * omega), scale=float(s),
                           source=m.label())


def evaluate_time(m: MorletParams, t):
    """Time-domain Morlet ``psi(t)``.

    The amplitude is ``a_nu / sqrt(2 pi)`` so that this is exactly the
    inverse Fourier transform of :func:`evaluate_spectrum`'s ``Psi``.
    """
    from .closed_forms import SampledWavelet

    t = np.asarray(t, dtype=float)
    vals = (m.norm / _SQRT2PI) * np.exp(-0.5 * t * t) * (
        np.exp(1j * m.carrier * t) - np.exp(-0.5 * m.carrier ** 2))
    return SampledWavelet(t=t, values=vals, source=f"{m.label()} closed")


def duration(m: MorletParams) -> float:
    """``P = omega_nu sqrt(omega_nu (omega_nu - nu) + 1)``."""
    return float(m.peak * np.sqrt(m.peak * m.peak_gap + 1.0))


def log_derivative_terms(m: MorletParams, omega: float, n_max: int):
    """``omega**n d^n/d omega^n ln Psi`` for ``n = 1..n_max``.

    The correction factor contributes ``nu**n f^(n-1)(nu omega)`` with
    ``f(x) = 1/(e^x - 1)``, summed here as ``f^(j)(x) = (-1)^j sum_k k^j e^{-k x}``.
    """
    nu = m.carrier
    x = nu * omega
    k = np.arange(1, 65 + int(np.ceil(120.0 / x)), dtype=float)
    ek = np.exp(-k * x)
    out = []
    for n in range(1, n_max + 1):
        gauss = -(omega - nu) if n == 1 else (-1.0 if n == 2 else 0.0)
        corr = nu ** n * (-1) ** (n - 1) * np.sum(k ** (n - 1) * ek)
        out.append(omega ** n * (gauss + corr))
    return out


def frequency_derivatives_at_peak(m: MorletParams, n_max: int):
    terms = log_derivative_terms(m, m.peak, n_max)
    return np.array([1.0 + 0j] + [complete_bell(terms[:n]) for n in range(1, n_max + 1)])


def negative_frequency_fraction(m: MorletParams) -> float:
    """Share of ``int |Psi|**2`` lying at negative frequencies."""
    f = lambda w: _spectrum(m, w) ** 2  # noqa: E731
    lo = m.carrier - 40.0
    neg, _ = integrate.quad(f, min(lo, -40.0), 0.0, epsabs=0, epsrel=1e-12, limit=400)
    pos, _ = integrate.quad(f, 0.0, m.carrier + 40.0, epsabs=0, epsrel=1e-12, limit=400)
    return float(neg / (neg + pos))


def _numeric_moments(m: MorletParams):
    """Spectral integrals that have no closed form for the Morlet wavelet."""
    lo, hi = min(m.carrier - 40.0, -40.0), m.carrier + 40.0
    psi = lambda w: _spectrum(m, w)  # noqa: E731
    quad = lambda f, a=lo, b=hi: integrate.quad(f, a, b, epsabs=0, epsrel=1e-13, limit=500)[0]  # noqa: E731
    mom = np.array([quad(lambda w, n=n: w ** n * psi(w)) for n in range(4)]) / (2 * np.pi)
    e = np.array([quad(lambda w, n=n: w ** n * psi(w) ** 2, 0.0, hi) for n in range(3)])
    full = np.array([quad(lambda w, n=n: w ** n * psi(w) ** 2) for n in range(3)])
    dpsi2 = quad(lambda w: _spectrum_derivative(m, w) ** 2)
    admiss = (quad(lambda w: psi(w) ** 2 / abs(w), lo, 0.0)
              + quad(lambda w: psi(w) ** 2 / w, 0.0, hi)) / (2 * np.pi)
    return {
        "moments": mom,
        "energy_frequency": e[1] / e[0],
        "full_energy": full,
        "dpsi2": dpsi2,
        "admissibility": admiss,
    }


def _spectrum_derivative(m: MorletParams, omega):
    g = np.exp(-0.5 * (omega - m.carrier) ** 2)
    return m.norm * g * (m.carrier + omega * np.expm1(-omega * m.carrier))


def morlet_report(m: MorletParams) -> PropertyReport:
    """Property report for a Morlet wavelet.

    Quantities without closed forms come from adaptive quadrature; spreads
    use the whole real line since the Morlet spectrum leaks below zero.
    """
    notes = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        q = _numeric_moments(m)
    if any(issubclass(w.category, integrate.IntegrationWarning) for w in caught):
        notes.append("quadrature reported roundoff; last digits of integrated fields are uncertain")
    k = cumulants_from_moments(q["moments"])
    if k[2] > 0:
        curvature = float(-k[3] / k[2] ** 1.5)
    else:
        curvature = float("nan")
        notes.append("frequency_curvature undefined: |psi| has a local minimum at t = 0")
    d = frequency_derivatives_at_peak(m, 4)
    P = float(np.sqrt(-d[2].real))
    a3 = (-1j * d[3] / P ** 3)
    a4 = d[4].real / P ** 4
    full = q["full_energy"]
    mean = full[1] / full[0]
    sw = np.sqrt(full[2] / full[0] - mean ** 2) / m.peak
    st = m.peak * np.sqrt(q["dpsi2"] / full[0])
    return PropertyReport(
        wavelet=m.label(), peak_frequency=m.peak, energy_frequency=float(q["energy_frequency"]),
        central_instantaneous_frequency=m.central_instantaneous_frequency, duration=P,
        demodulate_skewness_imag=float(a3.imag), demodulate_kurtosis=float(a4),
        frequency_curvature=curvature, heisenberg_area=float(st * sw),
        time_spread=float(st), freq_spread=float(sw), admissibility=float(q["admissibility"]),
        morlet_carrier=m.carrier, notes=notes)


def carrier_for_duration(P: float) -> MorletParams:
    """Morlet whose duration equals ``P`` (``P`` must exceed the ``nu -> 0`` limit)."""
    lo_nu, hi_nu = 1e-6, max(4.0, 2.0 * P)
    f = lambda nu: duration(peak_from_carrier(nu)) - P  # noqa: E731
    if f(lo_nu) >= 0:
        raise DomainError(f"no Morlet wavelet has duration {P} (minimum ~{P - f(lo_nu):.6g})")
    nu = optimize.brentq(f, lo_nu, hi_nu, xtol=1e-14, rtol=1e-14)
    return peak_from_carrier(nu)


def spectral_time(m: MorletParams, n_time: int, dt: float):
    """``psi(t)`` by inverse FFT of the two-sided spectrum, centered at index ``n_time // 2``.

    Unlike the Morse path the negative-frequency bins are kept, since the
    Morlet spectrum does not vanish there.
    """
    from .closed_forms import SampledWavelet, time_grid

    if n_time < 2 or not dt > 0:
        raise DomainError("need n_time >= 2 and dt > 0")
    omega = 2 * np.pi * np.fft.fftfreq(n_time, d=dt)
    dw = 2 * np.pi / (n_time * dt)
    psi = np.fft.ifft(_spectrum(m, omega)) * (n_time * dw / (2 * np.pi))
    return SampledWavelet(t=time_grid(n_time, dt), values=np.roll(psi, n_time // 2),
                          source=f"{m.label()} spectral")

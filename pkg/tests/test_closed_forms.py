import math
import warnings

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from morsekit import closed_forms as cf
from morsekit.errors import AliasingWarning, DomainError, UnsupportedOrderError
from morsekit.morse import MorseParams, moments, normalization, evaluate_spectrum


def direct_time(p, t):
    """mpmath inverse Fourier integral of the Morse spectrum at one time."""
    a = normalization(p)
    f = lambda w: a * w ** p.beta * mp.exp(-w ** p.gamma + 1j * w * t)  # noqa: E731
    return complex(mp.quad(f, [0, p.peak_frequency, 4 * p.peak_frequency, mp.inf]) / (2 * mp.pi))


def test_cauchy_center_value():
    assert cf.cauchy_time(1.0, 0.0).values == pytest.approx(math.e / math.pi, rel=1e-15)


@pytest.mark.parametrize("beta", [0.3, 1.0, 2.5, 7.0])
def test_cauchy_against_direct_integral(beta):
    p = MorseParams(beta, 1)
    for t in (-2.0, 0.4, 3.0):
        assert cf.cauchy_time(beta, t).values == pytest.approx(direct_time(p, t), rel=1e-10)


def test_cauchy_domain():
    with pytest.raises(DomainError):
        cf.cauchy_time(0.0, 1.0)


def test_gaussian_center_and_real_part():
    assert cf.gaussian_family_time(0, 0.0).values == pytest.approx(1 / (2 * math.sqrt(math.pi)))
    t = np.linspace(-6, 6, 25)
    np.testing.assert_allclose(cf.gaussian_family_time(0, t).values.real,
                               np.exp(-t ** 2 / 4) / (2 * math.sqrt(math.pi)), rtol=1e-13)


@pytest.mark.parametrize("beta", [1, 2, 5])
def test_gaussian_against_direct_integral(beta):
    p = MorseParams(beta, 2)
    for t in (-1.5, 0.3, 2.5):
        assert cf.gaussian_family_time(beta, t).values == pytest.approx(direct_time(p, t), rel=1e-9)


def test_gaussian_order_checks():
    with pytest.raises(UnsupportedOrderError):
        cf.gaussian_family_time(31, 0.0)
    with pytest.raises(DomainError):
        cf.gaussian_family_time(1.5, 0.0)


def test_airy_center_value():
    ref = float(mp.gamma(mp.mpf(4) / 3) / mp.pi)
    assert cf.airy_time(0, 0.0).values == pytest.approx(ref, rel=1e-10)
    assert cf.airy_time(0, 0.0).values == pytest.approx(moments(MorseParams(1e-300, 3), 0).moments[0]
                                                         if False else ref)


@pytest.mark.parametrize("beta", [1, 4, 9])
def test_airy_against_direct_integral(beta):
    p = MorseParams(beta, 3)
    for t in (-3.0, 0.7, 5.0):
        assert cf.airy_time(beta, t).values == pytest.approx(direct_time(p, t), abs=1e-10)


def test_airy_order_limit():
    with pytest.raises(UnsupportedOrderError):
        cf.airy_time(11, 0.0)


@pytest.mark.parametrize("gamma", [1, 2, 3])
@pytest.mark.parametrize("beta", [1, 2, 3, 4])
def test_closed_vs_spectral(gamma, beta):
    p = MorseParams(beta, gamma)
    # heavy t**-(beta+1) tails need a long window for every gamma
    n, dt = 2 ** 17, 0.0625
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AliasingWarning)
        s = cf.morse_time(p, n, dt)
    core = slice(n // 2 - 2048, n // 2 + 2048, 4)
    c = cf.closed_form_time(p, s.t[core]).values
    # beta = 1 tails fall as t**-2; their periodic images add a near-constant
    # offset of order (a/2pi) * 2 zeta(2) / (n dt)**2 to the spectral samples
    tol = 5e-7 if beta == 1 else 1e-7
    assert np.max(np.abs(c - s.values[core])) < tol * np.max(np.abs(c))


def test_closed_form_dispatch_rejects_gamma4():
    with pytest.raises(DomainError, match="no closed"):
        cf.closed_form_time(MorseParams(2, 4), [0.0])


def test_spectral_inverse_center_parseval_and_peak():
    p = MorseParams(3, 3)
    s = cf.morse_time(p, 2 ** 14, 0.05)
    c = s.t.size // 2
    assert s.t[c] == 0.0
    assert np.argmax(np.abs(s.values)) == c
    assert s.values[c].real == pytest.approx(moments(p, 0).moments[0], rel=1e-8)
    assert np.sum(np.abs(s.values) ** 2) * s.dt == pytest.approx(moments(p, 0).energy_moments[0],
                                                                 rel=1e-8)


def test_spectral_inverse_warns_on_aliasing():
    with pytest.warns(AliasingWarning):
        cf.morse_time(MorseParams(1, 1), 256, 0.1)


def test_spectral_inverse_requires_zero_start():
    w = evaluate_spectrum(MorseParams(3, 3), np.linspace(0.1, 4, 64))
    with pytest.raises(DomainError):
        cf.spectral_inverse(w, 128)


def test_beta_differentiation_property():
    # multiplying the beta=0 filter spectrum by (a_b/2) omega^b gives the beta wavelet
    g, b = 3.0, 4
    w = np.linspace(0, 8, 4001)
    base = evaluate_spectrum(MorseParams(0, g), w).values
    target = evaluate_spectrum(MorseParams(b, g), w).values
    np.testing.assert_allclose(normalization(MorseParams(b, g)) / 2 * w ** b * base, target,
                               rtol=1e-13, atol=1e-300)
    # in time, spectral multiplication by (i omega)^b is b-fold differentiation
    n, dt = 2 ** 12, 0.05
    s0 = cf.morse_time(MorseParams(0, g), n, dt)
    om = 2 * np.pi * np.fft.fftfreq(n, dt)
    spec0 = np.fft.fft(np.fft.ifftshift(s0.values))
    deriv = np.fft.fftshift(np.fft.ifft(spec0 * (1j * om) ** b))
    scaled = normalization(MorseParams(b, g)) / 2 * (-1j) ** b * deriv
    ref = cf.morse_time(MorseParams(b, g), n, dt).values
    assert np.max(np.abs(scaled - ref)) < 1e-8 * np.max(np.abs(ref))


def test_demodulate_third_moment_scaling():
    # normalized third moment of the demodulated wavelet is i(gamma-3)/P;
    # t**3 psi is integrable only for beta > 3
    for beta, gamma in [(4, 2), (6, 1.5), (5, 4.5), (9, 1), (8, 3)]:
        p = MorseParams(beta, gamma)
        n, dt = 2 ** 14, 0.02
        s = cf.morse_time(p, n, dt)
        wp = p.peak_frequency
        x = s.values * np.exp(-1j * wp * s.t)
        m = [np.sum(s.t ** k * x) * dt for k in range(4)]
        P = math.sqrt(beta * gamma)
        assert abs(m[1] / m[0]) < 1e-8
        assert wp * np.sqrt((m[2] / m[0]).real) == pytest.approx(P, rel=1e-8)
        alpha3 = (m[3] / m[0]) / (m[2] / m[0]) ** 1.5
        pred = 1j * (gamma - 3) / P
        assert abs(alpha3 - pred) < 1e-5


def test_airy_demodulate_skewness_vanishes():
    p = MorseParams(4, 3)
    t = np.linspace(-12, 12, 2401)
    dt = t[1] - t[0]
    x = cf.airy_time(4, t).values * np.exp(-1j * p.peak_frequency * t)
    m0 = np.sum(x) * dt
    m1 = np.sum(t * x) * dt / m0
    m2 = np.sum((t - m1) ** 2 * x) * dt / m0
    m3 = np.sum((t - m1) ** 3 * x) * dt / m0
    assert abs((m3 / m2 ** 1.5).imag) < 5e-3


def test_analytic_filter():
    n = 512
    t = np.arange(n)
    w0 = 2 * np.pi * 17 / n
    np.testing.assert_allclose(cf.analytic_filter_apply(np.cos(w0 * t)), np.exp(1j * w0 * t),
                               atol=1e-12)
    np.testing.assert_allclose(cf.analytic_filter_apply(np.full(n, 3.0)), 3.0, atol=1e-12)


@given(st.integers(16, 300), st.integers(0, 2 ** 31))
def test_analytic_filter_real_part_and_idempotence(n, seed):
    x = np.random.default_rng(seed).standard_normal(n)
    xp = cf.analytic_filter_apply(x)
    assert np.max(np.abs(xp.real - x)) < 1e-10
    # a strictly positive-frequency signal is doubled, negative frequencies vanish
    k = np.arange(n)
    pos = (k > 0) & (k < (n + 1) // 2)
    spec = np.fft.fft(x)
    y = np.fft.ifft(np.where(pos, spec, 0))
    z = np.fft.ifft(np.where(k > n // 2, spec, 0))
    assert np.max(np.abs(cf.analytic_filter_apply(y) - 2 * y)) < 1e-12 * n
    assert np.max(np.abs(cf.analytic_filter_apply(z))) < 1e-12 * n
    # the analytic signal is a fixed point of "take the real part, then filter"
    assert np.max(np.abs(cf.analytic_filter_apply(xp.real) - xp)) < 1e-12 * n


def test_decay_envelope_vs_cauchy():
    p = MorseParams(1, 1)
    t = 100.0
    r = abs(cf.cauchy_time(1, t).values) / abs(cf.decay_envelope(p, t))
    assert abs(r - 1) < 0.02
    t = 1e3
    assert cf.cauchy_time(1, t).values / cf.decay_envelope(p, t) == pytest.approx(1, abs=3e-3)


def test_decay_envelope_power_law():
    p = MorseParams(2, 3)
    for t in (30.0, 200.0):
        assert abs(cf.decay_envelope(p, 2 * t)) / abs(cf.decay_envelope(p, t)) == pytest.approx(2.0 ** -3, rel=1e-13)
    e = cf.decay_envelope(p, 50.0)
    ph = normalization(p) / (2 * math.pi) * math.gamma(3) * np.exp(1j * math.pi * 3 / 2) / 50.0 ** 3
    assert e == pytest.approx(ph, rel=1e-13)


def test_decay_envelope_against_spectral_tail():
    p = MorseParams(2, 3)
    s = cf.morse_time(p, 2 ** 16, 0.05)
    idx = np.searchsorted(s.t, 80.0)
    ratio = s.values[idx] / cf.decay_envelope(p, s.t[idx])
    assert abs(ratio - 1) < 0.02


def test_sinusoid_limit():
    r = cf.sinusoid_limit_check(MorseParams(100, 3), 3)
    assert r[0] == 1
    assert abs(r[3] - 1) < 0.02
    dev = [abs(cf.sinusoid_limit_check(MorseParams(b, 3), 4)[4] - 1) for b in (10, 30, 100, 300)]
    assert all(a > b for a, b in zip(dev, dev[1:]))

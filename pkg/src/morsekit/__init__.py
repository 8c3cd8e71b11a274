"""Generalized Morse wavelets: properties, time-domain forms and transforms."""
__version__ = "0.1.0"

from .closed_forms import (SampledWavelet, airy_time, analytic_filter_apply, cauchy_time,
                           closed_form_time, decay_envelope, gaussian_family_time, morse_time,
                           sinusoid_limit_check, spectral_inverse)
from .errors import (AliasingWarning, ConvergenceError, DivergenceError, DomainError,
                     ScaleOutOfBandError, TruncationBiasWarning, UnsupportedOrderError)
from .morlet import MorletParams, carrier_for_duration, morlet_report, peak_from_carrier
from .morse import (MorseParams, PropertyReport, SpectralWavelet, admissibility, concentration,
                    demodulate_stats, evaluate_spectrum, frequency_derivatives_at_peak,
                    frequency_measures, moments, morse_report, params_from_duration_skewness,
                    peak_frequency)
from .timefreq import WignerVille, instantaneous_frequency, sampled_curvature, wigner_ville
from .transform import (FrequencyConvention, ModulatedSignal, Scalogram, ScaleGrid, cwt,
                        energy_mean_scale, frequency_to_scale, interference_metric, make_chirp,
                        predict_ridge_response, scale_to_frequency)

__all__ = [name for name in dir() if not name.startswith("_")]

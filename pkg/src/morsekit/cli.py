"""``morsekit`` command-line interface.

Subcommands ``props``, ``wavelet``, ``transform`` and ``figure``.  Exit
status is 0 on success, 2 for invalid parameters, 3 for I/O problems and 4
for numerical failures.  File layouts are documented in FORMATS.md.
"""
import argparse
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import asdict

import numpy as np

from . import __version__
from .closed_forms import closed_form_time, morse_time, time_grid
from .errors import ConvergenceError, DomainError, ScaleOutOfBandError, UnsupportedOrderError
from .morlet import (carrier_for_duration, evaluate_time, morlet_report, peak_from_carrier,
                     spectral_time)
from .morse import (MorseParams, concentration, evaluate_spectrum, frequency_measures,
                    morse_report,
                    params_from_duration_skewness)
from .timefreq import wigner_ville
from .transform import (BOUNDARIES, CHIRP_DURATION, CHIRP_ENVELOPE, CHIRP_RATE,
                        FrequencyConvention, ScaleGrid, cwt, interference_metric, make_chirp)

SCHEMA_VERSION = 1

EXIT_OK, EXIT_PARAM, EXIT_IO, EXIT_NUMERIC = 0, 2, 3, 4

# Demonstration settings: gamma = 3 Morse at a short duration and the Morlet
# wavelet of equal duration; the long setting is sqrt(10) times longer.
DEMO_DURATION = 0.6 * math.pi
DEMO_LONG_DURATION = math.sqrt(10.0) * DEMO_DURATION
DEMO_GAMMA = 3.0
# the demo wavelet (beta ~ 1.18) decays like t**-2.2; +-2048 keeps its edges below 1e-6
WIGNER_POINTS = 16384
WIGNER_DT = 0.25


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


# -- formatting ----------------------------------------------------------------

def fmt(v) -> str:
    """Shortest round-trip decimal for CSV cells."""
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _sig12(v):
    if isinstance(v, float) and math.isfinite(v):
        return float(f"{v:.12g}")
    return v


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return f if math.isfinite(f) else None
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def dump_json(obj) -> str:
    return json.dumps(_jsonable({"schema_version": SCHEMA_VERSION, **obj}), indent=2,
                      allow_nan=False) + "\n"


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([fmt(v) for v in row] for row in rows)
    return buf.getvalue()


def matrix_csv(row_name, row_values, col_values, matrix) -> str:
    lines = [",".join([row_name] + [fmt(c) for c in col_values])]
    for r, row in zip(row_values, matrix):
        lines.append(",".join([fmt(r)] + [fmt(v) for v in row]))
    return "\n".join(lines) + "\n"


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from exc


# -- wavelet selection -----------------------------------------------------------

def parse_wavelet(spec: str):
    """``morse:BETA,GAMMA`` or ``morlet:NU`` to a wavelet object."""
    kind, _, rest = spec.partition(":")
    try:
        if kind == "morse":
            beta, gamma = (float(v) for v in rest.split(","))
            p = MorseParams(beta, gamma)
            if not p.is_wavelet:
                raise DomainError("transform wavelets need beta > 0 and gamma > 0")
            return p
        if kind == "morlet":
            return peak_from_carrier(float(rest))
    except ValueError as exc:
        raise CliError(f"bad wavelet spec {spec!r}: {exc}", EXIT_PARAM) from exc
    raise CliError(f"wavelet spec must be morse:BETA,GAMMA or morlet:NU, got {spec!r}",
                   EXIT_PARAM)


def _wavelet_from_args(args, allow_filters=False):
    morse = args.beta is not None or args.gamma is not None
    if morse and getattr(args, "morlet_nu", None) is not None:
        raise CliError("give either --beta/--gamma or --morlet-nu, not both", EXIT_PARAM)
    if getattr(args, "morlet_nu", None) is not None:
        return peak_from_carrier(args.morlet_nu)
    if args.beta is None or args.gamma is None:
        raise CliError("--beta and --gamma must be given together", EXIT_PARAM)
    p = MorseParams(args.beta, args.gamma)
    if not allow_filters and not p.is_wavelet:
        raise DomainError(f"need beta > 0 and gamma > 0, got ({p.beta}, {p.gamma})")
    return p


# -- props -------------------------------------------------------------------

def cmd_props(args):
    given = [args.morlet_nu is not None,
             args.beta is not None or args.gamma is not None,
             args.duration is not None or args.skewness is not None]
    if sum(given) != 1:
        raise CliError("choose exactly one of --beta/--gamma, --duration/--skewness, "
                       "--morlet-nu", EXIT_PARAM)
    if args.morlet_nu is not None:
        report = morlet_report(peak_from_carrier(args.morlet_nu))
    elif given[1]:
        report = morse_report(_wavelet_from_args(args))
    else:
        if args.duration is None or args.skewness is None:
            raise CliError("--duration and --skewness must be given together", EXIT_PARAM)
        report = morse_report(params_from_duration_skewness(args.duration, args.skewness))
    data = {k: _sig12(v) for k, v in asdict(report).items()}
    if args.format == "json":
        _write(args.output, dump_json({"kind": "properties", **data}))
    else:
        rows = [(k, "; ".join(v) if isinstance(v, list) else v) for k, v in data.items()]
        _write(args.output, csv_text(["field", "value"], rows))


# -- wavelet -----------------------------------------------------------------

def _default_dt(w, points):
    # half-window of max(20, 10 P) peak periods
    half = max(20.0, 10.0 * w.duration) * 2 * math.pi / w.peak_frequency
    return 2 * half / points


def cmd_wavelet(args):
    w = _wavelet_from_args(args, allow_filters=True)
    n = args.points
    if n < 4:
        raise DomainError("--points must be at least 4")
    if args.domain == "freq":
        dw = args.d_omega if args.d_omega else 2 * math.pi / (n * (args.dt or 1.0))
        omega = np.arange(n) * dw
        if isinstance(w, MorseParams):
            vals = evaluate_spectrum(w, omega).values
        else:
            vals = w.spectrum(omega)
        vals = np.asarray(vals, dtype=complex)
        rows = [(o, v.real, v.imag, abs(v)) for o, v in zip(omega, vals)]
        _write(args.output, csv_text(["omega", "real", "imag", "abs"], rows))
        return
    if isinstance(w, MorseParams) and w.is_wavelet:
        dt = args.dt or _default_dt(w, n)
    else:
        dt = args.dt or 0.05
    if args.method == "spectral":
        if n & (n - 1):
            raise DomainError(f"--points must be a power of two for the spectral method, got {n}")
        s = morse_time(w, n, dt) if isinstance(w, MorseParams) else spectral_time(w, n, dt)
    else:
        t = time_grid(n, dt)
        s = closed_form_time(w, t) if isinstance(w, MorseParams) else evaluate_time(w, t)
    rows = [(t, v.real, v.imag, abs(v)) for t, v in zip(s.t, s.values)]
    _write(args.output, csv_text(["t", "real", "imag", "abs"], rows))


# -- transform ---------------------------------------------------------------

def read_signal(path):
    """One column (values) or two (time, value); header row optional."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    except (OSError, UnicodeDecodeError) as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from exc
    rows = [ln.split(",") for ln in lines]
    if rows:
        try:
            [float(v) for v in rows[0]]
        except ValueError:
            rows = rows[1:]
    if not rows:
        raise CliError(f"{path} contains no samples", EXIT_IO)
    try:
        data = np.array([[float(v) for v in r] for r in rows])
    except ValueError as exc:
        raise CliError(f"{path}: non-numeric value ({exc})", EXIT_IO) from exc
    if data.ndim != 2 or data.shape[1] not in (1, 2):
        raise CliError(f"{path}: expected one or two columns", EXIT_IO)
    if data.shape[1] == 1:
        return 0.0, 1.0, data[:, 0]
    t = data[:, 0]
    if t.size < 2:
        return float(t[0]), 1.0, data[:, 1]
    d = np.diff(t)
    dt = float(np.mean(d))
    if not dt > 0 or np.max(np.abs(d - dt)) > 1e-6 * dt:
        raise DomainError("time column must be uniformly increasing")
    return float(t[0]), dt, data[:, 1]


def _write_scalogram(prefix, sg, wavelet, grid, extra):
    conv = sg.convention
    freqs = conv.wavelet_frequency(wavelet) / sg.scales
    _write(f"{prefix}_real.csv", matrix_csv("scale", sg.scales, sg.times, sg.coefficients.real))
    _write(f"{prefix}_imag.csv", matrix_csv("scale", sg.scales, sg.times, sg.coefficients.imag))
    meta = {
        "kind": "scalogram", "wavelet": wavelet.label(), "convention": conv.value,
        "boundary": sg.boundary, "voices": grid.voices, "n_scales": int(sg.scales.size),
        "n_times": int(sg.times.size), "t0": float(sg.times[0]),
        "dt": float(sg.times[1] - sg.times[0]) if sg.times.size > 1 else 1.0,
        "scales": sg.scales, "frequencies": freqs,
        "argmax_scale_index": sg.argmax_scale_index(), **extra,
    }
    _write(f"{prefix}.json", dump_json(meta))


def cmd_transform(args):
    wavelet = parse_wavelet(args.wavelet)
    t0, dt, x = read_signal(args.input)
    conv = FrequencyConvention(args.convention)
    fmax = args.max_freq if args.max_freq else 0.5 * math.pi / dt
    fmin = args.min_freq if args.min_freq else 16 * math.pi / (x.size * dt)
    grid = ScaleGrid.from_band(wavelet, fmin, fmax, args.voices, conv)
    sg = cwt(x, wavelet, grid, boundary=args.boundary, dt=dt, t0=t0, convention=conv,
             derivative=False)
    _write_scalogram(args.output_prefix, sg, wavelet, grid,
                     {"interference_metric": interference_metric(sg)})


# -- figure ------------------------------------------------------------------

def parse_lattice(spec):
    """``PMIN:PMAX:NP,SMIN:SMAX:NS`` (P/pi range, skewness range)."""
    try:
        p_part, s_part = spec.split(",")
        p0, p1, np_ = p_part.split(":")
        s0, s1, ns = s_part.split(":")
        p = np.linspace(float(p0), float(p1), int(np_))
        s = np.linspace(float(s0), float(s1), int(ns))
    except ValueError as exc:
        raise CliError(f"lattice must look like PMIN:PMAX:NP,SMIN:SMAX:NS, got {spec!r}",
                       EXIT_PARAM) from exc
    if p.size < 1 or s.size < 1 or np.any(~(p > 0)):
        raise DomainError("lattice needs at least one point and positive P/pi")
    for pp in p:
        bound = -3.0 / (pp * math.pi)
        if np.any(s <= bound):
            raise DomainError(f"lattice skewness must exceed -3/P = {bound:.12g} at P/pi={float(pp)!r}")
    return p, s


def _map_rows(p_over_pi, skews, which):
    rows = []
    for po in p_over_pi:
        for sk in skews:
            prm = params_from_duration_skewness(po * math.pi, sk)
            base = (po, sk, prm.beta, prm.gamma)
            if which == "freq-map":
                wt, wb, curv = frequency_measures(prm)
                wp = prm.peak_frequency
                rows.append(base + ("energy_over_peak_minus_1", wt / wp - 1.0))
                rows.append(base + ("instantaneous_over_peak_minus_1", wb / wp - 1.0))
                rows.append(base + ("frequency_curvature", curv))
            else:
                try:
                    area = concentration(prm)[2]
                except DomainError:
                    area = float("nan")
                rows.append(base + ("heisenberg_area", area))
    return rows


def _demo_pair(duration):
    morse = params_from_duration_skewness(duration, 0.0)
    return morse, carrier_for_duration(duration)


def cmd_figure(args):
    prefix = args.output_prefix
    if args.which in ("freq-map", "area-map"):
        p, s = parse_lattice(args.lattice)
        rows = _map_rows(p, s, args.which)
        _write(f"{prefix}.csv",
               csv_text(["P_over_pi", "skew", "beta", "gamma", "quantity", "value"], rows))
        return
    duration = args.duration or DEMO_DURATION
    morse, morlet = _demo_pair(duration)
    if args.which == "chirp":
        x, desc = make_chirp(CHIRP_DURATION, CHIRP_RATE, CHIRP_ENVELOPE)
        fmin, fmax = 0.02, 2.5
        meta = {"kind": "chirp", "duration_P": duration, "rate": CHIRP_RATE,
                "envelope_width": CHIRP_ENVELOPE, "record_length": CHIRP_DURATION,
                "band": [fmin, fmax], "voices": 32}
        _write(f"{prefix}_signal.csv", csv_text(
            ["t", "x", "phase_derivative"], zip(desc.t, x, desc.frequency)))
        for name, w in (("morse", morse), ("morlet", morlet)):
            grid = ScaleGrid.from_band(w, fmin, fmax, 32)
            sg = cwt(x, w, grid, boundary="zero", dt=float(desc.t[1] - desc.t[0]),
                     t0=float(desc.t[0]), derivative=False)
            _write(f"{prefix}_{name}.csv",
                   matrix_csv("scale", sg.scales, sg.times, np.abs(sg.coefficients)))
            meta[name] = {"wavelet": w.label(), "scales": sg.scales,
                          "frequencies": w.peak_frequency / sg.scales,
                          "interference_metric": interference_metric(sg)}
        meta["metric_ratio_morlet_over_morse"] = (meta["morlet"]["interference_metric"]
                                                  / meta["morse"]["interference_metric"])
        _write(f"{prefix}.json", dump_json(meta))
        return
    # wigner
    n, dt = args.points, args.dt
    if n < 16 or n & (n - 1):
        raise DomainError(f"--points must be a power of two >= 16, got {n}")
    if not (args.t_max > 0 and args.max_freq > 0 and args.freq_step >= 1):
        raise DomainError("--t-max and --max-freq must be positive, --freq-step >= 1")
    meta = {"kind": "wigner", "duration_P": duration, "points": n, "dt": dt,
            "time_step": args.time_step, "t_max": args.t_max, "max_freq": args.max_freq,
            "freq_step": args.freq_step}
    for name, w in (("morse", morse), ("morlet", morlet)):
        samples = morse_time(w, n, dt) if name == "morse" else spectral_time(w, n, dt)
        wv = wigner_ville(samples, oversample=2, time_step=args.time_step, t_max=args.t_max)
        # leakage is measured on the full frequency axis, before cropping
        vmax = np.max(np.abs(wv.values))
        neg = np.max(np.abs(wv.values[:, wv.frequencies < 0]))
        cols = np.flatnonzero(np.abs(wv.frequencies) <= args.max_freq)[::args.freq_step]
        _write(f"{prefix}_{name}.csv",
               matrix_csv("t", wv.times, wv.frequencies[cols], wv.values[:, cols]))
        meta[name] = {"wavelet": w.label(), "frequencies": wv.frequencies[cols],
                      "negative_frequency_max_over_max": neg / vmax}
    _write(f"{prefix}.json", dump_json(meta))


# -- entry point ---------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="morsekit", description="Generalized Morse wavelet toolkit")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def wavelet_flags(p, morlet=True):
        p.add_argument("--beta", type=float)
        p.add_argument("--gamma", type=float)
        if morlet:
            p.add_argument("--morlet-nu", type=float, dest="morlet_nu")

    p = sub.add_parser("props", help="property report of one wavelet")
    wavelet_flags(p)
    p.add_argument("--duration", type=float, help="P = sqrt(beta gamma)")
    p.add_argument("--skewness", type=float, help="Im of the demodulate skewness, (gamma-3)/P")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("wavelet", help="sample a wavelet in time or frequency")
    wavelet_flags(p)
    p.add_argument("--points", type=int, default=1024)
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--d-omega", type=float, default=None, dest="d_omega")
    p.add_argument("--domain", choices=("time", "freq"), default="time")
    p.add_argument("--method", choices=("closed", "spectral"), default="spectral")
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_wavelet)

    p = sub.add_parser("transform", help="wavelet transform of a CSV signal")
    p.add_argument("--input", required=True)
    p.add_argument("--wavelet", default="morse:3,3", help="morse:BETA,GAMMA or morlet:NU")
    p.add_argument("--voices", type=float, default=32)
    p.add_argument("--min-freq", type=float, default=None, dest="min_freq")
    p.add_argument("--max-freq", type=float, default=None, dest="max_freq")
    p.add_argument("--convention", choices=[c.value for c in FrequencyConvention],
                   default="peak")
    p.add_argument("--boundary", choices=BOUNDARIES, default="periodic")
    p.add_argument("--output-prefix", required=True, dest="output_prefix")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("figure", help="datasets behind the parameter-plane and demo figures")
    p.add_argument("--which", choices=("freq-map", "area-map", "chirp", "wigner"), required=True)
    p.add_argument("--lattice", default="1:4:7,-0.2:0.8:6",
                   help="PMIN:PMAX:NP,SMIN:SMAX:NS over P/pi and skewness")
    p.add_argument("--duration", type=float, default=None,
                   help="wavelet duration P for chirp/wigner (default 0.6 pi)")
    p.add_argument("--points", type=int, default=WIGNER_POINTS,
                   help="samples of each wavelet (power of two)")
    p.add_argument("--dt", type=float, default=WIGNER_DT)
    p.add_argument("--time-step", type=int, default=2, dest="time_step",
                   help="keep every k-th time row of the Wigner-Ville matrices")
    p.add_argument("--t-max", type=float, default=16.0, dest="t_max",
                   help="only rows with |t| <= T are computed and written")
    p.add_argument("--max-freq", type=float, default=6.0, dest="max_freq",
                   help="only columns with |omega| <= W are written")
    p.add_argument("--freq-step", type=int, default=8, dest="freq_step",
                   help="keep every k-th frequency column")
    p.add_argument("--output-prefix", required=True, dest="output_prefix")
    p.set_defaults(func=cmd_figure)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            args.func(args)
    except CliError as exc:
        print(f"morsekit: error: {exc}", file=sys.stderr)
        return exc.code
    except (DomainError, UnsupportedOrderError, ScaleOutOfBandError) as exc:
        print(f"morsekit: error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except OSError as exc:
        print(f"morsekit: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConvergenceError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"morsekit: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

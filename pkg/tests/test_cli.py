import csv
import hashlib
import json
import math
import subprocess
import sys
import warnings

import numpy as np
import pytest

from morsekit import cli


def run(argv, capsys=None):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr() if capsys is not None else None
    return code, out


def read_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array([[float(v) for v in r] for r in rows[1:]])


# -- props -------------------------------------------------------------------

def test_props_airy_json(capsys):
    code, out = run(["props", "--beta", 4, "--gamma", 3], capsys)
    assert code == 0
    data = json.loads(out.out)
    assert data["schema_version"] == cli.SCHEMA_VERSION
    assert data["duration"] == pytest.approx(2 * math.sqrt(3), rel=1e-11)
    assert data["demodulate_skewness_imag"] == 0.0


def test_props_inversion_and_morlet(capsys):
    code, out = run(["props", "--duration", 3.4641, "--skewness", 0], capsys)
    assert code == 0
    data = json.loads(out.out)
    assert data["gamma"] == pytest.approx(3.0, rel=1e-11)
    assert data["beta"] == pytest.approx(3.4641 ** 2 / 3, rel=1e-11)
    code, out = run(["props", "--morlet-nu", 10], capsys)
    data = json.loads(out.out)
    assert abs(data["peak_frequency"] / 10 - 1) < 1e-8


def test_props_small_morlet_carrier_reports_null_curvature(capsys):
    code, out = run(["props", "--morlet-nu", 0.1], capsys)
    assert code == 0
    data = json.loads(out.out)
    assert data["frequency_curvature"] is None
    assert any("local minimum" in n for n in data["notes"])


def test_props_twelve_significant_digits(capsys):
    code, out = run(["props", "--beta", 2, "--gamma", 1.5], capsys)
    data = json.loads(out.out)
    for k, v in data.items():
        if isinstance(v, float) and v != 0:
            assert float(f"{v:.12g}") == v, k


def test_props_csv(tmp_path):
    path = tmp_path / "p.csv"
    assert cli.main(["props", "--beta", "3", "--gamma", "2", "--format", "csv",
                     "--output", str(path)]) == 0
    rows = list(csv.reader(open(path)))
    assert rows[0] == ["field", "value"]
    fields = dict(rows[1:])
    assert float(fields["gamma"]) == 2.0


@pytest.mark.parametrize("argv, needle", [
    (["props", "--duration", 3, "--skewness", -1.2], "-3/P"),
    (["props", "--beta", 3], "together"),
    (["props", "--beta", 3, "--gamma", 2, "--morlet-nu", 4], "exactly one"),
    (["props"], "exactly one"),
    (["props", "--morlet-nu", -1], "> 0"),
])
def test_props_parameter_errors(argv, needle, capsys):
    code, out = run(argv, capsys)
    assert code == 2
    assert needle in out.err


# -- wavelet -----------------------------------------------------------------

def test_wavelet_hypergaussian_closed_is_refused(capsys):
    code, out = run(["wavelet", "--beta", 2, "--gamma", 4, "--method", "closed"], capsys)
    assert code == 2
    assert "no closed" in out.err


def test_wavelet_spectral_needs_power_of_two(capsys):
    code, out = run(["wavelet", "--beta", 2, "--gamma", 3, "--points", 1000], capsys)
    assert code == 2 and "power of two" in out.err


@pytest.mark.parametrize("beta", [2, 4])
def test_wavelet_cauchy_closed_vs_spectral(tmp_path, beta):
    files = {}
    for method in ("closed", "spectral"):
        files[method] = tmp_path / f"{method}.csv"
        assert cli.main(["wavelet", "--beta", str(beta), "--gamma", "1", "--points", "16384",
                         "--dt", "0.05", "--method", method, "-o", str(files[method])]) == 0
    _, a = read_csv(files["closed"])
    _, b = read_csv(files["spectral"])
    np.testing.assert_array_equal(a[:, 0], b[:, 0])
    core = np.abs(a[:, 0]) < 100
    err = np.max(np.hypot(a[core, 1] - b[core, 1], a[core, 2] - b[core, 2]))
    assert err < 1e-7 * np.max(a[:, 3])


@pytest.mark.parametrize("bg", [(3, 3), (2, 1), (5, 2), (1, 4), (20, 6)])
def test_wavelet_abs_max_at_zero(tmp_path, bg):
    path = tmp_path / "w.csv"
    assert cli.main(["wavelet", "--beta", str(bg[0]), "--gamma", str(bg[1]),
                     "-o", str(path)]) == 0
    header, d = read_csv(path)
    assert header == ["t", "real", "imag", "abs"]
    assert d[np.argmax(d[:, 3]), 0] == 0.0


def test_wavelet_frequency_domain_and_morlet(tmp_path):
    path = tmp_path / "f.csv"
    assert cli.main(["wavelet", "--beta", "3", "--gamma", "3", "--domain", "freq",
                     "--d-omega", "0.01", "--points", "300", "-o", str(path)]) == 0
    header, d = read_csv(path)
    assert header[0] == "omega" and d[:, 3].max() == pytest.approx(2.0, abs=1e-3)
    path = tmp_path / "m.csv"
    assert cli.main(["wavelet", "--morlet-nu", "6", "--points", "2048", "-o", str(path)]) == 0
    _, d = read_csv(path)
    assert d[np.argmax(d[:, 3]), 0] == 0.0


def test_wavelet_csv_uses_round_trip_floats(tmp_path):
    path = tmp_path / "w.csv"
    cli.main(["wavelet", "--beta", "3", "--gamma", "3", "--points", "64", "-o", str(path)])
    text = open(path).read().splitlines()[1:]
    for line in text:
        for tok in line.split(","):
            assert repr(float(tok)) == tok


# -- transform ---------------------------------------------------------------

def _write_cos(path, n=2048, omega0=0.3, dt=1.0, two_col=True, header=True):
    t = (np.arange(n) * dt).tolist()
    x = np.cos(omega0 * np.array(t)).tolist()
    with open(path, "w") as fh:
        if header:
            fh.write("t,x\n" if two_col else "x\n")
        for ti, xi in zip(t, x):
            fh.write(f"{ti!r},{xi!r}\n" if two_col else f"{xi!r}\n")


@pytest.mark.parametrize("two_col, header", [(True, True), (False, False), (False, True)])
def test_transform_cosine_argmax(tmp_path, two_col, header):
    inp = tmp_path / "x.csv"
    _write_cos(inp, two_col=two_col, header=header)
    pre = tmp_path / "out"
    assert cli.main(["transform", "--input", str(inp), "--wavelet", "morse:4,3",
                     "--output-prefix", str(pre)]) == 0
    meta = json.load(open(f"{pre}.json"))
    assert meta["schema_version"] == cli.SCHEMA_VERSION
    scales = np.array(meta["scales"])
    idx = np.array(meta["argmax_scale_index"])
    k = np.bincount(idx[500:1500]).argmax()
    target = (4 / 3) ** (1 / 3) / 0.3
    assert abs(math.log2(scales[k] / target)) <= 1 / 32
    h, re = read_csv(f"{pre}_real.csv")
    _, im = read_csv(f"{pre}_imag.csv")
    assert h[0] == "scale" and re.shape == (scales.size, 2049)
    assert np.max(np.hypot(re[k, 1:], im[k, 1:])[500:1500]) == pytest.approx(1.0, abs=2e-3)


def test_transform_io_errors(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    code, out = run(["transform", "--input", empty, "--output-prefix", tmp_path / "o"], capsys)
    assert code == 3
    code, _ = run(["transform", "--input", tmp_path / "missing.csv",
                   "--output-prefix", tmp_path / "o"], capsys)
    assert code == 3
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2,3\n4,5,6\n")
    assert run(["transform", "--input", bad, "--output-prefix", tmp_path / "o"], capsys)[0] == 3
    header_only = tmp_path / "h.csv"
    header_only.write_text("t,x\n")
    assert run(["transform", "--input", header_only,
                "--output-prefix", tmp_path / "o"], capsys)[0] == 3


def test_transform_parameter_errors(tmp_path, capsys):
    inp = tmp_path / "x.csv"
    _write_cos(inp, n=64)
    assert run(["transform", "--input", inp, "--wavelet", "morse:3",
                "--output-prefix", tmp_path / "o"], capsys)[0] == 2
    assert run(["transform", "--input", inp, "--wavelet", "paul:4",
                "--output-prefix", tmp_path / "o"], capsys)[0] == 2
    assert run(["transform", "--input", inp, "--max-freq", 10,
                "--output-prefix", tmp_path / "o"], capsys)[0] == 2
    uneven = tmp_path / "u.csv"
    uneven.write_text("\n".join(f"{t},{t}" for t in [0, 1, 2, 4, 5, 6] * 4))
    assert run(["transform", "--input", uneven, "--output-prefix", tmp_path / "o"],
               capsys)[0] == 2


def test_argparse_rejects_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2


# -- figure ------------------------------------------------------------------

def test_figure_area_map_minimum_near_airy_row(tmp_path):
    pre = tmp_path / "area"
    assert cli.main(["figure", "--which", "area-map", "--lattice", "1:4:7,-0.2:0.2:5",
                     "--output-prefix", str(pre)]) == 0
    rows = list(csv.DictReader(open(f"{pre}.csv")))
    assert list(rows[0]) == ["P_over_pi", "skew", "beta", "gamma", "quantity", "value"]
    best = min(rows, key=lambda r: float(r["value"]))
    assert float(best["value"]) < 0.51
    assert abs(float(best["gamma"]) - 3) < 1.0


def test_figure_freq_map_airy_row_inside_first_contour(tmp_path):
    pre = tmp_path / "freq"
    assert cli.main(["figure", "--which", "freq-map", "--lattice", "1:4:7,0:0.5:3",
                     "--output-prefix", str(pre)]) == 0
    rows = list(csv.DictReader(open(f"{pre}.csv")))
    airy = [r for r in rows if float(r["skew"]) == 0.0
            and r["quantity"] != "frequency_curvature"]
    assert airy and all(abs(float(r["value"])) < 0.0125 for r in airy)
    assert all(float(r["gamma"]) == pytest.approx(3.0) for r in airy)


def test_figure_invalid_lattice(tmp_path, capsys):
    code, out = run(["figure", "--which", "area-map", "--lattice", "1:2:3,-2:0:3",
                     "--output-prefix", tmp_path / "x"], capsys)
    assert code == 2 and "-3/P" in out.err
    code, _ = run(["figure", "--which", "area-map", "--lattice", "garbage",
                   "--output-prefix", tmp_path / "x"], capsys)
    assert code == 2


def test_figure_chirp(tmp_path):
    pre = tmp_path / "chirp"
    assert cli.main(["figure", "--which", "chirp", "--output-prefix", str(pre)]) == 0
    meta = json.load(open(f"{pre}.json"))
    assert meta["metric_ratio_morlet_over_morse"] > 10
    _, a = read_csv(f"{pre}_morse.csv")
    _, b = read_csv(f"{pre}_morlet.csv")
    assert a.shape[1] == b.shape[1]
    header, sig = read_csv(f"{pre}_signal.csv")
    assert header == ["t", "x", "phase_derivative"]


def test_figure_wigner(tmp_path):
    pre = tmp_path / "wv"
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert cli.main(["figure", "--which", "wigner", "--output-prefix", str(pre)]) == 0
    meta = json.load(open(f"{pre}.json"))
    header, d = read_csv(f"{pre}_morse.csv")
    cols = np.array([float(v) for v in header[1:]])
    assert np.all(np.abs(cols) <= 6.0) and np.all(np.abs(d[:, 0]) <= 16.0)
    assert d.shape == (65, cols.size + 1)
    assert meta["morse"]["negative_frequency_max_over_max"] < 1e-9
    assert meta["morlet"]["negative_frequency_max_over_max"] > 1e-4


def _digest(paths):
    return [hashlib.sha256(open(p, "rb").read()).hexdigest() for p in paths]


def test_outputs_are_deterministic(tmp_path):
    inp = tmp_path / "x.csv"
    _write_cos(inp, n=512)
    digests = []
    for rep in range(2):
        d = tmp_path / f"r{rep}"
        d.mkdir()
        cli.main(["transform", "--input", str(inp), "--output-prefix", str(d / "s")])
        cli.main(["figure", "--which", "wigner", "--points", "1024", "--t-max", "4",
                  "--output-prefix", str(d / "w")])
        cli.main(["props", "--beta", "5", "--gamma", "2", "-o", str(d / "p.json")])
        cli.main(["wavelet", "--beta", "2", "--gamma", "4", "-o", str(d / "w.csv")])
        digests.append(_digest([d / "s_real.csv", d / "s_imag.csv", d / "s.json",
                                d / "w_morse.csv", d / "w.json", d / "p.json", d / "w.csv"]))
    assert digests[0] == digests[1]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "morsekit", "props", "--beta", "4", "--gamma", "3"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["kind"] == "properties"

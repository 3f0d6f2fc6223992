"""Schema readers: correct parsing of golden artifacts, strict header checks."""

import os

import pytest

from figure_renderer.schemas import (
    SchemaError,
    read_projection,
    read_spectrum,
    read_trace,
)


def test_read_spectrum_shape_and_values(spectrum_csv):
    re, im = read_spectrum(spectrum_csv)
    assert len(re) == len(im) == 25  # n=25 run -> 25 eigenvalues
    # eigenvalues of the shifted Jacobian cluster around -1
    assert all(-3.0 < v < 1.0 for v in re)


def test_read_trace_phases(trace_csv):
    phases = read_trace(trace_csv)
    assert set(phases) == {"train", "test"}
    steps, zs, targets = phases["train"]
    assert len(steps) == len(zs) == len(targets) == 200
    assert steps == sorted(steps)
    # sinusoid target stays within unit amplitude
    assert all(abs(t) <= 1.0 + 1e-12 for t in targets)
    test_steps = phases["test"][0]
    assert len(test_steps) == 50
    assert test_steps[0] > steps[-1]


def test_read_projection(pc_csvs):
    steps, values = read_projection(pc_csvs[0])
    assert len(steps) == len(values) == 40
    # consecutive steps, offset by however long training ran
    assert steps == list(range(steps[0], steps[0] + 40))


def test_missing_file_raises():
    with pytest.raises(SchemaError, match="no such file"):
        read_spectrum("/nonexistent/spectra_0.csv")


def test_wrong_header_raises(tmp_path):
    bad = tmp_path / "spectra_0.csv"
    bad.write_text("real,imag\n1.0,2.0\n")
    with pytest.raises(SchemaError, match="expected header"):
        read_spectrum(str(bad))


def test_malformed_row_raises(tmp_path):
    bad = tmp_path / "pc_1.csv"
    bad.write_text("step,projection\n0,not-a-number\n")
    with pytest.raises(SchemaError, match="malformed"):
        read_projection(str(bad))


def test_trace_header_mismatch(tmp_path):
    bad = tmp_path / "trace.csv"
    bad.write_text("step,z,target\n0,0.0,0.0\n")
    with pytest.raises(SchemaError):
        read_trace(str(bad))


def test_readers_do_not_modify_inputs(spectrum_csv, trace_csv, pc_csvs):
    paths = [spectrum_csv, trace_csv, *pc_csvs]
    before = {p: open(p, "rb").read() for p in paths}
    read_spectrum(spectrum_csv)
    read_trace(trace_csv)
    for p in pc_csvs:
        read_projection(p)
    for p in paths:
        assert open(p, "rb").read() == before[p]
        assert os.path.getsize(p) == len(before[p])

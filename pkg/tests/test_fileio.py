import numpy as np
import pytest
from numpy.testing import assert_allclose

from cycshift import Measurement, SensingSet, measure
from cycshift.fileio import (
    load_measurement,
    load_signal,
    save_measurement,
    save_signal,
    sniff_kind,
)


def test_signal_round_trip(tmp_path):
    path = tmp_path / "sig.csv"
    x = np.random.default_rng(0).standard_normal(11)
    save_signal(path, x)
    assert_allclose(load_signal(path), x, atol=0)  # repr round-trips exactly


def test_signal_file_is_byte_deterministic(tmp_path):
    x = np.random.default_rng(1).standard_normal(6)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    save_signal(a, x)
    save_signal(b, x)
    assert a.read_bytes() == b.read_bytes()


def test_signal_header_and_layout(tmp_path):
    path = tmp_path / "sig.csv"
    save_signal(path, [1.5, -2.0])
    lines = path.read_text().splitlines()
    assert lines[0] == "# n=2"
    assert lines[1:] == ["1.5", "-2.0"]


def test_signal_without_header_loads(tmp_path):
    path = tmp_path / "bare.csv"
    path.write_text("1.0\n2.0\n\n3.0\n")
    assert_allclose(load_signal(path), [1.0, 2.0, 3.0])


def test_signal_header_count_mismatch(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("# n=4\n1.0\n2.0\n")
    with pytest.raises(ValueError):
        load_signal(path)


def test_signal_parse_error(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1.0\nnot-a-number\n")
    with pytest.raises(ValueError):
        load_signal(path)


def test_measurement_round_trip(tmp_path):
    path = tmp_path / "meas.csv"
    x = np.random.default_rng(2).standard_normal(8)
    m = measure(x, SensingSet(8, (1, 3, 6)))
    save_measurement(path, m)
    loaded = load_measurement(path)
    assert loaded.sensing == m.sensing
    assert_allclose(loaded.values, m.values, atol=0)


def test_measurement_requires_headers(tmp_path):
    path = tmp_path / "meas.csv"
    path.write_text("0.5,0.5\n")
    with pytest.raises(ValueError):
        load_measurement(path)


def test_signal_loader_rejects_measurement_file(tmp_path):
    path = tmp_path / "meas.csv"
    save_measurement(path, Measurement(np.array([1 + 2j]), SensingSet(4, (2,))))
    with pytest.raises(ValueError):
        load_signal(path)


def test_sniff_kind(tmp_path):
    sig = tmp_path / "sig.csv"
    save_signal(sig, [1.0, 2.0])
    meas = tmp_path / "meas.csv"
    save_measurement(meas, Measurement(np.array([1j]), SensingSet(4, (1,))))
    assert sniff_kind(sig) == "signal"
    assert sniff_kind(meas) == "measurement"

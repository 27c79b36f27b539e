import glob
import os

import numpy as np
import pytest

from isacpulse import serialize
from isacpulse.spectrum import rrc_spectrum, spectrum_to_acf

from helpers import small_grid


def test_csv_round_trip(tmp_path):
    path = str(tmp_path / "out.csv")
    cols = {"lag": np.arange(5), "value": np.linspace(-1.0, 1.0, 5)}
    serialize.write_csv(path, cols, {"beta": 0.3, "note": "x", "betas": [0.1, 0.2]})
    meta, data = serialize.read_csv(path)
    assert meta["beta"] == "0.3"
    assert meta["betas"] == "[0.1, 0.2]"
    assert np.array_equal(data["lag"], cols["lag"])
    assert np.array_equal(data["value"], cols["value"])


def test_csv_floats_survive_exactly(tmp_path):
    path = str(tmp_path / "f.csv")
    vals = np.array([np.pi, 1e-17, -3.5, 2**-40])
    serialize.write_csv(path, {"v": vals}, {})
    _, data = serialize.read_csv(path)
    assert np.array_equal(data["v"], vals)  # repr round-trips float64 exactly


def test_csv_rejects_ragged_columns(tmp_path):
    with pytest.raises(ValueError, match="equal length"):
        serialize.write_csv(str(tmp_path / "bad.csv"), {"a": [1, 2], "b": [1]}, {})


def test_csv_no_temp_files_left(tmp_path):
    path = str(tmp_path / "atomic.csv")
    serialize.write_csv(path, {"a": [1.0]}, {})
    assert glob.glob(str(tmp_path / "*.tmp.*")) == []
    assert os.path.exists(path)


def test_read_csv_without_header_fails(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("# only=meta\n")
    with pytest.raises(ValueError, match="header"):
        serialize.read_csv(str(path))


def test_json_round_trip(tmp_path):
    path = str(tmp_path / "r.json")
    payload = {"b": 1, "a": [1.5, 2.5]}
    serialize.write_json(path, payload)
    assert serialize.read_json(path) == payload


def test_spectrum_dict_round_trip():
    s = rrc_spectrum(small_grid())
    s2 = serialize.spectrum_from_dict(serialize.spectrum_to_dict(s))
    assert s2.grid == s.grid
    assert np.array_equal(s2.omega, s.omega)


def test_acf_dict_round_trip():
    acf = spectrum_to_acf(rrc_spectrum(small_grid()))
    acf2 = serialize.acf_from_dict(serialize.acf_to_dict(acf))
    assert acf2.grid == acf.grid
    assert np.array_equal(acf2.psi, acf.psi)

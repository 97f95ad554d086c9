import json
import pathlib

import pytest

import skly

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def load(name):
    return json.loads((DATA / name).read_text())


def test_version():
    assert skly.__version__


def test_construct_quadratic_hilbert():
    rep = skly.construct(load("quadratic_f10007.json"))
    assert rep["hilbert"] == [(n + 1) * (n + 2) // 2 for n in range(11)]
    assert rep["relation_count"] == 3
    assert rep["central"] == {
        "degree": 3,
        "dimension": 1,
        "element": rep["central"]["element"],
    }


def test_cubic_hilbert():
    rep = skly.hilbert(load("quadric_to_plane_f10007.json"))
    assert rep["hilbert"][:7] == [1, 2, 4, 6, 9, 12, 16]


def test_cremona_certificate():
    cfg = load("cremona_f10007.json")
    cfg["window"] = {"m0": 0, "m1": 1, "amax": 2}
    rep = skly.cremona(cfg)
    assert rep["certificate"]["pass"] is True
    assert rep["output"]["class"]["degree"] == 3


def test_quadric_to_plane_torsion():
    cfg = load("quadric_to_plane_f10007.json")
    cfg["window"] = {"m0": 0, "m1": 1, "amax": 2}
    rep = skly.quadric_to_plane(cfg)
    assert rep["certificate"]["pass"] is True
    assert rep["psi"]["exact"] is True


def test_bad_config_raises():
    with pytest.raises(ValueError):
        skly.construct({"field": "not-a-prime"})

import json
import logging

import numpy as np
import pytest

from conjroof.antilinear import AntilinearOp, hill_wootters
from conjroof.errors import NotPSDError, ParseError
from conjroof.io import (ensemble_document, from_pairs, load_ensemble, load_operator, load_state,
                         operator_document, state_document, to_pairs, write_json)
from conjroof.roofs import Ensemble
from conjroof.sampling import random_density


def dump(tmp_path, doc, name="f.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


def test_pairs_roundtrip(rng):
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    assert np.array_equal(from_pairs(to_pairs(a)), a)


def test_state_roundtrip(tmp_path, rng):
    rho = random_density(4, rng)
    path = tmp_path / "s.json"
    write_json(state_document(rho, [2, 2], "x"), path)
    loaded, meta = load_state(path)
    assert np.array_equal(loaded, rho)
    assert meta == {"dims": [2, 2], "label": "x"}


@pytest.mark.parametrize("doc", [
    {"dim": 2},
    {"matrix": [[1, 0], [0, 1]]},
    {"matrix": [[[1, 0], [0, 0]]]},
    {"dim": 3, "matrix": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]},
    {"matrix": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]], "dims": [3]},
    {"matrix": [[["a", 0], [0, 0]], [[0, 0], [0, 0]]]},
    [1, 2],
])
def test_malformed_state(tmp_path, doc):
    with pytest.raises(ParseError):
        load_state(dump(tmp_path, doc))


def test_not_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ParseError):
        load_state(path)


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        load_state(tmp_path / "absent.json")


def test_non_psd(tmp_path):
    doc = state_document(np.diag([1.0, -0.5]))
    with pytest.raises(NotPSDError):
        load_state(dump(tmp_path, doc))


def test_trace_warning(tmp_path, caplog):
    with caplog.at_level(logging.WARNING, logger="conjroof"):
        load_state(dump(tmp_path, state_document(np.eye(2))))
    assert "trace" in caplog.text


def test_operator_kind(tmp_path, caplog):
    path = tmp_path / "op.json"
    write_json(operator_document(hill_wootters()), path)
    theta, kind = load_operator(path)
    assert kind == "conjugation" and np.array_equal(theta.matrix, hill_wootters().matrix)
    write_json(operator_document(AntilinearOp(np.eye(2)), "skew"), path)
    with caplog.at_level(logging.WARNING, logger="conjroof"):
        load_operator(path)
    assert "does not match" in caplog.text


def test_unknown_kind(tmp_path):
    doc = operator_document(AntilinearOp(np.eye(2)), "banana")
    with pytest.raises(ParseError):
        load_operator(dump(tmp_path, doc))


def test_ensemble_full_precision(tmp_path, rng):
    ens = Ensemble(rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3)))
    path = tmp_path / "e.json"
    write_json(ensemble_document(ens, "min"), path)
    assert np.array_equal(load_ensemble(path).vectors, ens.vectors)

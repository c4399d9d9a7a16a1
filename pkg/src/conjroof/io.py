"""JSON file formats for states, antilinear operators and ensembles.

Complex numbers are always ``[re, im]`` pairs and matrices are row-major
nested lists::

    {"dim": 2, "matrix": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]],
     "dims": [2], "label": "maximally mixed"}

Operator files carry a ``kind`` string instead of ``dims``/``label``;
ensemble files hold ``vectors``, a list of complex vectors.
"""

import json
import logging

import numpy as np

from .antilinear import AntilinearOp, classify
from .errors import ParseError
from .matcore import as_density
from .roofs import Ensemble

log = logging.getLogger("conjroof")

KINDS = ("conjugation", "skew", "hermitian", "anti_hermitian", "antiunitary", "general")


def to_pairs(a):
    a = np.asarray(a, dtype=complex)
    return np.stack([a.real, a.imag], axis=-1).tolist()


def from_pairs(data, name="matrix"):
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{name}: not a nested array of numbers") from exc
    if arr.ndim < 1 or arr.shape[-1] != 2:
        raise ParseError(f"{name}: complex entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def _read(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    return doc


def _matrix(doc, path):
    if "matrix" not in doc:
        raise ParseError(f"{path}: missing 'matrix'")
    m = from_pairs(doc["matrix"])
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ParseError(f"{path}: matrix must be square")
    if "dim" in doc and doc["dim"] != m.shape[0]:
        raise ParseError(f"{path}: dim {doc['dim']} does not match matrix size {m.shape[0]}")
    return m


def parse_state(doc, path="<state>"):
    rho = as_density(_matrix(doc, path))
    dims = doc.get("dims")
    if dims is not None:
        if not all(isinstance(d, int) and d > 0 for d in dims):
            raise ParseError(f"{path}: dims must be positive integers")
        if int(np.prod(dims)) != rho.shape[0]:
            raise ParseError(f"{path}: dims {dims} do not multiply to {rho.shape[0]}")
    trace = np.trace(rho).real
    if abs(trace - 1) > 1e-6:
        log.warning("%s: trace %.12g differs from 1", path, trace)
    return rho, {"dims": dims, "label": doc.get("label")}


def load_state(path):
    return parse_state(_read(path), path)


def load_operator(path):
    doc = _read(path)
    theta = AntilinearOp(_matrix(doc, path))
    declared = doc.get("kind")
    if declared is not None:
        if declared not in KINDS:
            raise ParseError(f"{path}: unknown kind {declared!r}")
        if not getattr(classify(theta), declared, declared == "general"):
            log.warning("%s: declared kind %r does not match the matrix (%s)",
                        path, declared, classify(theta).label)
    return theta, declared


def state_document(rho, dims=None, label=None):
    rho = np.asarray(rho, dtype=complex)
    doc = {"dim": rho.shape[0], "matrix": to_pairs(rho)}
    if dims is not None:
        doc["dims"] = list(dims)
    if label is not None:
        doc["label"] = label
    return doc


def operator_document(theta, kind=None):
    return {"dim": theta.dim, "matrix": to_pairs(theta.matrix),
            "kind": kind or classify(theta).label}


def ensemble_document(ens, mode=None):
    doc = {"dim": ens.dim, "length": ens.length, "vectors": to_pairs(ens.vectors)}
    if mode is not None:
        doc["mode"] = mode
    return doc


def write_json(doc, path):
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_ensemble(path):
    doc = _read(path)
    if "vectors" not in doc:
        raise ParseError(f"{path}: missing 'vectors'")
    vecs = from_pairs(doc["vectors"], "vectors")
    if vecs.ndim != 2:
        raise ParseError(f"{path}: vectors must be a list of complex vectors")
    return Ensemble(vecs)

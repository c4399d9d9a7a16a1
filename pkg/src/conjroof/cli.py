"""Command-line interface: ``conjroof <command> [options]``.

Every command prints one JSON report on stdout.  Reports are deterministic
for fixed inputs and seed: keys are sorted and every number carries 12
significant digits.  Warnings and the wall time go to stderr.

Exit codes: 0 ok, 1 invariant failure, 2 parse or validation error,
3 dimension mismatch, 4 operator class error, 5 unsupported dimensions.
"""

import argparse
import hashlib
import json
import logging
import sys
import time

import numpy as np

from . import __version__
from .antilinear import classify, expectation
from .entangle import (bipartite_witness, eof_2qubit, eof_lower_bound, f_hw, pure_witness_supremum,
                       schmidt, schmidt_pairing_value, sup_concurrence_search,
                       tailored_conjugation, three_qubit_mixed_test, three_qubit_product_test)
from .errors import (ConjroofError, DimensionMismatchError, OperatorClassError, ParseError,
                     UnsupportedDimsError)
from .io import ensemble_document, load_ensemble, load_operator, load_state, write_json
from .measures import (concurrence_pair, singular_numbers, theta_concurrence, theta_fidelity,
                       wootters_concurrence)
from .roofs import ensemble_value, optimal_ensemble, required_length
from .verify import run_verify

log = logging.getLogger("conjroof")

EXIT_OK, EXIT_INVARIANT, EXIT_INPUT, EXIT_DIMS, EXIT_OPERATOR, EXIT_UNSUPPORTED = range(6)
SIG_DIGITS = 12
PURE_TOL = 1e-10
ATTAIN_TOL = 1e-8
RESIDUAL_TOL = 1e-9
ROUNDTRIP_TOL = 1e-10


def rounded(x):
    """Recursively convert to JSON types, floats to 12 significant digits."""
    if isinstance(x, dict):
        return {str(k): rounded(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [rounded(v) for v in x]
    if isinstance(x, np.ndarray):
        if np.iscomplexobj(x):
            x = np.stack([x.real, x.imag], axis=-1)
        return rounded(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [rounded(x.real), rounded(x.imag)]
    if isinstance(x, (float, np.floating)):
        if not np.isfinite(x):
            return str(float(x))
        v = float(f"{float(x):.{SIG_DIGITS}g}")
        return 0.0 if v == 0 else v
    return x


def digest(path):
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def parse_dims(text):
    try:
        dims = [int(p) for p in text.lower().split("x")]
    except ValueError as exc:
        raise ParseError(f"dims must look like AxB or AxBxC, got {text!r}") from exc
    if len(dims) < 2 or min(dims) < 1:
        raise ParseError(f"dims must have at least two positive factors, got {text!r}")
    return dims


def _state_dims(args, rho, meta):
    dims = parse_dims(args.dims) if args.dims else meta["dims"]
    if dims is None:
        raise ParseError("factor dimensions needed: pass --dims or set 'dims' in the state file")
    if int(np.prod(dims)) != rho.shape[0]:
        raise DimensionMismatchError(f"dims {dims} do not match state dimension {rho.shape[0]}")
    return list(dims)


def _pure_vector(rho):
    """Normalized vector if ``rho`` has rank one, else None."""
    w, v = np.linalg.eigh(rho)
    if w.size > 1 and w[-2] > PURE_TOL * w.sum():
        return None
    return v[:, -1]


def _same_dims(*mats):
    dims = {m.shape[0] for m in mats}
    if len(dims) > 1:
        raise DimensionMismatchError(f"inputs have different dimensions {sorted(dims)}")


def _witness_values(report):
    return [{"label": label, "value": value} for label, value in report.values]


def cmd_fidelity(args, inputs):
    rho, _ = load_state(args.rho)
    omega, _ = load_state(args.omega)
    inputs.update(rho=args.rho, omega=args.omega)
    _same_dims(rho, omega)
    s = singular_numbers(rho, omega)
    f = float(np.sum(s))
    return {"fidelity": f, "transition_probability": f * f, "singular_numbers": s}, {}


def cmd_concurrence(args, inputs):
    rho, _ = load_state(args.rho)
    omega, _ = load_state(args.omega)
    inputs.update(rho=args.rho, omega=args.omega)
    _same_dims(rho, omega)
    return {"concurrence": concurrence_pair(rho, omega),
            "singular_numbers": singular_numbers(rho, omega)}, {}


def _state_and_operator(args, inputs):
    rho, meta = load_state(args.rho)
    theta, _ = load_operator(args.op)
    inputs.update(rho=args.rho, op=args.op)
    if theta.dim != rho.shape[0]:
        raise DimensionMismatchError(
            f"state of dimension {rho.shape[0]} for operator of dimension {theta.dim}")
    if not classify(theta).hermitian:
        raise OperatorClassError("operator must be antilinearly Hermitian (symmetric matrix)")
    return rho, meta, theta


def cmd_theta(args, inputs):
    rho, _, theta = _state_and_operator(args, inputs)
    results = {"operator_kind": classify(theta).label}
    if args.quantity in ("fidelity", "both"):
        r = theta_fidelity(rho, theta)
        results["theta_fidelity"] = r.value
        results["takagi_values"] = r.spectrum
    if args.quantity in ("concurrence", "both"):
        r = theta_concurrence(rho, theta)
        results["theta_concurrence"] = r.value
        results["takagi_values"] = r.spectrum
    return results, {}


def cmd_decompose(args, inputs):
    rho, _, theta = _state_and_operator(args, inputs)
    spectrum = theta_fidelity(rho, theta).spectrum
    target = (theta_concurrence if args.mode == "min" else theta_fidelity)(rho, theta).value
    ens = optimal_ensemble(rho, theta, args.mode)
    write_json(ensemble_document(ens, args.mode), args.out)
    achieved = ensemble_value(ens, theta)
    residual = ens.residual(rho)
    reloaded = ensemble_value(load_ensemble(args.out), theta)
    results = {"mode": args.mode, "length": ens.length, "target": target,
               "achieved": achieved, "residual": residual, "takagi_values": spectrum,
               "weights": ens.weights, "ensemble_path": args.out,
               "ensemble_sha256": digest(args.out)}
    checks = {"attained": abs(achieved - target) <= ATTAIN_TOL,
              "reconstructs": residual <= RESIDUAL_TOL,
              "length": ens.length == required_length(rho.shape[0]),
              "roundtrip": abs(reloaded - achieved) <= ROUNDTRIP_TOL}
    return results, checks


def _three_qubit(rho, dims):
    if dims != [2, 2, 2]:
        raise UnsupportedDimsError(f"three-qubit test needs dims 2x2x2, got {dims}")
    psi = _pure_vector(rho)
    reports = {}
    for variant in ("8", "12"):
        if psi is not None:
            reports[variant] = three_qubit_product_test(psi, variant)
        else:
            reports[variant] = three_qubit_mixed_test(rho, variant)
    first = reports["8"]
    return {"test": "three_qubit", "pure": psi is not None, "values": _witness_values(first),
            "verdict": first.verdict, "certificate": first.certificate,
            "verdict_12": reports["12"].verdict,
            "variants_agree": reports["8"].verdict == reports["12"].verdict}


def cmd_witness(args, inputs):
    rho, meta = load_state(args.rho)
    inputs.update(rho=args.rho)
    dims = _state_dims(args, rho, meta)
    if args.three_qubit:
        return _three_qubit(rho, dims), {}
    if len(dims) != 2:
        raise UnsupportedDimsError("bipartite witness needs two factors; use --three-qubit")
    rep = bipartite_witness(rho, dims, args.trials, args.seed)
    results = {"test": "bipartite", "values": _witness_values(rep), "verdict": rep.verdict,
               "certificate": rep.certificate}
    psi = _pure_vector(rho)
    if psi is not None:
        da, db = dims
        coeffs = schmidt(psi, da, db).coefficients
        pure = {"schmidt_coefficients": coeffs,
                "schmidt_pairing_value": schmidt_pairing_value(coeffs)}
        if da % 2 == 0 and db % 2 == 0:
            pure["tailored_value"] = abs(expectation(tailored_conjugation(psi, da, db), psi))
        if da == 2 and db % 2 == 0:
            pure["closed_form_supremum"] = pure_witness_supremum(psi, da, db)
        results["pure"] = pure
    return results, {}


def cmd_eof(args, inputs):
    rho, meta = load_state(args.rho)
    inputs.update(rho=args.rho)
    dims = _state_dims(args, rho, meta)
    if len(dims) != 2 or dims[0] != 2 or dims[1] % 2:
        raise UnsupportedDimsError(f"entanglement of formation needs dims 2x2n, got {dims}")
    if dims == [2, 2]:
        c = wootters_concurrence(rho)
        return {"eof": eof_2qubit(rho), "kind": "exact", "concurrence": c}, {}
    psi = _pure_vector(rho)
    if psi is not None:
        c = pure_witness_supremum(psi, *dims)
        return {"eof": f_hw(min(c, 1.0)), "kind": "exact", "concurrence": c}, {}
    c, _ = sup_concurrence_search(rho, dims, args.trials, args.seed)
    return {"eof": eof_lower_bound(rho, dims, args.trials, args.seed), "kind": "lower_bound",
            "concurrence_estimate": c}, {}


def cmd_verify(args, inputs):
    rho = None
    if args.rho:
        rho, _ = load_state(args.rho)
        inputs.update(rho=args.rho)
    elif args.dim is None:
        raise ParseError("verify needs --dim or --rho")
    out = run_verify(args.dim, args.trials, args.seed, rho)
    results = {"dim": out["dim"], "trials": out["trials"], "families": out["checks"]}
    return results, {name: entry["passed"] for name, entry in out["checks"].items()}


COMMANDS = {"fidelity": cmd_fidelity, "concurrence": cmd_concurrence, "theta": cmd_theta,
            "decompose": cmd_decompose, "witness": cmd_witness, "eof": cmd_eof,
            "verify": cmd_verify}


def build_parser():
    p = argparse.ArgumentParser(prog="conjroof", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"conjroof {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    for name, helptext in (("fidelity", "fidelity and transition probability"),
                           ("concurrence", "concurrence of a pair of states")):
        c = sub.add_parser(name, help=helptext)
        c.add_argument("--rho", required=True)
        c.add_argument("--omega", required=True)

    c = sub.add_parser("theta", help="theta-fidelity and theta-concurrence")
    c.add_argument("--rho", required=True)
    c.add_argument("--op", required=True)
    c.add_argument("--quantity", choices=("fidelity", "concurrence", "both"), default="both")

    c = sub.add_parser("decompose", help="optimal decomposition attaining C or F")
    c.add_argument("--rho", required=True)
    c.add_argument("--op", required=True)
    c.add_argument("--mode", choices=("min", "max"), default="min")
    c.add_argument("--out", required=True)

    c = sub.add_parser("witness", help="separability witness")
    c.add_argument("--rho", required=True)
    c.add_argument("--dims")
    c.add_argument("--trials", type=int, default=200)
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--three-qubit", action="store_true")

    c = sub.add_parser("eof", help="entanglement of formation (exact or lower bound)")
    c.add_argument("--rho", required=True)
    c.add_argument("--dims")
    c.add_argument("--trials", type=int, default=200)
    c.add_argument("--seed", type=int, required=True)

    c = sub.add_parser("verify", help="seeded invariant suite")
    c.add_argument("--dim", type=int)
    c.add_argument("--rho")
    c.add_argument("--trials", type=int, default=100)
    c.add_argument("--seed", type=int, required=True)
    return p


def _exit_code(exc):
    if isinstance(exc, DimensionMismatchError):
        return EXIT_DIMS
    if isinstance(exc, OperatorClassError):
        return EXIT_OPERATOR
    if isinstance(exc, UnsupportedDimsError):
        return EXIT_UNSUPPORTED
    return EXIT_INPUT


def run(argv=None):
    """Run one command; returns ``(exit code, report dict or None)``."""
    args = build_parser().parse_args(argv)
    echo = {k: v for k, v in sorted(vars(args).items()) if v is not None}
    inputs = {}
    try:
        results, checks = COMMANDS[args.command](args, inputs)
    except ConjroofError as exc:
        log.error("%s", exc)
        return _exit_code(exc), None
    report = {"command": echo, "version": __version__, "seed": getattr(args, "seed", None),
              "inputs": {k: {"path": v, "sha256": digest(v)} for k, v in sorted(inputs.items())},
              "results": results, "checks": checks,
              "passed": all(checks.values())}
    return (EXIT_OK if report["passed"] else EXIT_INVARIANT), rounded(report)


def main(argv=None):
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("conjroof: %(levelname)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO)
    log.propagate = False
    start = time.perf_counter()
    try:
        code, report = run(argv)
        if report is not None:
            sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
        log.info("wall time %.3f s", time.perf_counter() - start)
        return code
    finally:
        log.removeHandler(handler)

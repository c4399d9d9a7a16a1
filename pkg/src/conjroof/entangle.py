"""Entanglement witnesses and bounds built from skew conjugations.

A tensor product of two skew conjugations (or, for odd local dimension, of
antilinear factors with ``theta^dagger = -theta``) is antilinearly Hermitian
and has vanishing expectation on every product vector.  A positive
theta-concurrence therefore certifies entanglement.
"""

import itertools
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .antilinear import (SIGMA_X, SIGMA_Y, SIGMA_Z, AntilinearOp, compress, expectation,
                         hermitian_part, hill_wootters, skew_from_basis, skew_pairing, tensor,
                         tensor_all)
from .errors import DimensionMismatchError, NotPSDError, ShapeError, UnsupportedDimsError
from .matcore import as_density, hinge, psd_sqrt
from .measures import theta_concurrence, wootters_concurrence
from .sampling import as_rng, random_unitary

WITNESS_THRESHOLD = 1e-9
SEPARABLE = "separable-consistent"
ENTANGLED = "entangled-witnessed"


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    coefficients: np.ndarray  # descending
    left_basis: np.ndarray  # columns phi^a_j
    right_basis: np.ndarray  # columns phi^b_j

    def vector(self):
        return np.einsum("j,aj,bj->ab", self.coefficients, self.left_basis,
                         self.right_basis).reshape(-1)


@dataclass(frozen=True, eq=False)
class WitnessReport:
    values: list  # (label, value) pairs
    verdict: str
    certificate: np.ndarray = None
    extra: dict = field(default_factory=dict)

    @property
    def witnessed(self):
        return self.verdict == ENTANGLED


def _report(values, certificates, threshold):
    best = max(range(len(values)), key=lambda k: values[k][1], default=None)
    witnessed = best is not None and values[best][1] > threshold
    return WitnessReport(values, ENTANGLED if witnessed else SEPARABLE,
                         certificates[best] if witnessed else None)


def schmidt(psi, da, db):
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (da * db,):
        raise ShapeError(f"vector of length {psi.shape} does not match {da}x{db}")
    u, s, vh = np.linalg.svd(psi.reshape(da, db), full_matrices=False)
    return SchmidtDecomposition(s, u, vh.T)


def complete_basis(cols, d):
    """Extend orthonormal columns to a basis by Gram-Schmidt on unit vectors."""
    basis = [c for c in np.asarray(cols, dtype=complex).T]
    for e in np.eye(d, dtype=complex):
        if len(basis) == d:
            break
        v = e - sum(np.vdot(b, e) * b for b in basis)
        v = v - sum(np.vdot(b, v) * b for b in basis)
        n = np.linalg.norm(v)
        if n > 1e-8:
            basis.append(v / n)
    return np.array(basis).T


def schmidt_pairing_value(coefficients):
    """``2 * sum_j alpha_{2j} alpha_{2j-1}`` over consecutive coefficient pairs."""
    a = np.asarray(coefficients, dtype=float)
    a = a[: len(a) - len(a) % 2]
    return float(2 * np.sum(a[0::2] * a[1::2]))


def tailored_conjugation(psi, da, db):
    """Product of skew conjugations whose theta-bases are the Schmidt bases of ``psi``."""
    if da % 2 or db % 2:
        raise UnsupportedDimsError("tailored conjugation needs even local dimensions")
    sd = schmidt(psi, da, db)
    left = complete_basis(sd.left_basis, da)
    right = complete_basis(sd.right_basis, db)
    return tensor(skew_from_basis(left), skew_from_basis(right))


def reduced_state(psi, da, db):
    m = np.asarray(psi, dtype=complex).reshape(da, db)
    return m @ m.conj().T


def pure_witness_supremum(psi, da, db):
    """``2 sqrt(det rho_a)`` for a qubit first factor."""
    if da != 2:
        raise UnsupportedDimsError("closed form needs a 2-dimensional first factor")
    if db % 2:
        raise UnsupportedDimsError("second factor must be even dimensional")
    det = np.linalg.det(reduced_state(psi, da, db)).real
    return float(2 * np.sqrt(max(det, 0.0)))


def witness_factor(u):
    """Anti-Hermitian factor ``u J u^T``; in odd dimension the last column is dropped.

    Even dimension gives a skew conjugation, odd dimension a skew conjugation
    on a codimension-one subspace that vanishes on its complement.
    """
    d = u.shape[0]
    v = u if d % 2 == 0 else u[:, : d - 1]
    return AntilinearOp(v @ skew_pairing(v.shape[1]) @ v.T)


def _canonical_factors(d):
    if d % 2 == 0:
        return [AntilinearOp(skew_pairing(d))]
    out = []
    for k in range(d):
        perm = np.eye(d, dtype=complex)[:, [j for j in range(d) if j != k] + [k]]
        out.append(witness_factor(perm))
    return out


def hermitian_witness_family(dims, samples=0, seed=0):
    """Antilinearly Hermitian witnesses ``theta_a (x) theta_b`` for a bipartite split.

    Deterministic members use the standard pairing (even dimension) or drop
    one coordinate (odd dimension).  ``samples`` further members are
    conjugated by random local unitaries.
    """
    if len(dims) != 2:
        raise UnsupportedDimsError("witness family is defined for two factors")
    da, db = dims
    family = [tensor(a, b) for a, b in
              itertools.product(_canonical_factors(da), _canonical_factors(db))]
    rng = as_rng(seed)
    for _ in range(samples):
        family.append(tensor(witness_factor(random_unitary(da, rng)),
                             witness_factor(random_unitary(db, rng))))
    return family


def _hermitian_generators(d):
    gens = []
    for j in range(d):
        g = np.zeros((d, d), dtype=complex)
        g[j, j] = 1
        gens.append(g)
        for k in range(j + 1, d):
            g = np.zeros((d, d), dtype=complex)
            g[j, k] = g[k, j] = 1
            gens.append(g)
            g = np.zeros((d, d), dtype=complex)
            g[j, k], g[k, j] = -1j, 1j
            gens.append(g)
    return gens


class _Objective:
    def __init__(self, rho, dims):
        self.s = psd_sqrt(rho)
        self.dims = dims

    def factors(self, us):
        return [witness_factor(u).matrix for u in us]

    def __call__(self, us):
        fa, fb = self.factors(us)
        n = self.s @ np.kron(fa, fb) @ self.s.T
        return hinge(np.linalg.svd(n, compute_uv=False))


def _refine(obj, us, value, sweeps):
    """Greedy coordinate ascent on local unitaries with step halving."""
    us = [u.copy() for u in us]
    # qubit skew conjugations are unique up to phase: nothing to refine there
    active = [i for i, d in enumerate(obj.dims) if d > 2]
    gens = {i: _hermitian_generators(obj.dims[i]) for i in active}
    step = 0.5
    for _ in range(sweeps):
        improved = False
        for i in active:
            for g in gens[i]:
                for sgn in (1.0, -1.0):
                    trial = list(us)
                    trial[i] = us[i] @ expm(1j * sgn * step * g)
                    v = obj(trial)
                    if v > value:
                        us, value, improved = trial, v, True
                        break
        if not improved:
            step /= 2
    return us, value


def sup_concurrence_search(rho, dims, trials=200, seed=0, sweeps=50):
    """Lower estimate of ``sup C_theta(rho)`` over the witness family.

    Each trial draws local unitaries from a generator seeded by
    ``(seed, trial)``.  Every trial whose raw value beats all earlier trials
    is refined by coordinate ascent, so the result never decreases when
    ``trials`` grows.  Returns ``(value, theta)``.
    """
    rho = as_density(rho)
    if len(dims) != 2 or dims[0] * dims[1] != rho.shape[0]:
        raise DimensionMismatchError(f"dims {dims} do not match dimension {rho.shape[0]}")
    obj = _Objective(rho, tuple(dims))
    best_raw = -np.inf
    best_value, best_us = -np.inf, None
    for t in range(max(trials, 1)):
        rng = np.random.default_rng([seed, t])
        us = [random_unitary(d, rng) for d in dims]
        raw = obj(us)
        if raw <= best_raw:
            continue
        best_raw = raw
        us, value = _refine(obj, us, raw, sweeps)
        if value > best_value:
            best_value, best_us = value, us
    fa, fb = obj.factors(best_us)
    return float(best_value), AntilinearOp(np.kron(fa, fb))


def f_hw(x, tol=1e-12):
    """``s((1 + sqrt(1 - x^2)) / 2) + s((1 - sqrt(1 - x^2)) / 2)``, ``s(y) = -y ln y``."""
    if x < -tol or x > 1 + tol:
        raise ValueError(f"f_hw argument {x} outside [0, 1]")
    if x < 0 or x > 1:
        warnings.warn(f"f_hw argument {x} clamped to [0, 1]")
    x = min(max(float(x), 0.0), 1.0)
    r = np.sqrt(1.0 - x * x)
    return float(sum(-y * np.log(y) for y in ((1 + r) / 2, (1 - r) / 2) if y > 0))


def eof_2qubit(rho):
    return f_hw(wootters_concurrence(rho))


def eof_lower_bound(rho, dims, trials=200, seed=0):
    """``f_hw`` of the searched supremum; exact for two qubits."""
    da, db = dims
    if da != 2 or db % 2:
        raise UnsupportedDimsError("entanglement of formation bound needs dims 2 x 2n")
    value, _ = sup_concurrence_search(rho, dims, trials, seed)
    return f_hw(min(value, 1.0))


def bipartite_witness(rho, dims, trials=200, seed=0, threshold=WITNESS_THRESHOLD):
    """Theta-concurrences of the canonical family plus the searched optimum."""
    rho = as_density(rho)
    family = hermitian_witness_family(dims)
    values, certs = [], []
    for k, theta in enumerate(family):
        values.append((f"family[{k}]", theta_concurrence(rho, theta).value))
        certs.append(theta.matrix)
    if trials > 0:
        value, theta = sup_concurrence_search(rho, dims, trials, seed)
        values.append(("search", value))
        certs.append(theta.matrix)
    return _report(values, certs, threshold)


def _slot_operator(slot, u):
    factors = [AntilinearOp(SIGMA_Y) for _ in range(3)]
    factors[slot] = AntilinearOp(u @ SIGMA_Y)
    return tensor_all(factors)


_PAULI_NAMES = {"1": np.eye(2, dtype=complex), "s1": SIGMA_X, "s2": SIGMA_Y, "s3": SIGMA_Z}
_EIGHT = ((0, ("1", "s3", "s1", "s2")), (1, ("s1", "s2")), (2, ("s1", "s2")))
_TWELVE = tuple((slot, ("1", "s1", "s2", "s3")) for slot in range(3))


def three_qubit_operators(variant="8"):
    """Labelled ``U theta`` operators, one non-trivial ``U`` per listed slot.

    ``variant="8"``: slot 1 uses ``1, s3, s1, s2``; slots 2 and 3 use
    ``s1, s2``.  ``variant="12"``: all four Paulis in every slot.
    """
    groups = {"8": _EIGHT, "12": _TWELVE}[variant]
    return [(f"slot{slot + 1}:{name}", _slot_operator(slot, _PAULI_NAMES[name]))
            for slot, names in groups for name in names]


def three_qubit_product_test(psi, variant="8", threshold=WITNESS_THRESHOLD):
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (8,):
        raise ShapeError("three-qubit test needs a vector of length 8")
    ops = three_qubit_operators(variant)
    values = [(label, abs(expectation(theta, psi))) for label, theta in ops]
    return _report(values, [theta.matrix for _, theta in ops], threshold)


def three_qubit_mixed_test(rho, variant="8", threshold=WITNESS_THRESHOLD):
    """Same operator list, evaluated as theta-concurrences of a density operator.

    The expectation values of each operator only see its Hermitian part, so
    the convex roof of ``|<psi, theta psi>|`` is the theta-concurrence of that
    part.  Members with vanishing Hermitian part contribute 0.
    """
    ops = three_qubit_operators(variant)
    values = [(label, theta_concurrence(rho, hermitian_part(theta)).value) for label, theta in ops]
    return _report(values, [theta.matrix for _, theta in ops], threshold)


@dataclass(frozen=True)
class Rank2SpanParams:
    a: float
    b: float

    @property
    def c(self):
        return float(np.sqrt(max((1 - self.a**2) * (1 - self.b**2), 0.0)))

    @property
    def a_plus(self):
        return self.c / (1 + self.a * self.b)

    @property
    def a_minus(self):
        return self.c / (1 - self.a * self.b) if self.c else 0.0

    @property
    def amplitude(self):
        return self.c / (1 - (self.a * self.b) ** 2) if self.c else 0.0


@dataclass(frozen=True, eq=False)
class Rank2Span:
    params: Rank2SpanParams
    embedding: np.ndarray  # 4x2, columns phi_plus, phi_minus
    projector: np.ndarray
    hill_wootters: AntilinearOp  # phase fixed so the overlap is real positive
    theta: AntilinearOp  # compression of hill_wootters onto the span
    psi0: np.ndarray
    psi1: np.ndarray

    def embed(self, x):
        e = self.embedding
        return e @ x.matrix() @ e.conj().T


def rank2_closed_forms(params, x, tol=1e-12):
    """Theta-fidelity and -concurrence on the span of two product vectors."""
    if not x.is_psd():
        raise NotPSDError(f"Bloch vector {x} is not positive")
    a, b = params.a, params.b
    if not (0 <= a <= 1 and 0 <= b <= 1):
        raise ValueError("overlaps must lie in [0, 1]")
    amp = params.amplitude
    k = 1 - (a * b) ** 2
    f2 = (x.x0 - a * b * x.x3) ** 2 - k * x.x2**2
    c2 = (x.x3 - a * b * x.x0) ** 2 + k * x.x1**2
    if f2 < -tol * max(x.x0**2, 1.0):
        raise NotPSDError("negative fidelity radicand")
    return amp * float(np.sqrt(max(f2, 0.0))), amp * float(np.sqrt(c2))


def _unit(v):
    v = np.asarray(v, dtype=complex)
    if v.shape != (2,):
        raise ShapeError("factor vectors must be qubit vectors")
    return v / np.linalg.norm(v)


def _phase_of(z):
    return z / abs(z) if abs(z) > 0 else 1.0


def build_rank2_span(phi_a0, phi_b0, phi_a1, phi_b1):
    """Span of ``phi_a0 (x) phi_b0`` and ``phi_a1 (x) phi_b1`` with its adapted basis."""
    a0, b0, a1, b1 = map(_unit, (phi_a0, phi_b0, phi_a1, phi_b1))
    a1 = a1 * _phase_of(np.vdot(a0, a1)).conjugate()
    b1 = b1 * _phase_of(np.vdot(b0, b1)).conjugate()
    a = float(min(abs(np.vdot(a0, a1)), 1.0))
    b = float(min(abs(np.vdot(b0, b1)), 1.0))
    if a * b >= 1 - 1e-12:
        raise ShapeError("product vectors are parallel: the span is one-dimensional")
    psi0, psi1 = np.kron(a0, b0), np.kron(a1, b1)
    hw = hill_wootters()
    hw = AntilinearOp(hw.matrix * _phase_of(expectation_pair(hw, psi1, psi0)).conjugate())
    plus = (psi0 + psi1) / np.sqrt(2 * (1 + a * b))
    # the factor i makes the antilinear eigenvalue on phi_minus +a_minus instead of -a_minus
    minus = 1j * (psi0 - psi1) / np.sqrt(2 * (1 - a * b))
    emb = np.column_stack([plus, minus])
    q = emb @ emb.conj().T
    return Rank2Span(Rank2SpanParams(a, b), emb, q, hw, compress(hw, q), psi0, psi1)


def expectation_pair(theta, phi, psi):
    """``<phi, theta psi>``."""
    return complex(np.vdot(phi, theta(psi)))

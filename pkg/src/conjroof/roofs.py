"""Optimal decompositions for theta-fidelity and theta-concurrence.

An ensemble is a list of subnormalized vectors ``phi_k`` with
``sum_k |phi_k><phi_k| = rho``.  Its value is ``sum_k |<phi_k, theta phi_k>|``;
the minimum over all ensembles is the theta-concurrence and the maximum the
theta-fidelity.  :func:`optimal_ensemble` builds ensembles attaining both
ends from a Takagi basis, a Sylvester-Hadamard matrix and unimodular phases
chosen by :func:`solve_phases`.  :func:`roof_oracle` searches random
ensembles and serves as an independent check of the construction.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConjroofError, ShapeError
from .matcore import as_density, hinge, psd_sqrt, takagi
from .measures import require_hermitian, theta_concurrence, theta_fidelity, theta_matrix
from .sampling import ginibre, qr_unitary, random_unitary

MODES = ("min", "max")
ORACLE_BLOCK = 200


@dataclass(frozen=True, eq=False)
class PhaseSolution:
    mu: np.ndarray  # unimodular, mu_j = eps_j ** -2
    achieved: float


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Row ``k`` of ``vectors`` is the subnormalized vector ``phi_k``."""

    vectors: np.ndarray

    @property
    def length(self):
        return self.vectors.shape[0]

    @property
    def dim(self):
        return self.vectors.shape[1]

    @property
    def weights(self):
        return np.sum(np.abs(self.vectors) ** 2, axis=1)

    def density(self):
        return self.vectors.T @ self.vectors.conj()

    def residual(self, rho):
        return float(np.linalg.norm(self.density() - np.asarray(rho)))


def hadamard_matrix(m):
    """Sylvester-Hadamard matrix of order ``m`` (a power of two, ``m >= 2``)."""
    if m < 2 or m & (m - 1):
        raise ShapeError(f"Hadamard order must be a power of two >= 2, got {m}")
    a = np.array([[1, 1], [1, -1]], dtype=int)
    while a.shape[0] < m:
        a = np.block([[a, a], [a, -a]])
    return a


def required_length(d):
    """Smallest ``2^(n+1)`` with ``2^n < d <= 2^(n+1)`` (at least 2)."""
    if d < 1:
        raise ShapeError("dimension must be positive")
    m = 2
    while m < d:
        m *= 2
    return m


def lower_hinge(values):
    return hinge(values)


def _phases(lam, v):
    n = len(lam)
    if n == 1:
        return np.ones(1, dtype=complex)
    head, tail = lam[0], lam[1:]
    if head == 0.0:
        return np.ones(n, dtype=complex)
    r = min(max(hinge(tail), abs(v - head)), float(tail.sum()))
    sub = _phases(tail, r)
    if r == 0.0:
        return np.concatenate([[1.0 + 0j], sub])
    s = np.sum(sub * tail)
    beta = np.angle(s) if abs(s) > 0 else 0.0
    denom = 2 * head * r
    if denom > 0.0:
        alpha = np.arccos(np.clip((v * v - head * head - r * r) / denom, -1.0, 1.0))
    else:
        # underflow: the triangle is degenerate, pick the nearer collinear end
        alpha = 0.0 if v >= max(head, r) else np.pi
    return np.concatenate([[1.0 + 0j], sub * np.exp(1j * (alpha - beta))])


def solve_phases(values, target, slack=1e-12):
    """Unimodular ``mu`` with ``|sum_j mu_j values_j| = target``.

    ``values`` must be descending and nonnegative; ``target`` must lie in
    ``[lower_hinge(values), sum(values)]``.  ``mu_0`` is fixed to 1.  The tail
    is solved recursively for the magnitude ``r`` that makes a triangle with
    ``values[0]`` and ``target`` possible, then rotated into place.
    """
    lam = np.clip(np.asarray(values, dtype=float), 0.0, None)
    if lam.size == 0:
        raise ShapeError("empty spectrum")
    if np.any(np.diff(lam) > 1e-12 * max(lam[0], 1.0)):
        raise ShapeError("values must be sorted descending")
    low, high = hinge(lam), float(lam.sum())
    tol = slack * max(high, 1.0)
    if not low - tol <= target <= high + tol:
        raise ConjroofError(f"target {target} outside attainable [{low}, {high}]")
    if high == 0.0:
        return PhaseSolution(np.ones(lam.size, dtype=complex), 0.0)
    # the phases are scale invariant; normalizing avoids underflow in the triangle step
    mu = _phases(lam / high, float(np.clip(target, low, high)) / high)
    return PhaseSolution(mu, float(abs(np.sum(mu * lam))))


def hadamard_preimages(basis, eps, m):
    """Rows ``sum_i a_ki eps_i psi_i`` for the Hadamard matrix of order ``m``."""
    d = basis.shape[0]
    a = hadamard_matrix(m)[:, :d]
    return (a * eps) @ basis.T


def optimal_ensemble(rho, theta, mode="min"):
    """Ensemble of length ``required_length(d)`` attaining C_theta (min) or F_theta (max)."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    require_hermitian(theta)
    rho = as_density(rho)
    d = rho.shape[0]
    if theta.dim != d:
        raise ShapeError("operator and state dimensions differ")
    s = psd_sqrt(rho)
    tk = takagi(theta_matrix(s, theta.matrix))
    if mode == "max":
        mu = np.ones(d, dtype=complex)
    else:
        mu = solve_phases(tk.values, hinge(tk.values)).mu
    eps = np.sqrt(mu.conj())
    m = required_length(d)
    pre = hadamard_preimages(tk.basis, eps, m)
    return Ensemble(pre @ s.T / np.sqrt(m))


def _values(vectors, m):
    """Ensemble values for a stack of vector sets, shape (..., k, d)."""
    v = vectors.conj()
    return np.abs(np.einsum("...ki,ij,...kj->...k", v, m, v)).sum(axis=-1)


def ensemble_value(ens, theta):
    if ens.dim != theta.dim:
        raise ShapeError("ensemble and operator dimensions differ")
    return float(_values(ens.vectors, theta.matrix))


def _batch_ensembles(s, u):
    # phi_k = sqrt(rho) chi_k, chi_k = column k of the first d rows of u
    d = s.shape[0]
    return np.einsum("ij,njk->nki", s, u[..., :d, :])


def random_ensemble(rho, length, seed=0):
    """Ensemble ``phi_k = sqrt(rho) chi_k`` from the first rows of a random unitary.

    For ``rank(rho) <= length < d`` the eigenbasis of the support is used
    instead of ``sqrt(rho)``.
    """
    rho = as_density(rho)
    d = rho.shape[0]
    u = random_unitary(length, seed)
    if length >= d:
        return Ensemble(_batch_ensembles(psd_sqrt(rho), u[None])[0])
    w, v = np.linalg.eigh(rho)
    keep = w > 1e-12 * max(w[-1], np.finfo(float).tiny)
    if keep.sum() > length:
        raise ShapeError(f"length {length} below rank {int(keep.sum())}")
    factor = v[:, keep] * np.sqrt(w[keep])
    r = factor.shape[1]
    return Ensemble((factor @ u[:r, :]).T)


def roof_oracle(rho, theta, mode="min", trials=10_000, seed=0):
    """Best ensemble value over ``trials`` random ensembles.

    Lengths run from ``d`` to ``required_length(d)``.  Ensembles come in
    blocks with generators seeded by ``(seed, block)``; the first fifth of
    the budget is Haar sampling, the rest resamples unitaries near the best
    one found so far with a shrinking spread.  Independent of the Takagi
    construction, so it brackets the optimum from the feasible side only.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    require_hermitian(theta)
    rho = as_density(rho)
    d = rho.shape[0]
    s = psd_sqrt(rho)
    lengths = list(range(d, required_length(d) + 1))
    sign = 1.0 if mode == "max" else -1.0
    explore = max(1, trials // 5)
    best, best_u = None, None
    spread = 0.5
    done = block = 0
    while done < trials:
        rng = np.random.default_rng([seed, block])
        n = min(ORACLE_BLOCK, trials - done)
        local = done >= explore and best_u is not None
        if local:
            k = best_u.shape[0]
            u = qr_unitary(best_u + spread * ginibre(rng, (n, k, k)))
        else:
            k = lengths[block % len(lengths)]
            u = qr_unitary(ginibre(rng, (n, k, k)))
        vals = _values(_batch_ensembles(s, u), theta.matrix)
        i = int(np.argmax(sign * vals))
        if best is None or sign * vals[i] > sign * best:
            best, best_u = float(vals[i]), u[i]
        elif local:
            spread *= 0.7
        done += n
        block += 1
    return best


@dataclass(frozen=True, eq=False)
class FlatnessReport:
    flat: bool
    leaf_constant: bool
    flat_error: float
    spread: float
    member_values: np.ndarray  # G(|phi_k><phi_k|), unnormalized members
    pure_values: np.ndarray  # G(pi_k), normalized members

    @property
    def passed(self):
        return self.flat and self.leaf_constant


def _measure(measure, theta):
    if callable(measure):
        return measure
    if measure == "fidelity":
        return lambda r: theta_fidelity(r, theta).value
    if measure == "concurrence":
        return lambda r: theta_concurrence(r, theta).value
    raise ValueError(f"unknown measure {measure!r}")


def flatness_check(measure, ens, theta=None, weights=None, seed=0, samples=8, tol=1e-8):
    """Check that ``measure`` is affine on the hull of the ensemble's pure states.

    ``measure`` is ``"fidelity"``, ``"concurrence"`` (both need ``theta``) or
    a callable on density matrices.  Flatness is tested on ``weights`` (if
    given) and on ``samples`` Dirichlet reweightings.  Leaf constancy compares
    the measure on the unnormalized members ``|phi_k><phi_k|``.
    """
    g = _measure(measure, theta)
    p = ens.weights
    keep = p > 1e-14 * max(p.max(), np.finfo(float).tiny)
    vecs = ens.vectors[keep]
    p = p[keep]
    members = [np.outer(v, v.conj()) for v in vecs]
    pures = [mbr / w for mbr, w in zip(members, p)]
    pure_values = np.array([g(pi) for pi in pures])
    member_values = np.array([g(mbr) for mbr in members])

    rng = np.random.default_rng(seed)
    qs = [] if weights is None else [np.asarray(weights, dtype=float)[keep]]
    qs += list(rng.dirichlet(np.ones(len(pures)), size=samples))
    err = 0.0
    for q in qs:
        q = q / q.sum()
        mix = sum(qi * pi for qi, pi in zip(q, pures))
        err = max(err, abs(g(mix) - float(q @ pure_values)))
    spread = float(member_values.max() - member_values.min()) if len(pures) else 0.0
    return FlatnessReport(err <= tol, spread <= tol, err, spread, member_values, pure_values)

"""Seeded invariant suite behind ``conjroof verify``.

Each family draws from its own generator seeded by ``(seed, family index)``
and records how far its inequalities or identities are violated.  Each
check carries its own tolerance; a family passes when no check exceeds it.
"""

import numpy as np

from .antilinear import expectation
from .entangle import hermitian_witness_family
from .errors import ShapeError
from .matcore import as_density, hinge, psd_sqrt, takagi
from .measures import concurrence_pair, fidelity, theta_concurrence, theta_fidelity, theta_matrix
from .roofs import (ensemble_value, flatness_check, hadamard_preimages,
                    optimal_ensemble, random_ensemble, required_length, solve_phases)
from .sampling import (random_density, random_hermitian_antilinear, random_product_vector,
                       random_separable, random_unitary)

MIN_DIM, MAX_DIM = 2, 16
FAMILIES = ("sandwich", "rank2_identity", "convexity", "hadamard_identities",
            "flatness", "witness_vanishing")
BOUND_TOL = 1e-9
ATTAIN_TOL = 1e-8
IDENTITY_TOL = 1e-9
FLAT_TOL = 1e-8
SEPARABLE_TOL = 1e-8
PRODUCT_TOL = 1e-12


def bipartition(d):
    """Split ``d = da * db`` with the smallest nontrivial ``da``, or None if prime."""
    for da in range(2, int(np.sqrt(d)) + 1):
        if d % da == 0:
            return da, d // da
    return None


class _Family:
    def __init__(self, seed, index, rho):
        self.rng = np.random.default_rng([seed, index])
        self.rho = rho
        self.violation = 0.0
        self.ratio = 0.0
        self.cases = 0

    def state(self, trial, d):
        if trial == 0 and self.rho is not None:
            return self.rho
        return random_density(d, self.rng, rank=int(self.rng.integers(1, d + 1)))

    def theta(self, d):
        return random_hermitian_antilinear(d, self.rng)

    def record(self, excess, tol):
        """``excess`` is how far a check overshoots; negative means slack."""
        self.violation = max(self.violation, float(excess))
        self.ratio = max(self.ratio, float(excess) / tol)
        self.cases += 1

    def result(self):
        return {"passed": self.ratio <= 1.0, "max_violation": self.violation,
                "worst_ratio_to_tolerance": self.ratio, "cases": self.cases}


def _sandwich(fam, d, trials):
    m = required_length(d)
    for t in range(trials):
        rho, theta = fam.state(t, d), fam.theta(d)
        c, f = theta_concurrence(rho, theta).value, theta_fidelity(rho, theta).value
        for length in (d, m, 2 * d):
            v = ensemble_value(random_ensemble(rho, length, fam.rng), theta)
            fam.record(max(c - v, v - f), BOUND_TOL)
        for mode, target in (("min", c), ("max", f)):
            ens = optimal_ensemble(rho, theta, mode)
            fam.record(abs(ensemble_value(ens, theta) - target), ATTAIN_TOL)
            fam.record(ens.residual(rho), BOUND_TOL)
            fam.record(0.0 if ens.length == m else np.inf, 1.0)


def _rank2_identity(fam, d, trials):
    for _ in range(trials):
        # both states live on one random plane
        plane = random_unitary(d, fam.rng)[:, :2]
        rho, omega = (plane @ random_density(2, fam.rng, rank=int(fam.rng.integers(1, 3)))
                      @ plane.conj().T for _ in range(2))
        c, f = concurrence_pair(rho, omega), fidelity(rho, omega)
        fam.record(abs(c * c + f * f - 2 * np.trace(rho @ omega).real), IDENTITY_TOL)


def _convexity(fam, d, trials):
    for t in range(trials):
        theta = fam.theta(d)
        r1, r2 = fam.state(t, d), random_density(d, fam.rng)
        s = fam.rng.uniform()
        mix = s * r1 + (1 - s) * r2
        c1, c2, cm = (theta_concurrence(r, theta).value for r in (r1, r2, mix))
        f1, f2, fm = (theta_fidelity(r, theta).value for r in (r1, r2, mix))
        fam.record(cm - (s * c1 + (1 - s) * c2), BOUND_TOL)
        fam.record((s * f1 + (1 - s) * f2) - fm, BOUND_TOL)
        # a convex increasing function of the roof stays convex
        fam.record(cm**2 - (s * c1**2 + (1 - s) * c2**2), BOUND_TOL)
        scale = fam.rng.uniform(0.1, 10.0)
        fam.record(abs(theta_concurrence(scale * r1, theta).value - scale * c1) / scale, BOUND_TOL)
        fam.record(abs(theta_fidelity(scale * r1, theta).value - scale * f1) / scale, BOUND_TOL)
        fam.record(theta_concurrence(r1 + r2, theta).value - (c1 + c2), BOUND_TOL)
        fam.record((f1 + f2) - theta_fidelity(r1 + r2, theta).value, BOUND_TOL)


def _hadamard_identities(fam, d, trials):
    m = required_length(d)
    for t in range(trials):
        rho, theta = fam.state(t, d), fam.theta(d)
        n = theta_matrix(psd_sqrt(rho), theta.matrix)
        tk = takagi(n)
        mu = solve_phases(tk.values, hinge(tk.values)).mu
        pre = hadamard_preimages(tk.basis, np.sqrt(mu.conj()), m)
        fam.record(np.linalg.norm(pre.T @ pre.conj() - m * np.eye(d)), IDENTITY_TOL)
        vals = np.einsum("ki,ij,kj->k", pre.conj(), n, pre.conj())
        fam.record(np.max(np.abs(vals - np.sum(mu * tk.values))), IDENTITY_TOL)


def _flatness(fam, d, trials):
    for t in range(trials):
        rho, theta = fam.state(t, d), fam.theta(d)
        for measure, mode in (("concurrence", "min"), ("fidelity", "max")):
            ens = optimal_ensemble(rho, theta, mode)
            rep = flatness_check(measure, ens, theta, seed=fam.rng, samples=4)
            fam.record(max(rep.flat_error, rep.spread), FLAT_TOL)


def _witness_vanishing(fam, d, trials):
    dims = bipartition(d)
    if dims is None:
        return False
    for _ in range(trials):
        family = hermitian_witness_family(dims, samples=2, seed=fam.rng)
        rho = random_separable(dims, fam.rng, terms=int(fam.rng.integers(1, 2 * d + 1)))
        psi = random_product_vector(dims, fam.rng)
        for theta in family:
            fam.record(theta_concurrence(rho, theta).value, SEPARABLE_TOL)
            fam.record(abs(expectation(theta, psi)), PRODUCT_TOL)
    return True


_RUNNERS = (_sandwich, _rank2_identity, _convexity, _hadamard_identities,
            _flatness, _witness_vanishing)


def run_verify(dim, trials, seed, rho=None):
    """Run every invariant family; returns a JSON-ready dict with per-family flags."""
    if rho is not None:
        rho = as_density(rho)
        rho = rho / np.trace(rho).real
        dim = rho.shape[0]
    if not MIN_DIM <= dim <= MAX_DIM:
        raise ShapeError(f"verify needs {MIN_DIM} <= dim <= {MAX_DIM}, got {dim}")
    if trials < 1:
        raise ShapeError("trials must be positive")
    checks = {}
    for index, (name, runner) in enumerate(zip(FAMILIES, _RUNNERS)):
        fam = _Family(seed, index, rho)
        ran = runner(fam, dim, trials)
        entry = fam.result()
        if ran is False:
            entry["skipped"] = "dimension is prime, no bipartition"
        checks[name] = entry
    return {"dim": dim, "trials": trials, "checks": checks,
            "passed": all(c["passed"] for c in checks.values())}

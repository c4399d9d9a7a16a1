"""Fidelity, concurrence and their versions relative to an antilinear operator.

For an antilinearly Hermitian ``theta`` (symmetric matrix ``M``) the
theta-fidelity and theta-concurrence of ``rho`` are the sum and the hinge of
the Takagi values of ``sqrt(rho) @ M @ sqrt(rho).T``.  These coincide with
``fidelity(rho, theta rho theta)`` and ``concurrence_pair(rho, theta rho theta)``.
"""

from dataclasses import dataclass

import numpy as np

from .antilinear import SIGMA_X, SIGMA_Y, SIGMA_Z, AntilinearOp, hill_wootters, transport
from .errors import DimensionMismatchError, NotPSDError, OperatorClassError, ShapeError
from .matcore import SYM_TOL, as_density, check_hermitian, hinge, psd_sqrt, singular_numbers


@dataclass(frozen=True, eq=False)
class MeasureResult:
    value: float
    spectrum: np.ndarray

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class BlochVector:
    """``rho = (x0 * 1 + x1 sx + x2 sy + x3 sz) / 2``; ``x0`` is the trace."""

    x0: float
    x1: float
    x2: float
    x3: float

    def matrix(self):
        return 0.5 * (self.x0 * np.eye(2) + self.x1 * SIGMA_X
                      + self.x2 * SIGMA_Y + self.x3 * SIGMA_Z)

    @classmethod
    def from_matrix(cls, rho):
        rho = np.asarray(rho, dtype=complex)
        return cls(*(float(np.trace(p @ rho).real)
                     for p in (np.eye(2), SIGMA_X, SIGMA_Y, SIGMA_Z)))

    def is_psd(self, tol=1e-12):
        return self.x0 >= -tol and self.x1**2 + self.x2**2 + self.x3**2 <= self.x0**2 + tol


def fidelity(rho, omega):
    """``tr (sqrt(omega) rho sqrt(omega))^(1/2)``, symmetric in its arguments."""
    return float(np.sum(singular_numbers(rho, omega)))


def transition_probability(rho, omega):
    return fidelity(rho, omega) ** 2


def concurrence_pair(rho, omega):
    return hinge(singular_numbers(rho, omega))


def _positive_definite(x, tol=1e-12):
    x = check_hermitian(x, name="X")
    w = np.linalg.eigvalsh(x)
    if w[0] <= tol * max(abs(w[-1]), np.finfo(float).tiny):
        raise NotPSDError("X must be positive and invertible")
    return x


def variational_bound(rho, omega, x):
    """``(tr X rho + tr X^-1 omega) / 2``, an upper bound on the fidelity."""
    rho = as_density(rho, name="rho")
    omega = as_density(omega, name="omega")
    x = _positive_definite(x)
    if not rho.shape == omega.shape == x.shape:
        raise DimensionMismatchError("rho, omega and X must share one dimension")
    return 0.5 * float(np.trace(x @ rho).real + np.trace(np.linalg.solve(x, omega)).real)


def optimal_variational_operator(rho, omega):
    """The positive ``X`` with ``X rho X = omega``, saturating the bound.

    ``X = rho^(-1/2) (rho^(1/2) omega rho^(1/2))^(1/2) rho^(-1/2)``; ``rho``
    must be invertible.
    """
    rho = as_density(rho, name="rho")
    w, v = np.linalg.eigh(rho)
    if w[0] <= 0:
        raise NotPSDError("rho must be invertible")
    r_half = (v * np.sqrt(w)) @ v.conj().T
    r_mhalf = (v / np.sqrt(w)) @ v.conj().T
    return r_mhalf @ psd_sqrt(r_half @ omega @ r_half) @ r_mhalf


def require_hermitian(theta, tol=SYM_TOL):
    m = theta.matrix
    if np.linalg.norm(m - m.T) > tol * max(np.linalg.norm(m), 1.0):
        raise OperatorClassError("theta must be antilinearly Hermitian (symmetric matrix)")


def theta_matrix(sqrt_rho, m):
    """Matrix of ``sqrt(rho) theta sqrt(rho)``; symmetric whenever ``m`` is."""
    return sqrt_rho @ m @ sqrt_rho.T


def theta_spectrum(rho, theta):
    """Descending Takagi values of ``sqrt(rho) theta sqrt(rho)``.

    For a complex symmetric matrix the Takagi values are its singular values,
    so no basis is computed here.
    """
    require_hermitian(theta)
    rho = as_density(rho)
    if rho.shape[0] != theta.dim:
        raise DimensionMismatchError(
            f"state of dimension {rho.shape[0]} for operator of dimension {theta.dim}")
    return np.linalg.svd(theta_matrix(psd_sqrt(rho), theta.matrix), compute_uv=False)


def theta_fidelity(rho, theta):
    spec = theta_spectrum(rho, theta)
    return MeasureResult(float(np.sum(spec)), spec)


def theta_concurrence(rho, theta):
    spec = theta_spectrum(rho, theta)
    return MeasureResult(hinge(spec), spec)


def wootters_concurrence(rho):
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise DimensionMismatchError("Wootters concurrence needs a 4x4 density operator")
    return theta_concurrence(rho, hill_wootters()).value


def bloch_reflection():
    """Qubit conjugation flipping the sign of ``x3`` and fixing ``x1, x2``."""
    return AntilinearOp(SIGMA_X.copy())


def qubit_closed_forms(x):
    """``(F, C) = (sqrt(x0^2 - x3^2), sqrt(x1^2 + x2^2))`` for :func:`bloch_reflection`."""
    if not x.is_psd():
        raise NotPSDError(f"Bloch vector {x} is not positive")
    return (float(np.sqrt(max(x.x0**2 - x.x3**2, 0.0))),
            float(np.hypot(x.x1, x.x2)))


def equivalence_transport(rho, theta, u, tol=1e-9):
    """(F, C) of ``rho`` under ``U^dagger theta U``.

    Equal to the values of ``theta`` at ``U rho U^dagger``.
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (theta.dim, theta.dim):
        raise ShapeError("U has the wrong shape")
    if np.linalg.norm(u.conj().T @ u - np.eye(theta.dim)) > tol * np.sqrt(theta.dim):
        raise ShapeError("U is not unitary")
    moved = transport(theta, u)
    return theta_fidelity(rho, moved).value, theta_concurrence(rho, moved).value

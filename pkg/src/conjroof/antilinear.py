"""Antilinear operators in the canonical representation ``psi -> M @ conj(psi)``.

With this convention the antilinear adjoint is the transpose of ``M``, an
operator is antilinearly Hermitian iff ``M`` is symmetric, antiunitary iff
``M`` is unitary, and the (linear) product of two antilinear operators has
matrix ``M_a @ conj(M_b)``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, ShapeError
from .matcore import as_square

CLASSIFY_TOL = 1e-9

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (np.eye(2, dtype=complex), SIGMA_X, SIGMA_Y, SIGMA_Z)


@dataclass(frozen=True, eq=False)
class AntilinearOp:
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", as_square(self.matrix, "antilinear matrix"))

    @property
    def dim(self):
        return self.matrix.shape[0]

    def __call__(self, psi):
        return apply(self, psi)

    def __repr__(self):
        return f"AntilinearOp(dim={self.dim})"


@dataclass(frozen=True)
class OperatorKind:
    hermitian: bool
    anti_hermitian: bool
    antiunitary: bool
    conjugation: bool
    skew: bool

    @property
    def label(self):
        for name in ("conjugation", "skew", "hermitian", "anti_hermitian", "antiunitary"):
            if getattr(self, name):
                return name
        return "general"


def _check_dims(*dims):
    if len(set(dims)) != 1:
        raise DimensionMismatchError(f"dimension mismatch: {dims}")


def apply(theta, psi):
    psi = np.asarray(psi, dtype=complex)
    if psi.shape[0] != theta.dim:
        raise DimensionMismatchError(
            f"vector of length {psi.shape[0]} for operator of dimension {theta.dim}")
    return theta.matrix @ psi.conj()


def expectation(theta, psi):
    """``<psi, theta psi>``, linear in neither argument."""
    psi = np.asarray(psi, dtype=complex)
    return complex(np.vdot(psi, apply(theta, psi)))


def adjoint(theta):
    return AntilinearOp(theta.matrix.T)


def antilinear_product(a, b):
    """Matrix of the linear operator ``a b`` (apply ``b`` first)."""
    _check_dims(a.dim, b.dim)
    return a.matrix @ b.matrix.conj()


def compose(a, b):
    """Product ``a b`` where each factor is a linear matrix or an AntilinearOp."""
    a_anti, b_anti = isinstance(a, AntilinearOp), isinstance(b, AntilinearOp)
    ma = a.matrix if a_anti else np.asarray(a, dtype=complex)
    mb = b.matrix if b_anti else np.asarray(b, dtype=complex)
    _check_dims(ma.shape[0], mb.shape[0])
    if a_anti and b_anti:
        return ma @ mb.conj()
    if a_anti:
        return AntilinearOp(ma @ mb.conj())
    if b_anti:
        return AntilinearOp(ma @ mb)
    return ma @ mb


def hermitian_part(theta):
    """``(theta + theta^dagger) / 2``; it has the same expectation values as ``theta``."""
    return AntilinearOp((theta.matrix + theta.matrix.T) / 2)


def dagger(x):
    """Adjoint of either a linear matrix or an AntilinearOp."""
    if isinstance(x, AntilinearOp):
        return adjoint(x)
    return np.asarray(x, dtype=complex).conj().T


def classify(theta, tol=CLASSIFY_TOL):
    m = theta.matrix
    scale = max(np.linalg.norm(m), 1.0)
    hermitian = np.linalg.norm(m - m.T) <= tol * scale
    anti_hermitian = np.linalg.norm(m + m.T) <= tol * scale
    antiunitary = np.linalg.norm(m @ m.conj().T - np.eye(theta.dim)) <= tol * np.sqrt(theta.dim)
    return OperatorKind(
        hermitian=bool(hermitian),
        anti_hermitian=bool(anti_hermitian),
        antiunitary=bool(antiunitary),
        conjugation=bool(hermitian and antiunitary),
        skew=bool(anti_hermitian and antiunitary),
    )


def tensor(a, b):
    return AntilinearOp(np.kron(a.matrix, b.matrix))


def tensor_all(factors):
    out = factors[0]
    for f in factors[1:]:
        out = tensor(out, f)
    return out


def standard_skew_qubit():
    """Skew conjugation with ``|0> -> i|1>`` and ``|1> -> -i|0>`` (the spin flip)."""
    return AntilinearOp(SIGMA_Y.copy())


def hill_wootters():
    return tensor(standard_skew_qubit(), standard_skew_qubit())


def _unitary_columns(basis):
    basis = as_square(basis, "basis")
    if not np.allclose(basis.conj().T @ basis, np.eye(basis.shape[0]), atol=1e-10):
        raise ShapeError("basis columns are not orthonormal")
    return basis


def skew_pairing(d):
    """Real antisymmetric ``J`` with ``J e_{2j} = e_{2j-1}``, ``J e_{2j-1} = -e_{2j}``."""
    if d % 2:
        raise ShapeError(f"no skew conjugation exists in odd dimension {d}")
    j = np.zeros((d, d), dtype=complex)
    for k in range(0, d, 2):
        j[k, k + 1] = 1.0
        j[k + 1, k] = -1.0
    return j


def skew_from_basis(basis):
    """Skew conjugation having the columns of ``basis`` as its theta-basis.

    Columns are paired (1, 2), (3, 4), ... with ``theta b_2 = b_1`` and
    ``theta b_1 = -b_2``.
    """
    basis = _unitary_columns(basis)
    return AntilinearOp(basis @ skew_pairing(basis.shape[0]) @ basis.T)


def conjugation_from_basis(basis):
    """Conjugation leaving every column of ``basis`` invariant."""
    basis = _unitary_columns(basis)
    return AntilinearOp(basis @ basis.T)


def compress(theta, q, tol=1e-9):
    """``Q theta Q`` for an orthogonal projector ``Q``."""
    q = as_square(q, "projector")
    _check_dims(theta.dim, q.shape[0])
    scale = max(np.linalg.norm(q), 1.0)
    if (np.linalg.norm(q - q.conj().T) > tol * scale
            or np.linalg.norm(q @ q - q) > tol * scale):
        raise ShapeError("Q is not an orthogonal projector")
    return AntilinearOp(q @ theta.matrix @ q.T)


def transport(theta, u):
    """``U^dagger theta U`` for a linear ``U``."""
    u = np.asarray(u, dtype=complex)
    return AntilinearOp(u.conj().T @ theta.matrix @ u.conj())


def conjugate_state(theta, rho):
    """Matrix of the linear operator ``theta rho theta``."""
    m = theta.matrix
    return m @ np.asarray(rho, dtype=complex).conj() @ m.conj()

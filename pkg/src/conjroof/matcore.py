"""Dense complex linear algebra kernels.

Hermitian eigendecomposition, PSD square roots, the symmetric (Takagi)
factorization ``N = U diag(lam) U^T`` and singular-number spectra of pairs
of positive operators.  Everything works on plain ``numpy`` arrays.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NotPSDError, ShapeError, SymmetryError

#: eigenvalues in [-PSD_TOL * trace, 0] are clipped to zero
PSD_TOL = 1e-10
#: relative Frobenius residual accepted for Hermitian / symmetric inputs
SYM_TOL = 1e-9
#: relative gap below which Takagi values are treated as degenerate
GAP_TOL = 1e-8
#: Takagi values below ZERO_TOL * largest value form the kernel block
ZERO_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class HermitianEig:
    values: np.ndarray  # descending
    vectors: np.ndarray  # eigencolumns


@dataclass(frozen=True, eq=False)
class TakagiDecomposition:
    """``N = basis @ diag(values) @ basis.T`` with ``values`` descending.

    The columns ``psi_k`` of ``basis`` obey ``N @ conj(psi_k) = values[k] * psi_k``;
    ``theta0_matrix = basis @ basis.T`` is the conjugation leaving all of
    them invariant.
    """

    values: np.ndarray
    basis: np.ndarray
    theta0_matrix: np.ndarray


def as_square(a, name="matrix"):
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ShapeError(f"{name} has non-finite entries")
    return a


def _residual_ok(residual, scale, tol):
    return residual <= tol * scale or residual <= 1e-300


def check_hermitian(h, tol=SYM_TOL, name="matrix"):
    """Return the Hermitian part of ``h`` after checking it is Hermitian."""
    h = as_square(h, name)
    if not _residual_ok(np.linalg.norm(h - h.conj().T), np.linalg.norm(h), tol):
        raise SymmetryError(f"{name} is not Hermitian")
    return (h + h.conj().T) / 2


def _descending(values):
    # stable: ties keep their original order
    return np.argsort(-values, kind="stable")


def herm_eig(h, tol=SYM_TOL):
    """Eigendecomposition of a Hermitian matrix with descending eigenvalues."""
    h = check_hermitian(h, tol)
    w, v = np.linalg.eigh(h)
    order = _descending(w)
    return HermitianEig(w[order], v[:, order])


def as_density(rho, tol=PSD_TOL, name="density operator"):
    """Validate a positive semidefinite operator and return it symmetrized.

    Normalization is not required.  Raises :class:`NotPSDError` when an
    eigenvalue lies below ``-tol * trace``; smaller negative eigenvalues are
    clipped to zero.
    """
    rho = check_hermitian(rho, name=name)
    w, v = np.linalg.eigh(rho)
    trace = float(np.sum(w))
    floor = -tol * max(abs(trace), np.finfo(float).tiny)
    if w.size and w[0] < floor:
        raise NotPSDError(f"{name} has eigenvalue {w[0]:.3e} below {floor:.3e}")
    if w.size and w[0] < 0:
        rho = (v * np.clip(w, 0.0, None)) @ v.conj().T
    return rho


def psd_sqrt(p, tol=PSD_TOL):
    """Positive square root of a PSD operator, negative round-off clipped."""
    p = as_density(p, tol)
    w, v = np.linalg.eigh(p)
    w = np.sqrt(np.clip(w, 0.0, None))
    return (v * w) @ v.conj().T


def _joint_orthogonal(w):
    """Real orthogonal ``O`` with ``O.T @ w @ O`` diagonal, ``w`` symmetric unitary.

    ``w = X + iY`` with commuting real symmetric ``X, Y``: diagonalize ``X``,
    then ``Y`` inside each degenerate block of ``X``.
    """
    w = (w + w.T) / 2
    x, y = w.real, w.imag
    c, o = np.linalg.eigh(x)
    k = len(c)
    start = 0
    while start < k:
        stop = start + 1
        while stop < k and c[stop] - c[stop - 1] <= GAP_TOL:
            stop += 1
        if stop - start > 1:
            block = o[:, start:stop]
            _, r = np.linalg.eigh(block.T @ y @ block)
            o[:, start:stop] = block @ r
        start = stop
    return o


def _groups(s):
    """Split descending singular values into degenerate runs (start, stop)."""
    top = s[0]
    groups = []
    start = 0
    n = len(s)
    while start < n:
        stop = start + 1
        if s[start] <= ZERO_TOL * top:
            stop = n
        else:
            while (stop < n and s[stop] > ZERO_TOL * top
                   and s[stop - 1] - s[stop] <= GAP_TOL * top):
                stop += 1
        groups.append((start, stop))
        start = stop
    return groups


def takagi(n, tol=SYM_TOL):
    """Takagi factorization of a complex symmetric matrix.

    Returns a :class:`TakagiDecomposition` whose basis columns are invariant
    under the conjugation ``theta0_matrix`` and are antilinear eigenvectors
    of ``psi -> n @ conj(psi)``.  Degenerate values are handled block-wise,
    and the kernel block keeps the singular vectors as they come.
    """
    n = as_square(n)
    scale = np.linalg.norm(n)
    if not _residual_ok(np.linalg.norm(n - n.T), scale, tol):
        raise SymmetryError("matrix is not complex symmetric")
    n = (n + n.T) / 2
    d = n.shape[0]
    if scale == 0.0:
        eye = np.eye(d, dtype=complex)
        return TakagiDecomposition(np.zeros(d), eye, eye.copy())

    # left singular vectors = eigenvectors of n @ n^H, with better-conditioned values
    u, s, _ = np.linalg.svd(n)
    values = np.empty(d)
    basis = np.empty((d, d), dtype=complex)
    for start, stop in _groups(s):
        v = u[:, start:stop]
        if s[start] <= ZERO_TOL * s[0]:
            basis[:, start:stop] = v
            values[start:stop] = 0.0
            continue
        w = v.conj().T @ n @ v.conj()
        if stop - start == 1:
            basis[:, start] = v[:, 0] * np.exp(0.5j * np.angle(w[0, 0]))
            values[start] = s[start]
            continue
        o = _joint_orthogonal(w / s[start:stop].mean())
        diag = np.diagonal(o.T @ w @ o)
        basis[:, start:stop] = (v @ o) * np.exp(0.5j * np.angle(diag))
        values[start:stop] = np.abs(diag)

    order = _descending(values)
    values, basis = values[order], basis[:, order]
    return TakagiDecomposition(values, basis, basis @ basis.T)


def singular_numbers(rho, omega):
    """Descending spectrum of ``(sqrt(rho) omega sqrt(rho))^(1/2)``.

    Computed as the singular values of ``sqrt(rho) @ sqrt(omega)``.
    """
    rho = as_density(rho, name="rho")
    omega = as_density(omega, name="omega")
    if rho.shape != omega.shape:
        raise DimensionMismatchError(
            f"dimensions differ: {rho.shape[0]} vs {omega.shape[0]}")
    return np.linalg.svd(psd_sqrt(rho) @ psd_sqrt(omega), compute_uv=False)


def hinge(values):
    """``max(0, v[0] - sum(v[1:]))`` for a descending nonnegative spectrum."""
    values = np.clip(np.asarray(values, dtype=float), 0.0, None)
    if values.size == 0:
        return 0.0
    return max(0.0, float(values[0] - values[1:].sum()))

"""Seeded random objects used by the oracles, the verify suite and tests."""

import numpy as np

from .antilinear import AntilinearOp


def as_rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def ginibre(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def qr_unitary(z):
    """Unitary from the QR factor of ``z`` with the diagonal of R made positive.

    Works on stacks of square matrices.  For Gaussian ``z`` the result is
    Haar distributed.
    """
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r, axis1=-2, axis2=-1)
    phases = np.where(np.abs(diag) > 0, diag / np.where(diag == 0, 1, np.abs(diag)), 1)
    return q * phases[..., None, :]


def random_unitary(d, seed=None, size=None):
    rng = as_rng(seed)
    shape = (d, d) if size is None else (size, d, d)
    return qr_unitary(ginibre(rng, shape))


def random_state_vector(d, seed=None):
    rng = as_rng(seed)
    v = ginibre(rng, d)
    return v / np.linalg.norm(v)


def random_density(d, seed=None, rank=None, normalize=True):
    """Hilbert-Schmidt-type random density operator of given rank."""
    rng = as_rng(seed)
    g = ginibre(rng, (d, d if rank is None else rank))
    rho = g @ g.conj().T
    if normalize:
        rho /= np.trace(rho).real
    return rho


def random_hermitian_antilinear(d, seed=None):
    """Antilinearly Hermitian operator with a random complex symmetric matrix."""
    rng = as_rng(seed)
    g = ginibre(rng, (d, d))
    return AntilinearOp((g + g.T) / 2)


def random_conjugation(d, seed=None):
    u = random_unitary(d, seed)
    return AntilinearOp(u @ u.T)


def random_product_vector(dims, seed=None):
    rng = as_rng(seed)
    out = np.ones(1, dtype=complex)
    for d in dims:
        out = np.kron(out, random_state_vector(d, rng))
    return out


def random_separable(dims, seed=None, terms=None):
    """Random convex mixture of pure product states."""
    rng = as_rng(seed)
    dim = int(np.prod(dims))
    terms = terms or 2 * dim
    weights = rng.dirichlet(np.ones(terms))
    rho = np.zeros((dim, dim), dtype=complex)
    for w in weights:
        v = random_product_vector(dims, rng)
        rho += w * np.outer(v, v.conj())
    return rho

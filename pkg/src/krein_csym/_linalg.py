"""Small dense linear algebra helpers shared across modules."""

import warnings

import numpy as np
import scipy.linalg

from .exceptions import DimensionMismatch, NearSingular, NearSingularWarning

SOLVE_RESIDUAL_TOL = 1e-10


def as_matrix(a, n=None, name="matrix"):
    """Return ``a`` as a square complex ndarray, checking the size if ``n`` is given."""
    a = getattr(a, "matrix", a)
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {a.shape}")
    if n is not None and a.shape[0] != n:
        raise DimensionMismatch(f"{name} is {a.shape[0]}x{a.shape[0]}, expected {n}x{n}")
    return a


def norm2(a):
    """Spectral norm (largest singular value)."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    if a.ndim == 1:
        return float(np.linalg.norm(a))
    return float(np.linalg.norm(a, 2))


def herm(a):
    """Hermitian part ``(a + a*) / 2``."""
    return 0.5 * (a + a.conj().T)


def solve(a, b, tol=SOLVE_RESIDUAL_TOL):
    """Solve ``a x = b`` and check the relative residual.

    A singular ``a`` raises :class:`NearSingular`; a residual above
    ``tol * ||b||`` only warns, since the caller may still want the answer.
    """
    try:
        x = scipy.linalg.solve(a, b)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NearSingular(str(exc)) from exc
    bnorm = norm2(b)
    res = norm2(a @ x - b)
    if bnorm > 0 and res > tol * bnorm:
        warnings.warn(
            f"linear solve residual {res / bnorm:.3e} exceeds {tol:.1e} "
            f"(cond ~ {np.linalg.cond(a):.3e})",
            NearSingularWarning,
            stacklevel=2,
        )
    return x


def orthonormal_columns(b, rank_tol):
    """Orthonormal basis of the column space of ``b`` and its numerical rank."""
    u, s, _ = scipy.linalg.svd(b, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return u[:, :0], 0
    rank = int(np.sum(s > rank_tol * s[0]))
    return u[:, :rank], rank

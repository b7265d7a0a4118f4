"""Finite-dimensional Krein spaces.

A Krein structure on ``C^n`` is given by a fundamental symmetry ``J``, a
Hermitian involution. It induces the indefinite metric ``[x, y] = (Jx, y)``
and the fundamental projectors ``P+ = (I + J)/2``, ``P- = (I - J)/2``.
``J`` need not be diagonal; the parity permutation of a symmetric grid is the
typical non-diagonal example.

Subspaces are handled through explicit bases (columns of a matrix).
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from ._linalg import as_matrix, herm, norm2, orthonormal_columns, solve
from .exceptions import DimensionMismatch, KreinStructureError, RankDeficient

__all__ = [
    "TOL_ALG", "CLASS_TOL", "RANK_TOL", "ANGLE_TOL",
    "KreinStructure", "SubspaceBasis", "SubspaceClass",
    "indefinite_inner", "classify_subspace", "j_adjoint",
    "j_orthogonal_complement", "principal_angles", "same_subspace",
    "oblique_projector", "krein_projector",
]

TOL_ALG = 1e-10
CLASS_TOL = 1e-8
RANK_TOL = 1e-12
ANGLE_TOL = 1e-8


def _readonly(a):
    a.flags.writeable = False
    return a


class KreinStructure:
    """Fundamental symmetry ``J`` together with its derived objects.

    Parameters
    ----------
    J : array_like, shape (n, n)
        Hermitian involution. Both eigenspaces must be nontrivial.
    tol : float
        Relative tolerance for ``J = J*`` and ``J^2 = I``.

    Attributes
    ----------
    n : int
    J, P_plus, P_minus : ndarray
        Read-only copies.
    basis_plus, basis_minus : ndarray
        Orthonormal eigenbases of ``J`` for the eigenvalues +1 and -1
        (the canonical form of the fundamental decomposition).
    """

    def __init__(self, J, tol=TOL_ALG):
        J = np.array(as_matrix(J, name="J"), copy=True)
        n = J.shape[0]
        eye = np.eye(n)
        herm_defect = norm2(J - J.conj().T)
        inv_defect = norm2(J @ J - eye)
        if herm_defect > tol:
            raise KreinStructureError(f"J is not Hermitian (defect {herm_defect:.3e})")
        if inv_defect > tol:
            raise KreinStructureError(f"J is not an involution (defect {inv_defect:.3e})")
        w, v = scipy.linalg.eigh(herm(J))
        plus, minus = v[:, w > 0], v[:, w < 0]
        if plus.shape[1] == 0 or minus.shape[1] == 0:
            raise KreinStructureError("J must have both +1 and -1 eigenvalues")
        self.n = n
        self.J = _readonly(J)
        self.P_plus = _readonly(0.5 * (eye + J))
        self.P_minus = _readonly(0.5 * (eye - J))
        self.basis_plus = _readonly(plus)
        self.basis_minus = _readonly(minus)

    @classmethod
    def diagonal(cls, signs):
        """Krein structure with ``J = diag(signs)``."""
        return cls(np.diag(np.asarray(signs, dtype=float)))

    @property
    def n_plus(self):
        return self.basis_plus.shape[1]

    @property
    def n_minus(self):
        return self.basis_minus.shape[1]

    def canonical_basis(self):
        """Unitary ``V`` with ``V* J V = diag(I_{n+}, -I_{n-})``."""
        return np.hstack([self.basis_plus, self.basis_minus])

    def inner(self, x, y):
        return indefinite_inner(self, x, y)

    def __repr__(self):
        return f"KreinStructure(n={self.n}, n_plus={self.n_plus}, n_minus={self.n_minus})"


@dataclass(frozen=True)
class SubspaceBasis:
    """Full-column-rank basis of a subspace; columns span the subspace."""

    columns: np.ndarray
    rank_tol: float = field(default=RANK_TOL, repr=False)

    def __post_init__(self):
        b = np.asarray(self.columns, dtype=complex)
        if b.ndim == 1:
            b = b[:, None]
        if b.ndim != 2 or b.shape[1] == 0:
            raise RankDeficient("a basis needs at least one column")
        s = scipy.linalg.svdvals(b)
        if s[0] == 0 or s[-1] <= self.rank_tol * s[0] or b.shape[1] > b.shape[0]:
            raise RankDeficient(f"basis of {b.shape[1]} columns is rank deficient")
        b = np.array(b, copy=True)
        object.__setattr__(self, "columns", _readonly(b))

    @property
    def dim(self):
        return self.columns.shape[1]

    @property
    def n(self):
        return self.columns.shape[0]


def _basis(b):
    return b if isinstance(b, SubspaceBasis) else SubspaceBasis(b)


@dataclass(frozen=True)
class SubspaceClass:
    """Sign classification of a subspace with respect to ``[., .]``.

    ``margin`` is the smallest absolute eigenvalue of the Gram matrix
    ``B* J B`` of the basis as given (no orthonormalisation).
    """

    tag: str
    margin: float
    gram_eigenvalues: np.ndarray = field(repr=False)


def indefinite_inner(ks, x, y):
    """``[x, y] = (Jx, y) = y* J x``."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if x.shape != (ks.n,) or y.shape != (ks.n,):
        raise DimensionMismatch(f"vectors must have length {ks.n}, got {x.shape} and {y.shape}")
    return complex(np.vdot(y, ks.J @ x))


def gram(ks, b):
    """Indefinite Gram matrix ``G[i, j] = [b_j, b_i]``."""
    b = _basis(b).columns
    if b.shape[0] != ks.n:
        raise DimensionMismatch(f"basis vectors have length {b.shape[0]}, expected {ks.n}")
    return herm(b.conj().T @ ks.J @ b)


def classify_subspace(ks, b, tol=CLASS_TOL):
    """Classify ``span(b)`` as positive, negative, neutral or indefinite.

    The threshold is ``tol * ||b||^2`` so that the classification does not
    depend on how the basis is scaled.
    """
    b = _basis(b)
    mu = scipy.linalg.eigvalsh(gram(ks, b))
    thr = tol * norm2(b.columns) ** 2
    if np.all(mu > thr):
        tag = "positive"
    elif np.all(mu < -thr):
        tag = "negative"
    elif np.all(np.abs(mu) <= thr):
        tag = "neutral"
    else:
        tag = "indefinite"
    return SubspaceClass(tag, float(np.min(np.abs(mu))), mu)


def j_adjoint(ks, a):
    """Adjoint with respect to ``[., .]``: ``J A* J``."""
    a = as_matrix(a, ks.n, "A")
    return ks.J @ a.conj().T @ ks.J


def j_orthogonal_complement(ks, b, rank_tol=RANK_TOL):
    """Basis of ``{x : [x, y] = 0 for all y in span(b)}``, the null space of ``b* J``."""
    b = _basis(b)
    if b.n != ks.n:
        raise DimensionMismatch(f"basis vectors have length {b.n}, expected {ks.n}")
    comp = scipy.linalg.null_space(b.columns.conj().T @ ks.J, rcond=rank_tol)
    if comp.shape[1] + b.dim != ks.n:
        raise RankDeficient("complement dimension does not add up to n")
    return SubspaceBasis(comp)


def principal_angles(b1, b2):
    """Principal angles (radians, descending) between two column spans."""
    return scipy.linalg.subspace_angles(_basis(b1).columns, _basis(b2).columns)


def same_subspace(b1, b2, tol=ANGLE_TOL):
    b1, b2 = _basis(b1), _basis(b2)
    if b1.dim != b2.dim:
        return False
    return bool(np.max(principal_angles(b1, b2)) <= tol)


def oblique_projector(range_basis, kernel_basis):
    """Projector onto ``span(range_basis)`` along ``span(kernel_basis)``.

    Built directly from the two bases: with ``W = [R K]`` square and
    invertible, ``P = [R 0] W^-1``.
    """
    r = _basis(range_basis).columns
    k = _basis(kernel_basis).columns
    w = np.hstack([r, k])
    if w.shape[0] != w.shape[1]:
        raise DimensionMismatch("range and kernel dimensions must add up to n")
    rhs = np.hstack([r, np.zeros_like(k)])
    # P W = rhs  <=>  W^T P^T = rhs^T
    return solve(w.T, rhs.T).T


def krein_projector(ks, b):
    """J-orthogonal projector ``B (B* J B)^-1 B* J`` onto a nondegenerate ``span(b)``.

    Its kernel is the J-orthogonal complement of ``span(b)``, so for a
    positive ``L+`` it is the oblique projector onto ``L+`` along ``L+^[perp]``.
    """
    b = _basis(b).columns
    g = b.conj().T @ ks.J @ b
    return b @ solve(g, b.conj().T @ ks.J)

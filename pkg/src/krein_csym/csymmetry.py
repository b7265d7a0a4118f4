"""C-symmetries of J-self-adjoint matrices.

A J-self-adjoint matrix ``A`` (``A* J = J A``) has a C-symmetry ``C`` when

    (i)   C^2 = I,
    (ii)  J C is Hermitian positive definite,
    (iii) A C = C A.

:func:`construct_c` builds such a ``C`` from the eigenvectors of ``A`` by
splitting them into a J-positive and a J-negative invariant subspace, and
reports the obstruction (complex spectrum, neutral or defective eigenvectors)
when that split does not exist. The remaining functions use a verified ``C``:
the Hermitian similarity transform, the positive inner product
``(x, y)_C = [Cx, y]`` and the block diagonalising transformation ``U``.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ._linalg import as_matrix, herm, norm2, orthonormal_columns
from .exceptions import (ComplexSpectrum, Defective, FNotPositive, InertiaMismatch,
                         NeutralEigenvector, NotJSelfAdjoint, SingularTransformation)
from .krein_core import SubspaceBasis, gram, krein_projector

__all__ = [
    "VER_TOL", "SPEC_TOL", "NEUTRAL_TOL", "COND_CAP", "CLUSTER_TOL", "DEFECT_TOL",
    "CSymmetryReport", "COperator", "JSelfAdjointOperator", "BlockDiagonalization",
    "j_self_adjoint", "c_report", "verify_c_symmetry", "construct_c",
    "hermitize", "hermiticity_defect", "c_inner_gram", "foldy_wouthuysen",
    "block_diagonalize", "adjoint_c_symmetry",
]

VER_TOL = 1e-9
SPEC_TOL = 1e-8
NEUTRAL_TOL = 1e-8
COND_CAP = 1e8
CLUSTER_TOL = 1e-8
DEFECT_TOL = 1e-4
POSITIVITY_FLOOR = 10.0


@dataclass(frozen=True)
class CSymmetryReport:
    """Defects of a candidate C-symmetry.

    All defects are absolute spectral norms; ``passed`` compares them with
    ``tol`` times the natural scale of each clause:

    * (i)   ``||C^2 - I|| <= tol ||C||^2``
    * (ii)  ``||F - F*|| <= tol ||F||`` and ``min eig((F + F*)/2)`` above the
      rounding floor ``POSITIVITY_FLOOR * n * eps * ||F||`` of the eigensolver,
      with ``F = J C``
    * (iii) ``||A C - C A|| <= tol ||A|| ||C||`` (only when ``A`` was given)
    """

    involution_defect: float
    hermiticity_defect: float
    positivity_margin: float
    commutation_defect: float | None
    norm_C: float
    norm_F: float
    norm_A: float | None
    tol: float = VER_TOL
    n: int = 1

    @property
    def relative_involution_defect(self):
        return self.involution_defect / max(self.norm_C ** 2, 1.0)

    @property
    def relative_hermiticity_defect(self):
        return self.hermiticity_defect / max(self.norm_F, 1.0)

    @property
    def relative_commutation_defect(self):
        if self.commutation_defect is None:
            return None
        scale = self.norm_A * self.norm_C
        return self.commutation_defect / scale if scale > 0 else 0.0

    @property
    def positivity_floor(self):
        return POSITIVITY_FLOOR * self.n * np.finfo(float).eps * self.norm_F

    @property
    def failed_clause(self):
        """``'i'``, ``'ii'``, ``'iii'`` or ``None`` for the first violated clause."""
        if self.relative_involution_defect > self.tol:
            return "i"
        if (self.relative_hermiticity_defect > self.tol
                or self.positivity_margin <= self.positivity_floor):
            return "ii"
        rc = self.relative_commutation_defect
        if rc is not None and rc > self.tol:
            return "iii"
        return None

    @property
    def passed(self):
        return self.failed_clause is None

    def as_dict(self):
        return {
            "passed": self.passed,
            "failed_clause": self.failed_clause,
            "involution_defect": self.involution_defect,
            "hermiticity_defect": self.hermiticity_defect,
            "positivity_margin": self.positivity_margin,
            "commutation_defect": self.commutation_defect,
            "norm_C": self.norm_C,
            "norm_A": self.norm_A,
            "tol": self.tol,
        }


@dataclass(frozen=True)
class COperator:
    """A matrix ``C`` with the report of its verification."""

    C: np.ndarray
    report: CSymmetryReport

    @property
    def matrix(self):
        return self.C

    @property
    def passed(self):
        return self.report.passed


@dataclass(frozen=True)
class JSelfAdjointOperator:
    A: np.ndarray
    j_defect: float

    @property
    def matrix(self):
        return self.A


@dataclass(frozen=True)
class BlockDiagonalization:
    """``U^-1 A U`` split along the fundamental decomposition.

    ``A_pp`` and ``A_mm`` are expressed in the orthonormal bases
    ``ks.basis_plus`` and ``ks.basis_minus``.
    """

    A_pp: np.ndarray
    A_mm: np.ndarray
    offdiag_residual: float
    U: np.ndarray


def j_self_adjoint(ks, a, tol=VER_TOL):
    """Wrap ``a`` after checking ``||A* J - J A|| <= tol ||A||``."""
    a = as_matrix(a, ks.n, "A")
    defect = norm2(a.conj().T @ ks.J - ks.J @ a)
    if defect > tol * max(norm2(a), 1.0):
        raise NotJSelfAdjoint(f"A is not J-self-adjoint (defect {defect:.3e})")
    return JSelfAdjointOperator(a, defect)


def c_report(ks, c, a=None, tol=VER_TOL):
    c = as_matrix(c, ks.n, "C")
    f = ks.J @ c
    margin = float(scipy.linalg.eigvalsh(herm(f))[0])
    comm = None
    norm_a = None
    if a is not None:
        a = as_matrix(a, ks.n, "A")
        comm = norm2(a @ c - c @ a)
        norm_a = norm2(a)
    return CSymmetryReport(
        involution_defect=norm2(c @ c - np.eye(ks.n)),
        hermiticity_defect=norm2(f - f.conj().T),
        positivity_margin=margin,
        commutation_defect=comm,
        norm_C=norm2(c),
        norm_F=norm2(f),
        norm_A=norm_a,
        tol=tol,
        n=ks.n,
    )


def verify_c_symmetry(ks, a, c, tol=VER_TOL):
    """Check the three clauses for the pair ``(A, C)``; never raises on failure.

    Returns
    -------
    COperator
        ``C`` with its :class:`CSymmetryReport`; ``report.failed_clause``
        names the first violated clause.
    """
    c = as_matrix(c, ks.n, "C")
    return COperator(c, c_report(ks, c, a, tol))


def _clusters(values, tol):
    order = np.argsort(values)
    groups = [[order[0]]]
    for prev, cur in zip(order[:-1], order[1:]):
        if values[cur] - values[prev] <= tol:
            groups[-1].append(cur)
        else:
            groups.append([cur])
    return groups


def construct_c(ks, a, *, spec_tol=SPEC_TOL, neutral_tol=NEUTRAL_TOL,
                cond_cap=COND_CAP, cluster_tol=CLUSTER_TOL, defect_tol=DEFECT_TOL,
                tol=VER_TOL):
    """Construct a C-symmetry of a J-self-adjoint matrix from its eigenvectors.

    The eigenvectors are sorted by the sign of ``[v, v]``: the positive ones
    span an invariant ``L+``, the negative ones an invariant ``L-``, and
    ``C = P_{L+} - P_{L-}``. Eigenvalues closer than ``cluster_tol ||A||``
    are treated as one eigenspace, whose indefinite Gram matrix is
    diagonalised to split it into positive and negative parts.

    Parameters
    ----------
    ks : KreinStructure
    a : array_like or JSelfAdjointOperator
    spec_tol : float
        Eigenvalues with ``|Im| > spec_tol ||A||`` count as non-real.
    neutral_tol : float
        Unit eigenvectors with ``|[v, v]| < neutral_tol`` count as neutral.
    cond_cap : float
        Largest acceptable condition number of the unit-column eigenvector
        matrix.
    defect_tol : float
        Within a cluster, unit eigenvectors whose span has a singular value
        below this are taken as a rounded Jordan chain.

    Returns
    -------
    COperator

    Raises
    ------
    ComplexSpectrum, Defective, NeutralEigenvector, InertiaMismatch
        Subclasses of :class:`CSymmetryObstruction` describing why no
        C-symmetry exists (or could not be resolved numerically).
    NotJSelfAdjoint
        If ``a`` is not J-self-adjoint.
    """
    a = j_self_adjoint(ks, a, tol=max(tol, 1e-9)).A
    scale = max(norm2(a), np.finfo(float).tiny)

    w, v = scipy.linalg.eig(a)
    k = int(np.argmax(np.abs(w.imag)))
    if abs(w[k].imag) > spec_tol * scale:
        raise ComplexSpectrum(f"non-real eigenvalue {w[k]:.6g}", eigenvalue=w[k])

    v = v / np.linalg.norm(v, axis=0)
    cond = float(np.linalg.cond(v))
    if not np.isfinite(cond) or cond > cond_cap:
        raise Defective(f"eigenvector matrix condition {cond:.3e} exceeds {cond_cap:.1e}", cond=cond)

    lam = w.real
    plus, minus = [], []
    min_margin = np.inf
    for idx in _clusters(lam, cluster_tol * scale):
        q, rank = orthonormal_columns(v[:, idx], defect_tol)
        if rank < len(idx):
            lead = q[:, :1]
            raise Defective(f"eigenvectors at {lam[idx[0]]:.6g} are numerically parallel "
                            "(non-diagonalisable)", eigenvalue=lam[idx[0]],
                            margin=float(np.min(np.abs(gram(ks, lead)))), cond=cond)
        mu, e = scipy.linalg.eigh(gram(ks, q))
        min_margin = min(min_margin, float(np.min(np.abs(mu))))
        if np.min(np.abs(mu)) < neutral_tol:
            raise NeutralEigenvector(
                f"eigenvalue {np.mean(lam[idx]):.6g} has a neutral eigenvector "
                f"(|[v,v]| = {np.min(np.abs(mu)):.3e})",
                eigenvalue=np.mean(lam[idx]), margin=float(np.min(np.abs(mu))), cond=cond)
        qe = q @ e
        plus.append(qe[:, mu > 0])
        minus.append(qe[:, mu < 0])

    l_plus = np.hstack(plus)
    l_minus = np.hstack(minus)
    if l_plus.shape[1] != ks.n_plus or l_minus.shape[1] != ks.n_minus:
        raise InertiaMismatch(
            f"dim L+ = {l_plus.shape[1]}, dim L- = {l_minus.shape[1]}; "
            f"expected {ks.n_plus} and {ks.n_minus}", margin=min_margin, cond=cond)
    cross = norm2(l_plus.conj().T @ ks.J @ l_minus)
    if cross > 1e-6:
        raise Defective(f"invariant subspaces not J-orthogonal (cross Gram {cross:.3e}); "
                        "spectrum is numerically degenerate", margin=min_margin, cond=cond)

    c = krein_projector(ks, SubspaceBasis(l_plus)) - krein_projector(ks, SubspaceBasis(l_minus))
    return verify_c_symmetry(ks, a, c, tol)


def _sqrt_f(ks, c):
    f = herm(ks.J @ as_matrix(c, ks.n, "C"))
    mu, e = scipy.linalg.eigh(f)
    if mu[0] <= 0:
        raise FNotPositive(f"J C has eigenvalue {mu[0]:.3e} <= 0")
    root = np.sqrt(mu)
    return (e * root) @ e.conj().T, (e / root) @ e.conj().T


def hermitize(ks, a, c):
    """Similarity transform ``H = sqrt(JC) A sqrt(JC)^-1``.

    ``H`` is Hermitian exactly when ``C`` commutes with ``A``. The square
    root and its inverse come from the eigendecomposition of the Hermitian
    part of ``JC``.
    """
    a = as_matrix(a, ks.n, "A")
    s, s_inv = _sqrt_f(ks, c)
    return s @ a @ s_inv


def hermiticity_defect(h):
    """``||H - H*|| / ||H||``."""
    h = np.asarray(h)
    nh = norm2(h)
    return norm2(h - h.conj().T) / nh if nh > 0 else 0.0


def c_inner_gram(ks, c, b):
    """Gram matrix of ``(f, g)_C = [Cf, g] = (JCf, g)`` on the columns of ``b``.

    ``G[i, j] = (JC b_j, b_i)``.
    """
    c = as_matrix(c, ks.n, "C")
    b = b if isinstance(b, SubspaceBasis) else SubspaceBasis(b)
    return b.columns.conj().T @ ks.J @ c @ b.columns


def foldy_wouthuysen(ks, c):
    """``U = ((I + C) P+ + (I - C) P-) / 2``, which satisfies ``C U = U J``."""
    c = as_matrix(c, ks.n, "C")
    eye = np.eye(ks.n)
    u = 0.5 * ((eye + c) @ ks.P_plus + (eye - c) @ ks.P_minus)
    cond = np.linalg.cond(u)
    if not np.isfinite(cond) or cond > 1e14:
        raise SingularTransformation(f"U is singular (cond {cond:.3e})")
    return u


def block_diagonalize(ks, a, c):
    """Block form of ``U^-1 A U`` with respect to ``H+ (+) H-``."""
    a = as_matrix(a, ks.n, "A")
    u = foldy_wouthuysen(ks, c)
    b = scipy.linalg.solve(u, a @ u)
    ep, em = ks.basis_plus, ks.basis_minus
    off = ks.P_plus @ b @ ks.P_minus + ks.P_minus @ b @ ks.P_plus
    return BlockDiagonalization(
        A_pp=ep.conj().T @ b @ ep,
        A_mm=em.conj().T @ b @ em,
        offdiag_residual=norm2(off),
        U=u,
    )


def adjoint_c_symmetry(ks, a, c, tol=VER_TOL):
    """``C*`` checked as a C-symmetry of ``A*``."""
    a = as_matrix(a, ks.n, "A")
    c = as_matrix(c, ks.n, "C")
    return verify_c_symmetry(ks, a.conj().T, c.conj().T, tol)

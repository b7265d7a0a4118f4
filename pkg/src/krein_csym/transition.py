"""Transition operators and the C operators they determine.

A transition operator ``T`` is Hermitian, anticommutes with ``J`` and is a
contraction. It maps the fundamental decomposition ``H+ (+) H-`` onto the
J-orthogonal pair ``L+ = (I + T) H+``, ``L- = (I + T) H-``, whose projectors
and C operator have closed forms:

    P_{L-} = (I - T)^-1 (P- - T P+)
    P_{L+} = (I - T)^-1 (P+ - T P-)
    C      = P_{L+} - P_{L-} = J (I - T)(I + T)^-1

and conversely ``T = (I - F)(I + F)^-1`` with ``F = J C``. In finite
dimensions only strict contractions (``||T|| < 1``) give a C operator; norms
within ``STRICT_MARGIN`` of one are flagged with :class:`NearSingularWarning`.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ._linalg import as_matrix, herm, norm2, solve
from .csymmetry import COperator, c_report
from .exceptions import (FNotPositive, NearSingularWarning, NormExceedsOne, NotAnticommuting,
                         NotHermitian)
from .krein_core import TOL_ALG, SubspaceBasis

__all__ = [
    "STRICT_MARGIN", "TransitionOperator", "DualPair",
    "validate_transition", "dual_pair_from_transition", "oblique_projectors",
    "c_from_transition", "transition_from_c",
]

STRICT_MARGIN = 1e-8


@dataclass(frozen=True)
class TransitionOperator:
    T: np.ndarray
    norm: float
    strict: bool

    @property
    def matrix(self):
        return self.T


@dataclass(frozen=True)
class DualPair:
    """J-orthogonal pair of a positive ``L+`` and a negative ``L-``."""

    L_plus: SubspaceBasis
    L_minus: SubspaceBasis
    T: TransitionOperator
    P_Lplus: np.ndarray
    P_Lminus: np.ndarray


def validate_transition(ks, t, tol=TOL_ALG):
    """Check that ``t`` is a transition operator for ``ks``.

    Raises
    ------
    NotHermitian, NotAnticommuting, NormExceedsOne
    """
    if isinstance(t, TransitionOperator):
        t = t.T
    t = as_matrix(t, ks.n, "T")
    scale = max(norm2(t), 1.0)
    d = norm2(t - t.conj().T)
    if d > tol * scale:
        raise NotHermitian(f"T is not Hermitian (defect {d:.3e})")
    d = norm2(ks.J @ t + t @ ks.J)
    if d > tol * scale:
        raise NotAnticommuting(f"J T + T J = {d:.3e} != 0")
    norm = norm2(t)
    if norm > 1 + tol:
        raise NormExceedsOne(f"||T|| = {norm:.12g} > 1")
    return TransitionOperator(t, norm, norm <= 1 - STRICT_MARGIN)


def _transition(ks, t):
    return t if isinstance(t, TransitionOperator) else validate_transition(ks, t)


def _warn_if_not_strict(t):
    if not t.strict:
        cond = (1 + t.norm) / max(1 - t.norm, np.finfo(float).eps)
        warnings.warn(f"||T|| = {t.norm:.12g} is within {STRICT_MARGIN:g} of 1; "
                      f"cond(I +/- T) ~ {cond:.3e}", NearSingularWarning, stacklevel=3)


def oblique_projectors(ks, t):
    """Projectors ``(P_{L+}, P_{L-})`` of the pair determined by ``t``."""
    t = _transition(ks, t)
    _warn_if_not_strict(t)
    i_minus_t = np.eye(ks.n) - t.T
    p_lplus = solve(i_minus_t, ks.P_plus - t.T @ ks.P_minus)
    p_lminus = solve(i_minus_t, ks.P_minus - t.T @ ks.P_plus)
    return p_lplus, p_lminus


def dual_pair_from_transition(ks, t):
    t = _transition(ks, t)
    p_lplus, p_lminus = oblique_projectors(ks, t)
    i_plus_t = np.eye(ks.n) + t.T
    return DualPair(
        L_plus=SubspaceBasis(i_plus_t @ ks.basis_plus),
        L_minus=SubspaceBasis(i_plus_t @ ks.basis_minus),
        T=t,
        P_Lplus=p_lplus,
        P_Lminus=p_lminus,
    )


def c_from_transition(ks, t):
    """``C = J (I - T)(I + T)^-1`` as a verified :class:`COperator` (no ``A`` attached)."""
    t = _transition(ks, t)
    _warn_if_not_strict(t)
    eye = np.eye(ks.n)
    # (I - T) and (I + T)^-1 commute
    c = ks.J @ solve(eye + t.T, eye - t.T)
    return COperator(c, c_report(ks, c))


def transition_from_c(ks, c):
    """``T = (I - F)(I + F)^-1`` with ``F = J C``.

    Raises
    ------
    FNotPositive
        If ``F`` has an eigenvalue ``<= 0``.
    """
    c = as_matrix(getattr(c, "C", c), ks.n, "C")
    f = ks.J @ c
    mu = scipy.linalg.eigvalsh(herm(f))
    if mu[0] <= 0:
        raise FNotPositive(f"J C has eigenvalue {mu[0]:.3e} <= 0")
    eye = np.eye(ks.n)
    t = solve(eye + f, eye - f)
    return validate_transition(ks, t, tol=max(TOL_ALG, 1e-12 * np.linalg.cond(eye + f)))

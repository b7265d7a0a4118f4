"""Schroedinger operator with a PT-symmetric delta / delta' point interaction.

The operator ``-d^2/dx^2 + i gamma (<delta', .> delta + <delta, .> delta')``
is discretised on ``[-L, L]`` with Dirichlet walls, on a cell-centred grid
that is symmetric under ``x -> -x`` and does not contain ``x = 0``. Parity
``P`` (index reversal) and ``R = diag(sign x)`` are then exact involutions
with ``PR = -RP``, so

    C_gamma = alpha P + i beta R,
    alpha = (gamma^2 + 4) / |gamma^2 - 4|,  beta = 4 gamma / |gamma^2 - 4|,
    T_gamma = i (2/gamma) R P   (gamma > 2),   i (gamma/2) R P   (gamma < 2)

hold to rounding on every grid.

The point interaction enters as interface conditions on the traces at
the origin,

    (1 - i gamma/2) f(+0)  = (1 + i gamma/2) f(-0)
    (1 + i gamma/2) f'(+0) = (1 - i gamma/2) f'(-0),

which follow from matching the delta and delta' parts of ``-f''`` on
``W_2^2(R \\ {0})`` with the regularised potential. Each half-line carries
a ghost value at the first cell centre across the origin; traces are the
cell-face average and difference of ghost and innermost node (both second
order), and the two conditions fix the two ghosts. The resulting matrix is
exactly P-self-adjoint and commutes exactly with ``C_gamma``.

At ``gamma = 2`` the ghost system is singular: the conditions only fix the
ghosts up to one free parameter, the discrete image of the fact that every
non-real ``z`` is an eigenvalue of the continuum operator. See
:func:`build_a_gamma` for how that case is represented.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._linalg import norm2
from .csymmetry import SPEC_TOL, JSelfAdjointOperator, construct_c, j_self_adjoint
from .exceptions import CSymmetryObstruction, GammaCritical, KreinError
from .krein_core import KreinStructure, SubspaceBasis
from .transition import DualPair, oblique_projectors, validate_transition

__all__ = [
    "DISC_TOL", "CRITICAL_GAP", "SymmetricGrid", "GammaModel", "SweepRow",
    "hyperbolic_coordinates", "interface_ratios", "parity", "sign_operator",
    "build_c_gamma", "build_t_gamma", "build_a_gamma", "build_model",
    "dual_pair_gamma", "neutral_subspace_at_2", "gamma_sweep",
    "commutation_defect", "pt_commutation_defect", "even_odd_bases",
]

DISC_TOL = 1e-6
CRITICAL_GAP = 1e-12


@dataclass(frozen=True)
class SymmetricGrid:
    """Cell centres ``x = +-(h/2 + (k-1) h)``, ``k = 1..N``, ``h = L/N``, ascending."""

    L: float = 20.0
    N: int = 200
    nodes: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.N < 1 or not self.L > 0:
            raise ValueError(f"need N >= 1 and L > 0, got N={self.N}, L={self.L}")
        right = self.h / 2 + self.h * np.arange(self.N)
        nodes = np.concatenate([-right[::-1], right])
        nodes.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)

    @property
    def h(self):
        return self.L / self.N

    @property
    def dim(self):
        return 2 * self.N

    @property
    def krein(self):
        return KreinStructure(parity(self))


@dataclass(frozen=True)
class GammaModel:
    """All matrices of the model at one coupling ``gamma``.

    ``C``, ``T``, ``alpha`` and ``beta`` are ``None`` at ``gamma = 2``.
    """

    grid: SymmetricGrid
    gamma: float
    A: np.ndarray
    P: np.ndarray
    R: np.ndarray
    C: np.ndarray | None
    T: np.ndarray | None
    alpha: float | None
    beta: float | None


def _is_critical(gamma):
    return abs(gamma - 2.0) <= CRITICAL_GAP


def hyperbolic_coordinates(gamma):
    """``(alpha, beta)`` with ``alpha^2 - beta^2 = 1``."""
    if _is_critical(gamma):
        raise GammaCritical("alpha and beta diverge at gamma = 2")
    d = abs(gamma * gamma - 4.0)
    return (gamma * gamma + 4.0) / d, 4.0 * gamma / d


def interface_ratios(gamma):
    """``(theta, phi)`` with ``f(+0) = theta f(-0)`` and ``f'(+0) = phi f'(-0)``."""
    a, b = 1 - 0.5j * gamma, 1 + 0.5j * gamma
    return b / a, a / b


def parity(grid):
    return np.eye(grid.dim)[::-1].copy()


def sign_operator(grid):
    return np.diag(np.sign(grid.nodes))


def even_odd_bases(grid):
    """Orthonormal bases ``(E, O)`` of grid-even and grid-odd vectors."""
    n = grid.N
    e = np.zeros((grid.dim, n))
    o = np.zeros((grid.dim, n))
    right = np.arange(n, 2 * n)
    left = right[::-1] - n
    s = 1 / np.sqrt(2)
    e[right, np.arange(n)] = s
    e[left, np.arange(n)] = s
    o[right, np.arange(n)] = s
    o[left, np.arange(n)] = -s
    return e, o


def build_c_gamma(grid, gamma):
    """``C_gamma = alpha P + i beta R`` on the grid."""
    alpha, beta = hyperbolic_coordinates(gamma)
    return alpha * parity(grid) + 1j * beta * sign_operator(grid)


def _t_coefficient(gamma):
    if _is_critical(gamma):
        raise GammaCritical("the transition operator has norm 1 at gamma = 2")
    if gamma < 0:
        raise ValueError("gamma must be >= 0")
    return 2.0 / gamma if gamma > 2 else gamma / 2.0


def build_t_gamma(grid, gamma):
    """Validated transition operator ``T_gamma`` (for ``J = P``)."""
    t = 1j * _t_coefficient(gamma) * sign_operator(grid) @ parity(grid)
    return validate_transition(grid.krein, t)


def build_a_gamma(grid, gamma, critical_coupling=1.0, disc_tol=DISC_TOL):
    """Discretised ``A_gamma`` as a P-self-adjoint matrix.

    Node order follows ``grid.nodes``. With ``u1`` the value at the
    innermost node of a half-line and ``g`` its ghost, the traces are
    ``(g + u1)/2`` and ``+-(u1 - g)/h``; the interface conditions then give
    the ghosts as a 2x2 linear map of the two innermost values.

    Parameters
    ----------
    grid : SymmetricGrid
    gamma : float
        Coupling, ``>= 0``.
    critical_coupling : float
        Only used at ``gamma = 2``. There the conditions force the ghosts
        onto ``(g_right, g_left) = c (i, 1)`` and leave ``c`` free; we take
        ``c = critical_coupling * (u_right - i u_left)``, the only P-self-adjoint
        choices. Every such choice leaves the neutral subspace
        ``{e + iRe}`` invariant; ``critical_coupling = 0`` decouples the
        half-lines into two Dirichlet problems and hides the degeneration.
    disc_tol : float
        Allowed relative P-self-adjointness defect.
    """
    if gamma < 0:
        raise ValueError("gamma must be >= 0")
    n, h = grid.N, grid.h
    dim = grid.dim
    main = np.full(dim, 2.0)
    main[0] = main[-1] = 3.0  # Dirichlet wall at +-L: ghost = -u
    off = -np.ones(dim - 1)
    off[n - 1] = 0.0  # no direct stencil across the origin
    a = (np.diag(main) + np.diag(off, 1) + np.diag(off, -1)).astype(complex)

    r1, l1 = n, n - 1
    if _is_critical(gamma):
        p = float(critical_coupling)
        ghost = p * np.array([[1j, 1.0], [1.0, -1j]])
    else:
        ap, bp = 1 - 0.5j * gamma, 1 + 0.5j * gamma
        # a (g_r + r1) = b (g_l + l1);  b (r1 - g_r) = a (g_l - l1)
        m = np.array([[ap, -bp], [bp, ap]])
        q = np.array([[-ap, bp], [bp, ap]])
        ghost = np.linalg.solve(m, q)
    # ghost rows (g_r, g_l) in terms of columns (r1, l1) enter rows r1 and l1
    idx = [r1, l1]
    a[np.ix_(idx, idx)] -= ghost
    a /= h * h
    return j_self_adjoint(grid.krein, a, tol=disc_tol)


def build_model(grid, gamma, critical_coupling=1.0, disc_tol=DISC_TOL):
    a = build_a_gamma(grid, gamma, critical_coupling, disc_tol).A
    p, r = parity(grid), sign_operator(grid)
    if _is_critical(gamma):
        return GammaModel(grid, gamma, a, p, r, None, None, None, None)
    alpha, beta = hyperbolic_coordinates(gamma)
    return GammaModel(grid, gamma, a, p, r, alpha * p + 1j * beta * r,
                      build_t_gamma(grid, gamma).T, alpha, beta)


def dual_pair_gamma(grid, gamma):
    """Invariant pair ``L+ = {e + i t R e}``, ``L- = {o - i t R o}`` with ``t = ||T_gamma||``.

    The bases are built from the orthonormal even/odd bases, so the Gram
    matrix of ``L+`` is ``(1 - t^2) I``.
    """
    t = build_t_gamma(grid, gamma)
    coef = _t_coefficient(gamma)
    ks = grid.krein
    r = sign_operator(grid)
    e, o = even_odd_bases(grid)
    p_lplus, p_lminus = oblique_projectors(ks, t)
    return DualPair(
        L_plus=SubspaceBasis(e + 1j * coef * r @ e),
        L_minus=SubspaceBasis(o - 1j * coef * r @ o),
        T=t,
        P_Lplus=p_lplus,
        P_Lminus=p_lminus,
    )


def neutral_subspace_at_2(grid):
    """Basis ``{e + i R e}`` of the neutral subspace where ``L+`` and ``L-`` meet."""
    e, _ = even_odd_bases(grid)
    return SubspaceBasis(e + 1j * sign_operator(grid) @ e)


def commutation_defect(a, c):
    """``||[A, C]|| / (||A|| ||C||)``."""
    a, c = np.asarray(a), np.asarray(c)
    return norm2(a @ c - c @ a) / (norm2(a) * norm2(c))


def pt_commutation_defect(a):
    """``||P conj(A) P - A|| / ||A||``: PT symmetry as a matrix identity."""
    a = np.asarray(a)
    p = np.eye(a.shape[0])[::-1]
    return norm2(p @ a.conj() @ p - a) / norm2(a)


@dataclass(frozen=True)
class SweepRow:
    gamma: float
    max_im_lambda: float
    norm_C: float
    cond_F: float
    status: str


def _sweep_row(grid, gamma, critical_coupling, disc_tol, spec_tol):
    model = build_model(grid, gamma, critical_coupling, disc_tol)
    lam = np.linalg.eigvals(model.A)
    max_im = float(np.max(np.abs(lam.imag)))
    if model.C is None:
        norm_c = cond_f = float("nan")
    else:
        norm_c = norm2(model.C)
        cond_f = float(np.linalg.cond(model.P @ model.C))
    try:
        ok = construct_c(grid.krein, model.A, spec_tol=spec_tol).passed
        status = "ok" if ok else "VerificationFailed"
    except CSymmetryObstruction as exc:
        status = exc.status
    except KreinError as exc:
        status = type(exc).__name__
    return SweepRow(float(gamma), max_im, norm_c, cond_f, status)


def _threads():
    try:
        return max(1, int(os.environ.get("KREIN_CSYM_THREADS", "1")))
    except ValueError:
        return 1


def gamma_sweep(grid, gammas, critical_coupling=1.0, threads=None, disc_tol=DISC_TOL,
                spec_tol=SPEC_TOL):
    """One :class:`SweepRow` per coupling, in input order.

    ``status`` is ``"ok"`` when :func:`construct_c` finds a C-symmetry of the
    discretised operator and otherwise names the obstruction. ``norm_C`` and
    ``cond_F`` refer to ``C_gamma`` and are NaN at ``gamma = 2``.
    Rows are computed on ``threads`` workers (default: ``KREIN_CSYM_THREADS``).
    """
    threads = _threads() if threads is None else threads
    gammas = [float(g) for g in gammas]
    if any(g < 0 for g in gammas):
        raise ValueError("gamma must be >= 0")
    if threads <= 1:
        return [_sweep_row(grid, g, critical_coupling, disc_tol, spec_tol) for g in gammas]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda g: _sweep_row(grid, g, critical_coupling, disc_tol, spec_tol),
                             gammas))

"""Finite truncations of direct sums of point-interaction operators.

``A = A_{gamma_1} (+) ... (+) A_{gamma_M}`` with ``J`` the blockwise parity
has the C-symmetry ``C = (+) C_{gamma_i}`` for every finite ``M``. When the
couplings accumulate at 2 the truncations keep passing every check while
``||C_M||`` grows without bound and ``||T_M||`` creeps up to 1, which is how
an unbounded C shows up at finite size.

Truncations are kept as lists of blocks; a dense assembly is only built on
request.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from ._linalg import norm2
from .csymmetry import CSymmetryReport, VER_TOL, c_report
from .exceptions import GammaCritical
from .krein_core import KreinStructure
from .point_interaction import (CRITICAL_GAP, SymmetricGrid, _threads, build_a_gamma,
                                build_c_gamma, build_t_gamma, parity)

__all__ = [
    "RULES", "DirectSumSpec", "Truncation", "TableRow",
    "build_truncation", "unboundedness_table", "check_unboundedness",
    "closed_form_norm_C", "closed_form_norm_T",
]


RULES = {
    "above": lambda i: 2.0 + 1.0 / i,
    "below": lambda i: 2.0 - 1.0 / i,
}


def closed_form_norm_C(gamma):
    return (gamma + 2.0) / abs(gamma - 2.0)


def closed_form_norm_T(gamma):
    return min(gamma / 2.0, 2.0 / gamma) if gamma > 0 else 0.0


@dataclass(frozen=True)
class DirectSumSpec:
    gammas: tuple
    grid: SymmetricGrid = field(default_factory=lambda: SymmetricGrid(L=20.0, N=20))

    def __post_init__(self):
        gammas = tuple(float(g) for g in self.gammas)
        if not gammas:
            raise ValueError("need at least one block")
        if any(g < 0 for g in gammas):
            raise ValueError("gamma must be >= 0")
        bad = [g for g in gammas if abs(g - 2.0) <= CRITICAL_GAP]
        if bad:
            raise GammaCritical(f"gamma = 2 has no C-symmetry (blocks {bad})")
        object.__setattr__(self, "gammas", gammas)

    @classmethod
    def from_rule(cls, rule, m, grid=None):
        f = RULES[rule] if isinstance(rule, str) else rule
        gammas = tuple(f(i) for i in range(1, m + 1))
        return cls(gammas) if grid is None else cls(gammas, grid)

    @property
    def block_dim(self):
        return self.grid.dim


@dataclass(frozen=True)
class Truncation:
    """Per-block ``A_i``, ``C_i``, ``T_i`` sharing one grid and ``J = P``."""

    spec: DirectSumSpec
    A: list
    C: list
    T: list

    @property
    def M(self):
        return len(self.A)

    def block_krein(self):
        return self.spec.grid.krein

    def prefix(self, m):
        return Truncation(DirectSumSpec(self.spec.gammas[:m], self.spec.grid),
                          self.A[:m], self.C[:m], self.T[:m])

    def norm_C(self):
        return max(norm2(c) for c in self.C)

    def norm_T(self):
        return max(norm2(t) for t in self.T)

    def cond_F(self):
        p = parity(self.spec.grid)
        mu = np.concatenate([scipy.linalg.eigvalsh(0.5 * (p @ c + (p @ c).conj().T))
                             for c in self.C])
        return float(mu.max() / mu.min())

    def block_reports(self, tol=VER_TOL):
        ks = self.block_krein()
        return [c_report(ks, c, a, tol) for a, c in zip(self.A, self.C)]

    def verify(self, tol=VER_TOL):
        """Global report assembled from the blocks.

        Spectral norms of block-diagonal matrices are maxima over blocks and
        the smallest eigenvalue of ``J C`` is the minimum over blocks, so this
        equals the report of the dense assembly.
        """
        reps = self.block_reports(tol)
        return CSymmetryReport(
            involution_defect=max(r.involution_defect for r in reps),
            hermiticity_defect=max(r.hermiticity_defect for r in reps),
            positivity_margin=min(r.positivity_margin for r in reps),
            commutation_defect=max(r.commutation_defect for r in reps),
            norm_C=max(r.norm_C for r in reps),
            norm_F=max(r.norm_F for r in reps),
            norm_A=max(r.norm_A for r in reps),
            tol=tol,
            n=sum(r.n for r in reps),
        )

    def dense(self):
        """Dense ``(ks, A, C, T)``; only sensible for small ``M``."""
        j = scipy.linalg.block_diag(*[parity(self.spec.grid)] * self.M)
        return (KreinStructure(j), scipy.linalg.block_diag(*self.A),
                scipy.linalg.block_diag(*self.C), scipy.linalg.block_diag(*self.T))


def _block(grid, gamma):
    return build_a_gamma(grid, gamma).A, build_c_gamma(grid, gamma), build_t_gamma(grid, gamma).T


def build_truncation(spec, threads=None):
    """Blocks of ``(+) A_gamma_i`` with their ``C`` and ``T``; see :meth:`Truncation.dense`."""
    threads = _threads() if threads is None else threads
    if threads <= 1:
        blocks = [_block(spec.grid, g) for g in spec.gammas]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            blocks = list(pool.map(lambda g: _block(spec.grid, g), spec.gammas))
    a, c, t = (list(x) for x in zip(*blocks))
    return Truncation(spec, A=a, C=c, T=t)


@dataclass(frozen=True)
class TableRow:
    M: int
    norm_T: float
    norm_C: float
    cond_F: float
    closed_norm_T: float
    closed_norm_C: float
    passed: bool


def unboundedness_table(rule, m_values, grid=None):
    """Norm growth over truncation sizes ``m_values`` of the sequence ``rule``.

    ``rule`` is a key of :data:`RULES` or a callable ``i -> gamma_i``
    (``i = 1, 2, ...``). The largest truncation is built once and the
    smaller ones are its prefixes.
    """
    m_values = [int(m) for m in m_values]
    if not m_values or min(m_values) < 1:
        raise ValueError("truncation sizes must be >= 1")
    spec = DirectSumSpec.from_rule(rule, max(m_values), grid)
    full = build_truncation(spec)
    rows = []
    for m in m_values:
        tr = full.prefix(m)
        g = tr.spec.gammas
        rows.append(TableRow(
            M=m,
            norm_T=tr.norm_T(),
            norm_C=tr.norm_C(),
            cond_F=tr.cond_F(),
            closed_norm_T=max(closed_form_norm_T(x) for x in g),
            closed_norm_C=max(closed_form_norm_C(x) for x in g),
            passed=tr.verify().passed,
        ))
    return rows


def check_unboundedness(rows, tol=1e-9):
    """Raise ``AssertionError`` unless the rows show the expected divergence.

    Checks: numeric norms equal the closed forms within ``tol`` (relative),
    every truncation verifies, and ``||T_M||``, ``||C_M||`` strictly increase
    with ``M``.
    """
    for r in rows:
        assert abs(r.norm_C - r.closed_norm_C) <= tol * r.closed_norm_C, r
        assert abs(r.norm_T - r.closed_norm_T) <= tol, r
        assert r.passed, r
    rows = sorted(rows, key=lambda r: r.M)
    for a, b in zip(rows, rows[1:]):
        assert b.norm_T > a.norm_T and b.norm_C > a.norm_C, (a, b)

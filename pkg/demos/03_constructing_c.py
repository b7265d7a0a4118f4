# %% [markdown]
# # Building C from a J-self-adjoint matrix
#
# For `A` with `A* J = J A`, real spectrum and no neutral eigenvectors, the
# positive eigenvectors span an invariant `L+`, the negative ones an
# invariant `L-`, and `C = P_{L+} - P_{L-}` commutes with `A`. Then
# `sqrt(JC) A sqrt(JC)^-1` is Hermitian and `U = (I + CJ)/2` block
# diagonalises `A`.

# %%
import numpy as np

from krein_csym import (KreinStructure, adjoint_c_symmetry, block_diagonalize, construct_c,
                        hermitize, verify_c_symmetry)
from krein_csym.csymmetry import hermiticity_defect
from krein_csym.exceptions import CSymmetryObstruction

ks = KreinStructure(np.diag([1.0, -1.0]))
a = np.array([[2.0, 1.0], [-1.0, -1.0]])
op = construct_c(ks, a)
print("C =\n", op.C.real)
print(op.report.as_dict())

h = hermitize(ks, a, op.C)
print("Hermitian defect", hermiticity_defect(h), "eigenvalues", np.linalg.eigvalsh(h))
b = block_diagonalize(ks, a, op.C)
print("blocks", b.A_pp.ravel().real, b.A_mm.ravel().real, "off-diagonal", b.offdiag_residual)
print("C* for A*:", adjoint_c_symmetry(ks, a, op.C).passed)

# %% [markdown]
# When no C-symmetry exists the construction says why.

# %%
cases = {
    "rotation (eigenvalues +-i)": np.array([[0.0, 1.0], [-1.0, 0.0]]),
    "Jordan block, neutral eigenvector": np.array([[1.0, 1.0], [-1.0, -1.0]]),
}
for name, m in cases.items():
    try:
        construct_c(ks, m)
    except CSymmetryObstruction as exc:
        print(f"{name}: {exc.as_dict()}")

# %% [markdown]
# Just off the Jordan block the spectrum is real again and `C` exists,
# but its norm blows up as the eigenvectors approach the neutral one.

# %%
for eps in (1e-2, 1e-4, 1e-6, 1e-8):
    m = np.array([[1.0, 1.0], [-1.0, -1.0]]) + eps * (np.eye(2) + ks.J)
    op = construct_c(ks, m)
    print(f"eps={eps:.0e}  ||C||={op.report.norm_C:.4g}  passed={op.passed}")
print(verify_c_symmetry(ks, a, -ks.J).report.failed_clause)

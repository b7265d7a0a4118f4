# %% [markdown]
# # A PT-symmetric point interaction
#
# `-d^2/dx^2` on `[-L, L]` with the interface conditions
# `(1 - i g/2) f(+0) = (1 + i g/2) f(-0)`,
# `(1 + i g/2) f'(+0) = (1 - i g/2) f'(-0)`.
# With parity `P` as fundamental symmetry and `R = sign(x)`, the operator
# has the C-symmetry `C = a P + i b R` for every coupling `g != 2`, with
# `||C|| = (g + 2)/|g - 2|`. At `g = 2` the invariant pair collapses onto the
# neutral subspace `{e + iRe}`.

# %%
import numpy as np

from krein_csym import (SymmetricGrid, build_model, construct_c, gamma_sweep,
                        neutral_subspace_at_2)
from krein_csym.exceptions import CSymmetryObstruction
from krein_csym.point_interaction import build_a_gamma, commutation_defect

grid = SymmetricGrid(L=20.0, N=200)
for g in (0.5, 1.0, 4.0, 8.0):
    m = build_model(grid, g)
    lam = np.linalg.eigvals(m.A)
    low = np.sort(lam.real)[:3]
    print(f"g={g}: max|Im|={np.max(np.abs(lam.imag)):.1e}  [A,C] defect={commutation_defect(m.A, m.C):.1e}"
          f"  lowest {low}  continuum {(np.arange(1, 4) * np.pi / 40) ** 2}")

# %% [markdown]
# Sweep across the critical coupling (CSV-ready rows).

# %%
small = SymmetricGrid(L=20.0, N=50)
print("gamma,max_im_lambda,norm_C,cond_F,status")
for r in gamma_sweep(small, [1.0, 1.5, 1.9, 1.99, 1.999, 2.0, 2.001, 2.1, 3.0, 4.0]):
    print(f"{r.gamma},{r.max_im_lambda:.3e},{r.norm_C:.6g},{r.cond_F:.6g},{r.status}")

# %% [markdown]
# At `g = 2` the neutral subspace is invariant and the eigenvector
# construction refuses to produce a C.

# %%
b = neutral_subspace_at_2(small).columns
print("Gram norm of {e + iRe}:", np.linalg.norm(b.conj().T @ small.krein.J @ b))
try:
    construct_c(small.krein, build_a_gamma(small, 2.0).A)
except CSymmetryObstruction as exc:
    print(exc.as_dict())

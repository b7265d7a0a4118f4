# %% [markdown]
# # Transition operators and C
#
# A Hermitian `T` with `JT = -TJ` and `||T|| < 1` tilts the fundamental
# decomposition into a J-orthogonal positive/negative pair
# `L+ = (I+T)H+`, `L- = (I+T)H-`. The reflection through this pair is
# `C = P_{L+} - P_{L-} = J(I-T)(I+T)^-1`.

# %%
import numpy as np

from krein_csym import (KreinStructure, c_from_transition, dual_pair_from_transition,
                        oblique_projectors, transition_from_c)
from krein_csym.testing import random_fundamental_symmetry, random_transition

ks = KreinStructure(np.diag([1.0, -1.0]))
t = np.array([[0.0, 0.5], [0.5, 0.0]])
pair = dual_pair_from_transition(ks, t)
print("L+ basis", pair.L_plus.columns.ravel(), " L- basis", pair.L_minus.columns.ravel())
c = c_from_transition(ks, t)
print("C =\n", c.C)
print("C^2 = I:", np.allclose(c.C @ c.C, np.eye(2)), " report passed:", c.passed)
print("T recovered:\n", transition_from_c(ks, c).T.real)

# %% [markdown]
# Random check: the two formulas for `C` agree and `JC` has spectrum in
# `[(1-||T||)/(1+||T||), (1+||T||)/(1-||T||)]`.

# %%
rng = np.random.default_rng(0)
ks = random_fundamental_symmetry(8, 3, rng=rng)
for norm in (0.1, 0.5, 0.9, 0.99):
    t = random_transition(ks, norm, rng)
    c = c_from_transition(ks, t).C
    pp, pm = oblique_projectors(ks, t)
    mu = np.linalg.eigvalsh(ks.J @ c)
    print(f"||T||={norm:<5} |C-(P+ - P-)|={np.linalg.norm(c - (pp - pm), 2):.1e} "
          f"eig(JC) in [{mu[0]:.4g}, {mu[-1]:.4g}] bound {(1 + norm) / (1 - norm):.4g}")

# %% [markdown]
# # Krein-space basics
#
# A fundamental symmetry `J` (Hermitian, `J^2 = I`) turns `C^n` into a space
# with the indefinite product `[x, y] = (Jx, y)`. Subspaces are positive,
# negative, neutral or indefinite according to the Gram matrix `B* J B`.

# %%
import numpy as np

from krein_csym import KreinStructure, classify_subspace, indefinite_inner, j_orthogonal_complement
from krein_csym.krein_core import same_subspace

ks = KreinStructure(np.diag([1.0, -1.0]))
for x in ([1, 0], [1, 1], [0, 1]):
    x = np.array(x, float)
    print(x, indefinite_inner(ks, x, x), classify_subspace(ks, x).tag)

# %% [markdown]
# `J` need not be diagonal. On a two-point symmetric grid parity swaps the
# two nodes; `(1, 1/2)` is positive while `(1, i/2)` is neutral.

# %%
parity = KreinStructure(np.array([[0.0, 1.0], [1.0, 0.0]]))
for x in (np.array([1, 0.5]), np.array([1, 0.5j])):
    c = classify_subspace(parity, x)
    print(x, c.tag, c.margin)

# %% [markdown]
# The J-orthogonal complement of the graph `{(1, t)}` of a contraction is
# the graph `{(conj(t), 1)}`, and taking the complement twice returns the
# original line.

# %%
t = 0.4 - 0.3j
line = np.array([1.0, t])
comp = j_orthogonal_complement(ks, line)
print(classify_subspace(ks, comp).tag, same_subspace(comp, np.array([np.conj(t), 1.0])))
print(same_subspace(j_orthogonal_complement(ks, comp), line))

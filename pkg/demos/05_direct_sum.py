# %% [markdown]
# # Direct sums with couplings accumulating at 2
#
# Each block `A_{g_i}` has a bounded C-symmetry, so every finite direct sum
# does too. With `g_i = 2 + 1/i` the block norms `4i + 1` grow without
# bound: each truncation verifies, while `||C_M|| = 4M + 1` and
# `||T_M|| = 2M/(2M + 1) -> 1`.

# %%
from krein_csym import DirectSumSpec, build_truncation, check_unboundedness, unboundedness_table

rows = unboundedness_table("above", [1, 2, 5, 10, 20, 50, 100])
check_unboundedness(rows)
print("M,norm_T,norm_C,cond_F,verified")
for r in rows:
    print(f"{r.M},{r.norm_T:.12g},{r.norm_C:.12g},{r.cond_F:.12g},{r.passed}")

# %% [markdown]
# Keeping the couplings away from 2 keeps `C` bounded, however many blocks.

# %%
spec = DirectSumSpec(tuple(3.0 + (i % 5) for i in range(40)))
tr = build_truncation(spec)
print("40 blocks, couplings in [3, 7]: ||C|| =", tr.norm_C(), " verified:", tr.verify().passed)

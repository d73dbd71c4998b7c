"""
A folded linearized Reed-Solomon code
=====================================

q=3, m=6, two blocks, folding parameter 3, N=4 folded columns, dimension 2.
"""

# %%
from flrs import CodeParams, encode, is_msrd, min_distance, sum_rank_weight, unfold

p = CodeParams.build(q=3, m=6, ell=2, h=3, N=4, k=2)
print("length", p.n, "block shape", p.shape[1:], "d =", min_distance(p), "MSRD:", is_msrd(p))

# %% [markdown]
# Each block is an h x N_i^F matrix; column j of block i holds h consecutive evaluations.

# %%
c = encode(p, [17, 400])
print(c.blocks)
print("unfolded:", unfold(c))
print("sum-rank weight:", sum_rank_weight(p.field, c))

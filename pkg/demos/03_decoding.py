"""
Unique and list decoding
========================
"""

# %%
from flrs import (LIST, CodeParams, DecoderConfig, decode, decoding_radius, encode,
                  make_rng, sample_error, word_add)

p = CodeParams.build(q=3, m=6, ell=2, h=3, N=4, k=2)
F = p.field
print("unique radius (s=2, mu=1):", decoding_radius(p, 2, 1))
print("list radius (s=2):", decoding_radius(p, 2))

# %% [markdown]
# Add an error of sum-rank weight 2, beyond half the minimum distance.

# %%
rng = make_rng(7)
f = [123, 456]
R = word_add(F, encode(p, f), sample_error(p, 2, rng))
out = decode(p, DecoderConfig(s=2), R)
print(out.kind, [g.padded(p.k) for g in out.messages], out.diagnostics)

# %%
out = decode(p, DecoderConfig(s=2), R, mode=LIST)
print(out.kind, "list size", len(out.messages))

"""
Fields, Frobenius and skew polynomials
======================================

Elements of F_{q^m} are plain ints whose base-q digits are the coefficients.
"""

# %%
from flrs import GF, SkewPoly, op_evaluate, skew_mul

F = GF(3, 6)
print(F)
print("gamma =", F.gamma, "coefficients", F.coeffs(F.gamma))

# %% [markdown]
# The Frobenius map a -> a^q is F_q-linear and has order m.

# %%
a = 100
print([F.frobenius(a, i) for i in range(7)])

# %% [markdown]
# Skew polynomials do not commute: x * c = sigma(c) * x.

# %%
x, c = SkewPoly((0, 1)), SkewPoly((F.gamma,))
print("x*c =", skew_mul(F, x, c).coeffs)
print("c*x =", skew_mul(F, c, x).coeffs)

# %% [markdown]
# Generalized operator evaluation turns a product into a composition.

# %%
f, g = SkewPoly((1, 2, 3)), SkewPoly((5, 7))
b, ai = 42, F.gamma
lhs = op_evaluate(F, skew_mul(F, f, g), b, ai)
rhs = op_evaluate(F, f, op_evaluate(F, g, b, ai), ai)
print(lhs, rhs, lhs == rhs)

"""
Monte Carlo failure rate and the normalized radius curve
========================================================
"""

# %%
from flrs import CodeParams, SimulationConfig, radius_table, simulate

p = CodeParams.build(q=3, m=6, ell=2, h=3, N=4, k=2)
rep = simulate(SimulationConfig(p, s=2, mu=1, t=2, trials=2000, seed=1))
print(f"{rep.failures}/{rep.trials} failures, heuristic bound {float(rep.heuristic_bound):.3g}")
print("kernel dimensions seen:", rep.d_I_hist)

# %% [markdown]
# Fraction of correctable errors against rate for h = 25.

# %%
for row in radius_table(25, grid=11):
    print(row["R"], row["tau"], "s =", row["best_s"])

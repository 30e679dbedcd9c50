# %% [markdown]
# # Rank-deficient constraints
#
# DEGEN2 is QP1 with its single constraint written twice. The Jacobian has
# rank one, so the unregularized Newton matrix is singular in its lower block
# and the plain interior point baseline cannot factorize it. The dual
# regularization puts -rho on that block and the same step becomes solvable.

# %%
import numpy as np

from regip import BaselineConfig, RegipConfig, get_problem, plain_ip_solve, regip_solve

# %%
for name in ("DEGEN1", "DEGEN2"):
    p = get_problem(name).problem
    a = regip_solve(p, RegipConfig(eps=1e-6))
    b = plain_ip_solve(p, BaselineConfig(eps=1e-6))
    print(f"{name}: regip {a.status.value:<16} ip {b.status.value:<16} x = {np.round(a.x, 6)}")

# %% [markdown]
# The multipliers of DEGEN2 are not unique (any y1 + y2 = -1/2 works).
# The regularized method picks the symmetric split.

# %%
rep = regip_solve(get_problem("DEGEN2").problem, RegipConfig(eps=1e-6))
print("y =", rep.y, " sum =", rep.y.sum())

# %% [markdown]
# Outer history: rho stays put while feasibility improves fast enough,
# mu shrinks once complementarity stalls.

# %%
print(f"{'k':>3} {'rho':>9} {'mu':>9} {'eps_k':>9} {'||c||':>9} {'V':>9} inner")
for h in rep.history:
    print(f"{h.k:3d} {h.rho:9.1e} {h.mu:9.1e} {h.eps_inner:9.1e} {h.C:9.1e} {h.V:9.1e} {h.inner_iterations:5d}")

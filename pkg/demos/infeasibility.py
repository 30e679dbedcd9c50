# %% [markdown]
# # Detecting an infeasible problem
#
# INFEAS1 asks for x >= 0 with x^2 + 1 = 0. The solver cannot satisfy the
# constraint, so it drives rho down to its floor and ends up at a stationary
# point of the least-squares problem min 0.5||c(x)||^2 over x >= 0.

# %%
from regip import RegipConfig, get_problem, regip_solve
from regip.stationarity import feasibility_residual

# %%
p = get_problem("INFEAS1").problem
rep = regip_solve(p, RegipConfig(eps=1e-6))
print("status:", rep.status.value)
print("x     :", rep.x)
print("||c|| :", abs(p.cons(rep.x)[0]))
print("least-squares stationarity:", rep.infeasibility.stationarity)

# %% [markdown]
# Along the run, rho halves whenever feasibility fails to improve, and the
# constraint value stays pinned near 1.

# %%
for h in rep.history[::10]:
    print(f"k={h.k:3d} rho={h.rho:8.1e} ||c||={h.C:.6f} x={h.x[0]:.2e}")

# %% [markdown]
# A point away from zero is not stationary for the least-squares problem.

# %%
import numpy as np

print("residual at x = 1:", feasibility_residual(p, np.array([1.0]), np.array([0.0])).stationarity)

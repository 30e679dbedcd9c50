# %% [markdown]
# # Robustness table on the built-in suite
#
# Runs the three solvers at the two default tolerances and prints the
# win / both-solve / both-fail / loss counts per size bucket.

# %%
import sys

from regip.harness import DEFAULT_TOLERANCES, SOLVERS, compare_table, render_compare, run_bench

jobs = int(sys.argv[1]) if len(sys.argv) > 1 else 1
res = run_bench(SOLVERS, DEFAULT_TOLERANCES, time_limit=60.0, jobs=jobs)

# %%
for s in SOLVERS:
    counts = "  ".join(f"eps={e:.0e}: {res.solved_count(s, e):2d}" for e in DEFAULT_TOLERANCES)
    print(f"{s:6s} {counts}")

# %%
for other in ("ip", "bcl"):
    print()
    print(render_compare(compare_table(res.rows, "regip", other), "regip", other))

# %% [markdown]
# Problems where the outcome differs between solvers.

# %%
by_problem = {}
for r in res.rows:
    by_problem.setdefault((r.problem, r.eps), {})[r.solver] = r.status
for (name, eps), st in sorted(by_problem.items()):
    if len(set(st.values())) > 1:
        print(f"{name:8s} eps={eps:.0e}  " + "  ".join(f"{s}={st[s]}" for s in SOLVERS))

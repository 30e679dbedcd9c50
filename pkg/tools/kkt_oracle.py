"""Offline reference solutions by active-set enumeration.

For every subset A of the bound constraints the oracle fixes ``x_A = 0`` and
runs damped Gauss-Newton on the reduced KKT equations::

    grad_F f(x) + J_F(x)^T y = 0,   c(x) = 0

from several deterministic starts.  A limit point is kept when the residual
is below 1e-12, ``x_F >= 0`` and ``z_A = -(grad f + J^T y)_A <= 0``.  Among
the kept points the lowest objective wins; ties go to the point nearest to
the problem's starting point.

Run ``python3 tools/kkt_oracle.py --write`` to regenerate
``src/regip/_references.py``.  This does not share any code with the solvers.
"""
from __future__ import annotations

import argparse
import itertools
from pathlib import Path

import numpy as np

ORACLE_PROBLEMS = [
    "CIRCLE", "HS4", "HS6", "HS8", "HS9", "HS14", "HS21", "HS28", "HS35",
    "HS39", "HS40", "HS42", "HS48", "HS50", "HS51", "HS71", "HS79",
]
TOL = 1e-12


def _reduced_newton(p, free, x_init, y_init, iters=200):
    n, m = p.n, p.m
    x = x_init.copy()
    x[~free] = 0.0
    y = y_init.copy()

    def residual(x, y):
        g = p.objective_gradient(x) + p.constraint_jacobian(x).reshape(m, n).T @ y
        return np.concatenate([g[free], np.atleast_1d(p.constraints(x))])

    r = residual(x, y)
    for _ in range(iters):
        nr = np.linalg.norm(r)
        if nr <= TOL * 1e-2:
            break
        J = p.constraint_jacobian(x).reshape(m, n)
        H = p.lagrangian_hessian(x, y)
        K = np.block([[H[np.ix_(free, free)], J[:, free].T], [J[:, free], np.zeros((m, m))]])
        step = np.linalg.lstsq(K, -r, rcond=None)[0]
        dx, dy = step[: free.sum()], step[free.sum():]
        t = 1.0
        while t > 1e-10:
            xt = x.copy()
            xt[free] += t * dx
            yt = y + t * dy
            with np.errstate(all="ignore"):
                rt = residual(xt, yt)
            if np.all(np.isfinite(rt)) and np.linalg.norm(rt) < (1.0 - 1e-4 * t) * nr:
                break
            t *= 0.5
        else:
            break
        x, y, r = xt, yt, rt
    return x, y, float(np.linalg.norm(r))


def kkt_points(p, starts=8, seed=0):
    rng = np.random.default_rng(seed)
    n, m = p.n, p.m
    x0 = np.maximum(np.asarray(p.x0, dtype=float), 0.0)
    y0 = np.asarray(p.y0, dtype=float)
    found = []
    for active in itertools.product([False, True], repeat=n):
        free = ~np.array(active)
        inits = [(x0, y0), (x0, np.zeros(m))]
        scale = 2.0 * np.maximum(1.0, np.abs(x0))
        for _ in range(starts):
            inits.append((rng.uniform(0.0, scale), rng.normal(size=m)))
        for xs, ys in inits:
            try:
                with np.errstate(all="ignore"):
                    x, y, res = _reduced_newton(p, free, xs, ys)
            except (ValueError, np.linalg.LinAlgError, ZeroDivisionError, FloatingPointError):
                continue
            if not res <= TOL or np.any(x < -TOL):
                continue
            x = np.maximum(x, 0.0)
            z = -(p.objective_gradient(x) + p.constraint_jacobian(x).reshape(m, n).T @ y)
            z[free] = 0.0
            if np.any(z > TOL):
                continue
            found.append((float(p.objective(x)), x, y, z))
    return found


def select(p, found):
    if not found:
        return None
    fbest = min(f for f, *_ in found)
    x0 = np.asarray(p.x0, dtype=float)
    cands = [t for t in found if t[0] <= fbest + 1e-8 * max(1.0, abs(fbest))]
    return min(cands, key=lambda t: float(np.linalg.norm(t[1] - x0)))


def compute_all():
    from regip.problems import _BUILDERS

    out = {}
    for name in ORACLE_PROBLEMS:
        p = _BUILDERS[name][0]()
        best = select(p, kkt_points(p))
        if best is None:
            raise RuntimeError(f"oracle found no KKT point for {name}")
        out[name] = best
    return out


def render(refs) -> str:
    lines = [
        '"""Reference KKT points generated by tools/kkt_oracle.py; do not edit by hand."""',
        "",
        "ORACLE_REFERENCES = {",
    ]
    for name, (f, x, y, z) in refs.items():
        fmt = lambda v: "(" + "".join(f"{float(t)!r}, " for t in v) + ")"
        lines.append(f"    {name!r}: ({fmt(x)}, {fmt(y)}, {fmt(z)}, {f!r}),")
    lines.append("}")
    return "\n".join(lines) + "\n"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--write", action="store_true", help="overwrite src/regip/_references.py")
    args = ap.parse_args()
    text = render(compute_all())
    if args.write:
        target = Path(__file__).resolve().parents[1] / "src" / "regip" / "_references.py"
        target.write_text(text)
        print(f"wrote {target}")
    else:
        print(text)


if __name__ == "__main__":
    main()

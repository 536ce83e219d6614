#!/usr/bin/env python3
"""Solve a sparse SDPA file written by `hardy npa-export` and print the
degree-of-success upper bound (objective_constant - min c.x).

Needs cvxpy. Exit status 3 when cvxpy is missing so callers can skip.
"""

import argparse
import sys


def parse(path):
    constant = 0.0
    data = []
    with open(path) as f:
        for line in f:
            s = line.strip()
            if not s:
                continue
            if s[0] in "*\"":
                parts = s[1:].split()
                if len(parts) == 2 and parts[0] == "objective_constant":
                    constant = float(parts[1])
                continue
            data.append(s.replace(",", " ").replace("{", " ").replace("}", " "))
    m = int(data[0].split()[0])
    nblocks = int(data[1].split()[0])
    sizes = [int(v) for v in data[2].split()[:nblocks]]
    c = [float(v) for v in data[3].split()[:m]]
    entries = []
    for s in data[4:]:
        mat, blk, i, j, v = s.split()
        entries.append((int(mat), int(blk), int(i), int(j), float(v)))
    return constant, m, sizes, c, entries


def solve(path, solver):
    import numpy as np
    import cvxpy as cp

    constant, m, sizes, c, entries = parse(path)
    x = cp.Variable(m)
    mats = [[np.zeros((abs(n), abs(n))) for _ in range(m + 1)] for n in sizes]
    for mat, blk, i, j, v in entries:
        a = mats[blk - 1][mat]
        a[i - 1, j - 1] = v
        a[j - 1, i - 1] = v
    constraints = []
    for b, n in enumerate(sizes):
        expr = -mats[b][0] + sum(x[i] * mats[b][i + 1] for i in range(m)
                                 if mats[b][i + 1].any())
        if n > 0:
            constraints.append(cp.Constant(np.zeros((n, n))) + (expr + expr.T) / 2 >> 0)
        else:
            constraints.append(cp.diag(expr) >= 0)
    problem = cp.Problem(cp.Minimize(np.array(c) @ x), constraints)
    problem.solve(solver=solver)
    if problem.status not in ("optimal", "optimal_inaccurate"):
        raise RuntimeError("solver status " + problem.status)
    return constant - problem.value


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("file")
    ap.add_argument("--solver", default="CLARABEL")
    args = ap.parse_args()
    try:
        import cvxpy  # noqa: F401
    except ImportError:
        print("cvxpy not available", file=sys.stderr)
        return 3
    print("%.9f" % solve(args.file, args.solver))
    return 0


if __name__ == "__main__":
    sys.exit(main())

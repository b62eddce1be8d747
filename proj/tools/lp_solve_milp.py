#!/usr/bin/env python3
"""Reference MILP solver command for exported .lp files.

Reads the LP subset written by `exfeat export-mip` (one row per line),
solves it with scipy's HiGHS backend and writes a solution listing
(`objective <value>` plus one `name value` line per variable) that
`exfeat check-solution` and the export crosscheck hook understand.

Usage: lp_solve_milp.py MODEL.lp SOLUTION.txt
"""

import sys

import numpy as np
from scipy.optimize import LinearConstraint, Bounds, milp


def tokenize_terms(text):
    """Yield (coefficient, variable) pairs from '3 x + y - 2 z'."""
    tokens = text.replace("+", " + ").replace("-", " - ").split()
    sign, coef = 1.0, None
    for token in tokens:
        if token == "+":
            sign, coef = 1.0, None
        elif token == "-":
            sign, coef = -1.0, None
        else:
            try:
                coef = float(token)
            except ValueError:
                yield (sign * (1.0 if coef is None else coef), token)
                sign, coef = 1.0, None


def parse_lp(path):
    objective = {}
    rows = []  # (terms, sense, rhs)
    bounds = {}
    binaries = set()
    section = None
    with open(path) as handle:
        for raw in handle:
            line = raw.split("\\", 1)[0].strip()
            if not line:
                continue
            lowered = line.lower()
            if lowered in ("minimize", "maximize", "subject to", "bounds", "binaries", "binary", "end"):
                section = lowered
                continue
            if section == "minimize":
                body = line.split(":", 1)[1] if ":" in line else line
                for coef, name in tokenize_terms(body):
                    objective[name] = objective.get(name, 0.0) + coef
            elif section == "subject to":
                body = line.split(":", 1)[1] if ":" in line else line
                for op in ("<=", ">=", "="):
                    if op in body:
                        lhs, rhs = body.split(op, 1)
                        terms = dict()
                        for coef, name in tokenize_terms(lhs):
                            terms[name] = terms.get(name, 0.0) + coef
                        rows.append((terms, op, float(rhs)))
                        break
            elif section == "bounds":
                if line.endswith(" free"):
                    bounds[line[:-5].strip()] = (-np.inf, np.inf)
                    continue
                parts = line.split("<=")
                if len(parts) == 3:
                    bounds[parts[1].strip()] = (float(parts[0]), float(parts[2]))
                elif len(parts) == 2:
                    bounds[parts[0].strip()] = (0.0, float(parts[1]))
                elif ">=" in line:
                    name, lo = line.split(">=")
                    bounds[name.strip()] = (float(lo), np.inf)
            elif section in ("binaries", "binary"):
                binaries.update(line.split())
    return objective, rows, bounds, binaries


def main():
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    model_path, solution_path = sys.argv[1], sys.argv[2]
    objective, rows, bounds, binaries = parse_lp(model_path)

    names = []
    seen = set()
    for source in ([objective] + [terms for terms, _, _ in rows]):
        for name in source:
            if name not in seen:
                seen.add(name)
                names.append(name)
    for name in list(bounds) + sorted(binaries):
        if name not in seen:
            seen.add(name)
            names.append(name)
    index = {name: i for i, name in enumerate(names)}
    n = len(names)

    c = np.zeros(n)
    for name, coef in objective.items():
        c[index[name]] = coef

    A = np.zeros((len(rows), n))
    lb = np.full(len(rows), -np.inf)
    ub = np.full(len(rows), np.inf)
    for r, (terms, op, rhs) in enumerate(rows):
        for name, coef in terms.items():
            A[r, index[name]] = coef
        if op == "<=":
            ub[r] = rhs
        elif op == ">=":
            lb[r] = rhs
        else:
            lb[r] = ub[r] = rhs

    var_lb = np.zeros(n)
    var_ub = np.full(n, np.inf)
    integrality = np.zeros(n)
    for name in binaries:
        i = index[name]
        var_ub[i] = 1.0
        integrality[i] = 1
    for name, (lo, hi) in bounds.items():
        i = index[name]
        var_lb[i], var_ub[i] = lo, hi

    result = milp(
        c,
        constraints=LinearConstraint(A, lb, ub) if len(rows) else (),
        integrality=integrality,
        bounds=Bounds(var_lb, var_ub),
    )
    if not result.success:
        sys.exit(f"solver failed: {result.message}")

    with open(solution_path, "w") as out:
        out.write(f"objective {float(result.fun)!r}\n")
        for name, value in zip(names, result.x):
            out.write(f"{name} {float(value)!r}\n")


if __name__ == "__main__":
    main()

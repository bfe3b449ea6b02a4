#!/usr/bin/env python3
"""Solve an LP-format MILP with HiGHS and write a solution listing.

Listing format, one entry per line:

    objective <value>
    status <optimal|gap-limit|time-limit|infeasible|error>
    gap <relative gap>
    time <solver seconds>
    <column name> <value>     (every column)

Uses highspy when installed, otherwise scipy.optimize.milp (also HiGHS) with
a reader for the LP subset written by srte. A start file (``name value``
lines) seeds highspy with a feasible solution; scipy has no warm start and
ignores it.
"""

import argparse
import math
import re
import sys
import time


def read_start(path):
    values = {}
    with open(path) as f:
        for line in f:
            parts = line.split()
            if len(parts) == 2:
                values[parts[0]] = float(parts[1])
    return values


def solve_highspy(model, gap, time_limit, threads, start):
    import highspy

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("mip_rel_gap", gap)
    h.setOptionValue("time_limit", time_limit)
    h.setOptionValue("threads", threads)
    if h.readModel(model) != highspy.HighsStatus.kOk:
        raise RuntimeError(f"HiGHS could not read {model}")
    if start:
        values = read_start(start)
        sol = highspy.HighsSolution()
        sol.col_value = [values.get(name, 0.0) for name in h.getLp().col_names_]
        sol.value_valid = True
        # a rejected start only loses the warm start
        h.setSolution(sol)
    h.run()
    ms = h.getModelStatus()
    info = h.getInfo()
    names = list(h.getLp().col_names_)
    values = list(h.getSolution().col_value)
    has_solution = info.primal_solution_status == 2 and len(values) == len(names)
    mip_gap = info.mip_gap if math.isfinite(info.mip_gap) else float("nan")
    if ms == highspy.HighsModelStatus.kOptimal:
        status = "optimal" if not (mip_gap > 1e-9) else "gap-limit"
    elif ms == highspy.HighsModelStatus.kTimeLimit:
        status = "time-limit"
    elif ms in (highspy.HighsModelStatus.kInfeasible,
                highspy.HighsModelStatus.kUnboundedOrInfeasible):
        status = "infeasible"
    else:
        status = "error"
    objective = info.objective_function_value if has_solution else float("nan")
    return status, objective, mip_gap, list(zip(names, values)) if has_solution else []


TERM = re.compile(r"([+-]?)\s*(\d*\.?\d*(?:[eE][+-]?\d+)?)\s*([A-Za-z_][\w.]*)")


def read_lp(path):
    """Minimal reader for the srte LP subset."""
    section = None
    rows, row = [], None
    binaries = []
    with open(path) as f:
        for raw in f:
            line = raw.split("\\", 1)[0].strip()
            if not line:
                continue
            key = line.lower()
            if key in ("minimize", "subject to", "bounds", "binary", "end"):
                section = key
                continue
            if section == "subject to":
                if ":" in line and re.match(r"^[\w.]+:", line):
                    name, line = line.split(":", 1)
                    row = {"name": name, "terms": [], "sense": None, "rhs": None}
                    rows.append(row)
                m = re.search(r"(<=|>=|=)\s*([-+]?[\d.eE+-]+)\s*$", line)
                body = line[: m.start()] if m else line
                for sign, coef, var in TERM.findall(body):
                    c = float(coef) if coef else 1.0
                    row["terms"].append((var, -c if sign == "-" else c))
                if m:
                    row["sense"], row["rhs"] = m.group(1), float(m.group(2))
            elif section == "binary":
                binaries.extend(line.split())
    return rows, binaries


def solve_scipy(model, gap, time_limit):
    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import coo_matrix

    rows, binaries = read_lp(model)
    names = ["theta"] + binaries
    index = {n: i for i, n in enumerate(names)}
    r, c, v, lo, hi = [], [], [], [], []
    for i, row in enumerate(rows):
        for var, coef in row["terms"]:
            r.append(i)
            c.append(index[var])
            v.append(coef)
        rhs = row["rhs"]
        lo.append(rhs if row["sense"] in ("=", ">=") else -np.inf)
        hi.append(rhs if row["sense"] in ("=", "<=") else np.inf)
    cost = np.zeros(len(names))
    cost[0] = 1.0
    integrality = np.ones(len(names))
    integrality[0] = 0
    constraints = []
    if rows:
        a = coo_matrix((v, (r, c)), shape=(len(rows), len(names)))
        constraints.append(LinearConstraint(a, lo, hi))
    bounds = Bounds(np.r_[0.0, np.zeros(len(binaries))], np.r_[np.inf, np.ones(len(binaries))])
    res = milp(cost, constraints=constraints, integrality=integrality, bounds=bounds,
               options={"mip_rel_gap": gap, "time_limit": time_limit})
    if res.status == 0:
        status = "optimal"
    elif res.status == 1:
        status = "time-limit"
    elif res.status == 2:
        status = "infeasible"
    else:
        status = "error"
    if res.x is None:
        return status, float("nan"), float("nan"), []
    mip_gap = getattr(res, "mip_gap", float("nan"))
    return status, float(res.fun), mip_gap, list(zip(names, res.x))


def main():
    p = argparse.ArgumentParser()
    p.add_argument("model")
    p.add_argument("solution")
    p.add_argument("--start", help="feasible start solution, name value per line")
    p.add_argument("--gap", type=float, default=1e-4)
    p.add_argument("--time-limit", type=float, default=3600.0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--backend", choices=["auto", "highspy", "scipy"], default="auto")
    args = p.parse_args()

    backend = args.backend
    if backend == "auto":
        try:
            import highspy  # noqa: F401
            backend = "highspy"
        except ImportError:
            backend = "scipy"

    start = time.perf_counter()
    if backend == "highspy":
        status, objective, gap, columns = solve_highspy(args.model, args.gap, args.time_limit, args.threads, args.start)
    else:
        status, objective, gap, columns = solve_scipy(args.model, args.gap, args.time_limit)
    elapsed = time.perf_counter() - start

    with open(args.solution, "w") as out:
        out.write(f"objective {objective!r}\n")
        out.write(f"status {status}\n")
        out.write(f"gap {gap!r}\n")
        out.write(f"time {elapsed!r}\n")
        for name, value in columns:
            out.write(f"{name} {value!r}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())

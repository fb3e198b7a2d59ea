#!/usr/bin/env python3
"""Writes the local benchmark suite (data/problems/*.json).

Eight problems with degrees from (2, 2) up to (13, 12). Curve 2 gets the
smallest control-point correction that makes it pass through chosen points
of curve 1, which plants transversal intersections at known parameters.
The last problem lifts curve 2 off curve 1 so nothing meets.

usage: make_suite.py [out_dir] [--seed N]
"""

import argparse
import json
import math
import pathlib

import numpy as np

# (name, m, n, planted intersections)
PROBLEMS = [
    ("p1_quadratics", 2, 2, 1),
    ("p2_cubics", 3, 3, 2),
    ("p3_degree7", 7, 7, 3),
    ("p4_degree8", 8, 8, 4),
    ("p5_degree9_single", 9, 9, 1),
    ("p6_degree9_five", 9, 9, 5),
    ("p7_degree9_six", 9, 9, 6),
    ("p8_disjoint", 13, 12, 0),
]


def bernstein_matrix(n, ts):
    return np.array([[math.comb(n, i) * (1 - t) ** (n - i) * t**i for i in range(n + 1)] for t in ts])


def evaluate(ctrl, t):
    return bernstein_matrix(len(ctrl) - 1, [t])[0] @ ctrl


def tangent(ctrl, t):
    n = len(ctrl) - 1
    return n * (bernstein_matrix(n - 1, [t])[0] @ np.diff(ctrl, axis=0))


def wiggly_curve(rng, degree):
    """Control points marching along x with bounded wiggle in y and z."""
    x = np.linspace(-1.0, 1.0, degree + 1)
    y = rng.uniform(-0.8, 0.8, degree + 1)
    z = rng.uniform(-0.2, 0.2, degree + 1)
    return np.stack([x, y, z], axis=1)


def spread(rng, k, margin=0.08, gap=0.1):
    """k sorted parameters in [margin, 1 - margin], pairwise at least gap apart."""
    while True:
        ts = np.sort(rng.uniform(margin, 1 - margin, k))
        if k < 2 or np.min(np.diff(ts)) >= gap:
            return ts


def crossing_curve(rng, c1, n, k):
    """Degree-n curve through c1(u_j) at v_j for k planted pairs (u_j, v_j).

    Starts from a wiggly curve running across c1 and adds the smallest
    control-point correction that makes it pass through the planted points.
    """
    for _ in range(10000):
        us = spread(rng, k)
        vs = rng.permutation(spread(rng, k))
        base = wiggly_curve(rng, n)[:, [1, 0, 2]]
        B = bernstein_matrix(n, vs)
        targets = np.array([evaluate(c1, u) for u in us])
        ctrl = base + B.T @ np.linalg.solve(B @ B.T, targets - B @ base)
        if np.max(np.abs(ctrl)) > 3.0:
            continue
        ok = True
        for u, v in zip(us, vs):
            t1, t2 = tangent(c1, u), tangent(ctrl, v)
            if np.linalg.norm(np.cross(t1, t2)) < 0.3 * np.linalg.norm(t1) * np.linalg.norm(t2):
                ok = False
        if ok:
            return ctrl, list(zip(us.tolist(), vs.tolist()))
    raise RuntimeError("could not build a transversal curve")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out_dir", nargs="?", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "problems"))
    ap.add_argument("--seed", type=int, default=2011)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, m, n, k in PROBLEMS:
        c1 = wiggly_curve(rng, m)
        if k > 0:
            c2, planted = crossing_curve(rng, c1, n, k)
        else:
            c2 = wiggly_curve(rng, n)[:, [1, 0, 2]]
            c2[:, 2] += 1.0  # clear of curve 1 in z
            planted = []
        doc = {
            "name": name,
            "curve1": {"degree": m, "control_points": [[float(x) for x in p] for p in c1]},
            "curve2": {"degree": n, "control_points": [[float(x) for x in p] for p in c2]},
        }
        text = json.dumps(doc, indent=2)
        (out / f"{name}.json").write_text(text + "\n")
        print(name, m, n, " ".join(f"({u:.6f},{v:.6f})" for u, v in planted))


if __name__ == "__main__":
    main()

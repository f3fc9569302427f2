#!/usr/bin/env python3
"""Generate data/synthetic20.csv and its reference Pareto sets.

Twenty 2-D designs drawn uniformly from the square [0, 4]^2, coordinates
rounded to three decimals. Like a real design-space scatter, the cloud
has a large Pareto set under narrow cones that thins out as the cone
widens. Draws start at
BASE_SEED and the first draw meeting two rules is kept:

  * every non-Pareto gap is at least MIN_GAP under every reference cone,
    so gaps never straddle the epsilon values used by the desk battery;
  * the hardness of the instance does not grow with the cone angle. The
    hardness of a cone is its smallest positive gap, taken over the
    Delta* of non-Pareto designs and over M(i, j) for Pareto i and any
    other j. A wider cone should then make identification easier.

Pareto sets and gaps here use polar angles only (no projections):
delta is in the cone C_theta iff its angle lies in
[pi/4 - theta/2, pi/4 + theta/2]. A 2-D cone has two edge rays, and
C cap (delta + C) = p + C where p keeps the positive parts of delta in
edge-ray coordinates.

Usage: python3 tools/make_fixture.py [--out-dir data]
"""

import argparse
import json
import math
import random

BASE_SEED = 20240601
K = 20
SIDE = 4.0
MAX_DRAWS = 1_000_000
MIN_GAP = 0.3
CONES = {"theta:pi/4": math.pi / 4, "theta:pi/2": math.pi / 2, "theta:3pi/4": 3 * math.pi / 4}
TOL = 1e-9


def in_cone(dx, dy, theta):
    if math.hypot(dx, dy) <= TOL:
        return False
    lo = math.pi / 4 - theta / 2
    hi = math.pi / 4 + theta / 2
    a = math.atan2(dy, dx)
    # bring the angle into [lo, lo + 2 pi)
    while a < lo - 1e-12:
        a += 2 * math.pi
    return a <= hi + 1e-12


def pareto(points, theta):
    out = []
    for i, (xi, yi) in enumerate(points):
        if not any(j != i and in_cone(xj - xi, yj - yi, theta) for j, (xj, yj) in enumerate(points)):
            out.append(i)
    return out


def gap_m(dx, dy, theta):
    """min_n (w_n . delta)^+ / alpha_n with edge normals of C_theta."""
    lo = math.pi / 4 - theta / 2
    hi = math.pi / 4 + theta / 2
    normals = [(math.cos(lo + math.pi / 2), math.sin(lo + math.pi / 2)),
               (math.cos(hi - math.pi / 2), math.sin(hi - math.pi / 2))]
    alpha = math.sin(theta) if theta <= math.pi / 2 else 1.0
    return min(max(0.0, wx * dx + wy * dy) / alpha for wx, wy in normals)


def delta_star(points, theta, front):
    gaps = []
    for i, (xi, yi) in enumerate(points):
        if i in front:
            continue
        gaps.append(max(gap_m(points[j][0] - xi, points[j][1] - yi, theta) for j in front))
    return gaps


def edges(theta):
    lo = math.pi / 4 - theta / 2
    hi = math.pi / 4 + theta / 2
    return (math.cos(lo), math.sin(lo)), (math.cos(hi), math.sin(hi))


def distance_to_cone(x, y, theta):
    r = math.hypot(x, y)
    if r <= TOL or in_cone(x, y, theta):
        return 0.0
    a = math.atan2(y, x)
    # angular distance to the nearer edge ray
    off = min(abs(math.remainder(a - e, 2 * math.pi))
              for e in (math.pi / 4 - theta / 2, math.pi / 4 + theta / 2))
    return r if off >= math.pi / 2 else r * math.sin(off)


def gap_M(dx, dy, theta):
    """Distance from delta to C cap (delta + C)."""
    (ux, uy), (vx, vy) = edges(theta)
    det = ux * vy - uy * vx
    a = (dx * vy - dy * vx) / det
    b = (ux * dy - uy * dx) / det
    px = max(a, 0.0) * ux + max(b, 0.0) * vx
    py = max(a, 0.0) * uy + max(b, 0.0) * vy
    return distance_to_cone(dx - px, dy - py, theta)


def hardness(points, theta, front, gaps):
    positive = [g for g in gaps if g > TOL]
    for i in front:
        for j, (xj, yj) in enumerate(points):
            if j != i:
                m = gap_M(xj - points[i][0], yj - points[i][1], theta)
                if m > TOL:
                    positive.append(m)
    return min(positive, default=math.inf)


def draw(rng):
    return [(round(rng.uniform(0, SIDE), 3), round(rng.uniform(0, SIDE), 3)) for _ in range(K)]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="data")
    args = parser.parse_args()

    for seed in range(BASE_SEED, BASE_SEED + MAX_DRAWS):
        points = draw(random.Random(seed))
        fronts = {name: pareto(points, theta) for name, theta in CONES.items()}
        gaps = {name: delta_star(points, CONES[name], fronts[name]) for name in CONES}
        hard = [hardness(points, CONES[name], fronts[name], gaps[name]) for name in CONES]
        if (all(min(g, default=math.inf) >= MIN_GAP for g in gaps.values())
                and all(a <= b for a, b in zip(hard, hard[1:]))):
            break
    else:
        raise SystemExit(f"no acceptable draw in {MAX_DRAWS} seeds")

    with open(f"{args.out_dir}/synthetic20.csv", "w", newline="\n") as f:
        f.write("design,f1,f2\n")
        for i, (x, y) in enumerate(points):
            f.write(f"d{i:02d},{x:.3f},{y:.3f}\n")
    reference = {
        "seed": seed,
        "pareto": fronts,
        "delta_star_min": {k: round(min(v), 6) for k, v in gaps.items()},
        "delta_star_max": {k: round(max(v), 6) for k, v in gaps.items()},
        "hardness": {k: round(h, 6) for k, h in zip(CONES, hard)},
    }
    with open(f"{args.out_dir}/synthetic20_pareto.json", "w", newline="\n") as f:
        json.dump(reference, f, indent=2)
        f.write("\n")
    print(f"seed {seed}, hardness {[round(h, 4) for h in hard]}")
    for name in CONES:
        print(f"{name}: |P*| = {len(fronts[name])}, P* = {fronts[name]}")


if __name__ == "__main__":
    main()

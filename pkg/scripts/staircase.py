"""Devil's staircase of the sine circle map and its plateau census."""

import argparse
from collections import Counter

import numpy as np

from harmonia.circlemap import devils_staircase, plateaus, staircase_grid


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=float, default=1.0)
    ap.add_argument("--n", type=int, default=2001, help="grid points on [0, 1]")
    ap.add_argument("--workers", type=int, default=1)
    a = ap.parse_args()
    grid = np.linspace(0, 1, a.n)
    rho = staircase_grid(a.k, grid)
    print(f"min diff of rho: {np.diff(rho).min():.3e}")
    pts = devils_staircase(a.k, grid, workers=a.workers)
    pls = plateaus(pts)
    locked = sum(pl.cells for pl in pls)
    print(f"K={a.k}: {locked}/{a.n} grid points locked, {len(pls)} plateaus")
    by_q = Counter(pl.ratio.denominator for pl in pls)
    for q in sorted(by_q):
        print(f"  q={q:3d}: {by_q[q]} plateaus")
    widest = sorted(pls, key=lambda pl: -pl.cells)[:10]
    for pl in widest:
        print(f"  {pl.ratio}: [{pl.omega_lo:.4f}, {pl.omega_hi:.4f}] {pl.cells} cells")


if __name__ == "__main__":
    main()

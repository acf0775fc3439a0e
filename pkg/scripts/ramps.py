"""Devil's ramps: resonance labels over (f2/f1, omega), summarised per triple."""

import argparse
import time
from collections import Counter

from harmonia.threefreq import ramps_grid


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=200, help="cells per axis")
    ap.add_argument("--k", type=float, default=0.4)
    ap.add_argument("--eps", type=float, default=0.4)
    ap.add_argument("--n-iter", type=int, default=10_000)
    a = ap.parse_args()
    t0 = time.perf_counter()
    cells = ramps_grid((0.0, 1.0), (0.0, 1.0), a.k, a.eps, a.n, a.n, n_iter=a.n_iter)
    print(f"{len(cells)} cells in {time.perf_counter() - t0:.1f} s")
    counts = Counter(c.label for c in cells)
    for label, n in counts.most_common(15):
        print(f"  {label:>12}: {n}")


if __name__ == "__main__":
    main()

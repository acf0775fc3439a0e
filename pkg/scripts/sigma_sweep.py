"""Equal-temperament error sweep: print sigma(N) and mark local minima."""

import argparse

from harmonia.scales import CONSONANT, JUST_INTERVALS
from harmonia.temperament import sigma_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--min", type=int, default=5)
    ap.add_argument("--max", type=int, default=60)
    ap.add_argument("--all-intervals", action="store_true")
    a = ap.parse_args()
    sweep = sigma_sweep(a.min, a.max, JUST_INTERVALS if a.all_intervals else CONSONANT)
    for r in sweep.reports:
        print(f"{r.n:4d} {r.sigma:14.4f} {'<- min' if sweep.is_min(r.n) else ''}")
    print("minima:", *sweep.minima)


if __name__ == "__main__":
    main()

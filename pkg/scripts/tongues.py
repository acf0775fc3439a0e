"""Arnol'd tongue widths: mediant ordering and total locked measure."""

import argparse
import time
from fractions import Fraction as F

from harmonia.circlemap import locked_measure, mediant_width_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=float, default=0.8)
    ap.add_argument("--measure-k", type=float, nargs="*", default=[0.5, 0.8, 1.0])
    ap.add_argument("--q-max", type=int, default=30)
    a = ap.parse_args()

    for pa, pb in [(F(0), F(1, 2)), (F(1, 2), F(1)), (F(1, 3), F(1, 2))]:
        c = mediant_width_check(pa, pb, a.k)
        rank = sorted(c.widths.items(), key=lambda kv: -kv[1])[:3]
        desc = ", ".join(f"{r}:{w:.6f}" for r, w in rank)
        print(f"({pa}, {pb}) mediant {c.mediant} widest={c.holds}  top: {desc}")

    for k in a.measure_k:
        t0 = time.perf_counter()
        total, regions = locked_measure(k, q_max=a.q_max)
        print(f"K={k}: tongues with q<={a.q_max} cover {total:.6f} ({len(regions)} tongues, {time.perf_counter() - t0:.1f} s)")


if __name__ == "__main__":
    main()

"""Residue pitch-shift lines for several harmonic indices."""

import argparse
from fractions import Fraction as F

from harmonia.threefreq import PitchStimulus, pitch_shift_line, predicted_pitch


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--f0", type=float, default=100.0)
    ap.add_argument("--k", type=int, nargs="+", default=[6, 7, 8])
    a = ap.parse_args()
    for k in a.k:
        line = pitch_shift_line(k, a.f0)
        lo, hi = F(1, k + 1), F(1, k)
        print(f"k={k}: slope {line.slope} ({float(line.slope):.5f}) in ({lo}, {hi}), resonance {line.resonance}")
        for dw in (-60, -30, 0, 30, 60):
            pred = predicted_pitch(PitchStimulus(k, a.f0, dw))
            print(f"    dw={dw:+4d} Hz  center={pred.center:7.1f}  P={pred.pitch:7.3f}")


if __name__ == "__main__":
    main()

"""Measure bump amplitude against height mismatch on a two-node gap.

Synthesis closes a pure height mismatch c between (0,0,0,0) and (1,0,0,c)
with an oscillating pair of bumps whose amplitude must scale like sqrt(c):
the enclosed signed area is quadratic in the amplitude.  The script sweeps
c over several decades and prints amplitude, amplitude/sqrt(c), and the
audited horizontality defect; the middle column should be flat.
"""

import argparse
import math
import sys

from heiswhit import SampledCurve, synthesize


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--mismatches", type=float, nargs="+",
        default=[1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6],
    )
    parser.add_argument("--m", type=int, default=1)
    args = parser.parse_args(argv)

    print(f"{'mismatch':>12} {'amplitude':>14} {'amp/sqrt':>12} {'defect':>10}")
    for c in args.mismatches:
        rows = [(0.0, 0.0, 0.0, 0.0), (1.0, 0.0, 0.0, c)]
        curve = synthesize(SampledCurve.from_rows(rows), args.m, force=True)
        amp = curve.bump_amplitudes[0]
        print(
            f"{c:>12.3g} {amp:>14.8g} {amp / math.sqrt(abs(c)):>12.6g} "
            f"{curve.defect:>10.2e}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())

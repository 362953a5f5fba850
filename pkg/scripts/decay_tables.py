"""Print checker decay tables for the canonical fixtures.

For each grid size the script runs check_c1 and check_cm on a sampled
circle (cos t, sin t, -2t), a vertical drift (t, 0, t), and a random
horizontal polynomial, then prints every profile as delta/value rows with
the fitted log-log slope and the per-profile verdict.  Consistent fixtures
should show decaying columns; the drift's z-profile should grow like
1/delta.
"""

import argparse
import math
import sys

import numpy as np

from heiswhit import SampledCurve, check_c1, check_cm


def circle(n):
    ts = [i / (n - 1) for i in range(n)]
    return SampledCurve.from_rows(
        [(t, math.cos(t), math.sin(t), -2.0 * t) for t in ts]
    )


def drift(n):
    ts = [i / (n - 1) for i in range(n)]
    return SampledCurve.from_rows([(t, t, 0.0, t) for t in ts])


def horizontal_poly(n, m, seed):
    rng = np.random.default_rng(seed)
    alpha, beta = rng.uniform(-2.0, 2.0, size=2)
    f = rng.uniform(-2.0, 2.0, size=m + 1)

    def fv(t):
        return sum(c * t**k for k, c in enumerate(f))

    ts = [i / (n - 1) for i in range(n)]
    rows = [
        (t, fv(t), alpha * fv(t) + beta, 2.0 * beta * fv(t)) for t in ts
    ]
    return SampledCurve.from_rows(rows)


def show(verdict, label):
    print(f"\n{label}: {verdict.status}")
    for name, prof in sorted(verdict.profiles.items()):
        slope = verdict.slopes[name]
        status = verdict.statuses[name]
        print(f"  {name}  slope={slope:+.3f}  [{status}]")
        for delta, value in prof.points:
            print(f"    delta={delta:<12.6g} value={value:.6g}")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[16, 32, 64])
    parser.add_argument("--m", type=int, default=1)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args(argv)

    for n in args.sizes:
        print(f"=== {n} nodes ===")
        show(check_c1(circle(n)), "circle / check_c1")
        show(check_c1(drift(n)), "drift / check_c1")
        show(check_cm(circle(n), args.m), f"circle / check_cm m={args.m}")
        show(check_cm(drift(n), args.m), f"drift / check_cm m={args.m}")
        show(
            check_cm(horizontal_poly(n, args.m, args.seed), args.m),
            f"horizontal poly / check_cm m={args.m}",
        )
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Scale profiles and the slope-based verdict policy.

A profile records, for a geometric grid of scales delta, the largest value
of some quantity measured over configurations whose diameter falls in the
band (delta/ratio_next, delta].  Banding (rather than a cumulative sup over
all diameters below delta) keeps growth visible: a quantity behaving like
1/diam shows up as a profile with log-log slope -1 instead of saturating at
the smallest configuration available.
"""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Profile:
    """Scale profile: (delta, value) points with delta strictly decreasing."""

    points: tuple
    name: str = ""

    def __post_init__(self):
        deltas = [d for d, _ in self.points]
        if any(b >= a for a, b in zip(deltas, deltas[1:])):
            raise ValueError("profile deltas must be strictly decreasing")
        if any(v < 0 for _, v in self.points):
            raise ValueError("profile values must be nonnegative")

    def __len__(self):
        return len(self.points)

    @property
    def top(self):
        """Value at the largest scale."""
        return self.points[0][1] if self.points else 0.0

    @property
    def terminal(self):
        """Value at the smallest scale."""
        return self.points[-1][1] if self.points else 0.0

    def slope(self, decades=3.0):
        """Least-squares log-log slope over the smallest `decades` of delta.

        Positive slope means decay toward small scales.  Values are floored
        slightly above zero so an identically tiny profile fits flat.
        """
        return fit_loglog_slope(self.points, decades)


def delta_grid(diam, min_gap, ratio=0.5):
    """Geometric scale grid from diam down to min_gap with the given ratio."""
    if not (0.0 < ratio < 1.0):
        raise ValueError("ratio must lie in (0, 1)")
    if diam <= 0 or min_gap <= 0:
        raise ValueError("diam and min_gap must be positive")
    out = []
    d = diam
    while d >= min_gap * (1.0 - 1e-12):
        out.append(d)
        d *= ratio
    return out or [diam]


def banded_sup(items, deltas, name=""):
    """Profile of per-band maxima.

    items: iterable of (diam, value).  Band i collects diameters in
    (deltas[i+1], deltas[i]]; the last band keeps everything at or below the
    smallest delta.  Empty bands are dropped.
    """
    deltas = sorted(set(deltas), reverse=True)
    sups = [None] * len(deltas)
    n = len(deltas)
    for d, v in items:
        idx = None
        for i in range(n):
            if d <= deltas[i] and (i == n - 1 or d > deltas[i + 1]):
                idx = i
                break
        if idx is None:
            # diameter above the top scale: fold into the top band
            if d > deltas[0]:
                idx = 0
            else:
                continue
        if sups[idx] is None or v > sups[idx]:
            sups[idx] = v
    points = [(deltas[i], sups[i]) for i in range(n) if sups[i] is not None]
    return Profile(tuple(points), name=name)


def fit_loglog_slope(points, decades=3.0):
    """Slope of log(value) against log(delta) over the smallest decades.

    Returns 0.0 when fewer than two usable points remain.
    """
    if len(points) < 2:
        return 0.0
    dmin = min(d for d, _ in points)
    dmax_fit = dmin * 10.0 ** decades
    sel = [(d, v) for d, v in points if d <= dmax_fit * (1.0 + 1e-12)]
    if len(sel) < 2:
        sel = sorted(points)[ : 2]
    vmax = max(v for _, v in sel)
    floor = max(vmax, 1e-300) * 1e-16
    xs = [math.log(d) for d, _ in sel]
    ys = [math.log(max(v, floor)) for _, v in sel]
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx == 0.0:
        return 0.0
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / sxx


CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ThresholdPolicy:
    """Maps a profile to consistent / inconsistent / inconclusive.

    A profile is consistent when it has already collapsed (terminal below
    zero_tol relative to its own scale) or decays with a healthy slope down
    to a terminal value small relative to scale.  It is inconsistent when it
    is flat or growing while the terminal value stays large.  Everything in
    between is inconclusive.  The numbers are policy, chosen so the stock
    fixtures separate cleanly at 32 nodes and beyond; tighten rel_tol for
    stricter runs.
    """

    slope_consistent: float = 0.25
    slope_flat: float = 0.05
    rel_tol: float = 0.25
    zero_tol: float = 1e-9
    deadband: float = 10.0
    decades: float = 3.0

    def classify(self, profile, scale=None):
        """Return (status, slope) for one profile."""
        if len(profile) == 0:
            return INCONCLUSIVE, 0.0
        if scale is None:
            scale = max(1.0, profile.top)
        slope = profile.slope(self.decades)
        term = profile.terminal
        if term <= self.zero_tol * scale:
            return CONSISTENT, slope
        if slope >= self.slope_consistent and term <= self.rel_tol * scale:
            return CONSISTENT, slope
        if slope <= self.slope_flat and term >= self.deadband * self.rel_tol * scale:
            return INCONSISTENT, slope
        return INCONCLUSIVE, slope


def combine_statuses(statuses):
    """Worst-wins combination of per-profile statuses."""
    if any(s == INCONSISTENT for s in statuses):
        return INCONSISTENT
    if any(s == INCONCLUSIVE for s in statuses):
        return INCONCLUSIVE
    return CONSISTENT if statuses else INCONCLUSIVE

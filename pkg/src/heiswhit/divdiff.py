"""Divided differences, Newton interpolation, and decay profiling.

The m-th divided difference of samples plays the role of an m-th derivative
probe: for a function with continuous m-th derivative, differences of
nearby m-th divided differences shrink with the spread of the nodes, and
the profiles here measure exactly that shrinkage.
"""

import itertools
import math
from dataclasses import dataclass

from .errors import (
    DuplicateNodeError,
    NonFiniteError,
    QuadratureBudgetError,
    TooFewNodesError,
)
from .heis import HPoint, group_mul
from .poly import Poly
from .profiles import Profile, banded_sup, delta_grid

DecayProfile = Profile


@dataclass(frozen=True)
class SampledCurve:
    """Curve samples: strictly increasing nodes with one HPoint per node."""

    nodes: tuple
    points: tuple

    def __post_init__(self):
        if len(self.nodes) < 2:
            raise TooFewNodesError("a sampled curve needs at least two nodes")
        if len(self.nodes) != len(self.points):
            raise TooFewNodesError("one point per node required")
        vals = [v for p in self.points for v in p] + list(self.nodes)
        if any(not math.isfinite(v) for v in vals):
            raise NonFiniteError("samples must be finite")
        for a, b in zip(self.nodes, self.nodes[1:]):
            if a == b:
                raise DuplicateNodeError(f"node {a} repeats")
            if b < a:
                raise ValueError("nodes must be strictly increasing")

    @classmethod
    def from_rows(cls, rows):
        """Build from (t, x, y, z) rows, sorting by t."""
        rows = sorted(rows, key=lambda r: r[0])
        return cls(
            tuple(float(r[0]) for r in rows),
            tuple(HPoint(float(r[1]), float(r[2]), float(r[3])) for r in rows),
        )

    @classmethod
    def from_function(cls, fn, nodes):
        """Sample fn(t) -> (x, y, z) on the given nodes."""
        nodes = sorted(float(t) for t in nodes)
        return cls(tuple(nodes), tuple(HPoint(*fn(t)) for t in nodes))

    @property
    def fs(self):
        return tuple(p.x for p in self.points)

    @property
    def gs(self):
        return tuple(p.y for p in self.points)

    @property
    def hs(self):
        return tuple(p.z for p in self.points)

    @property
    def diam(self):
        return self.nodes[-1] - self.nodes[0]

    @property
    def min_gap(self):
        return min(b - a for a, b in zip(self.nodes, self.nodes[1:]))

    def translated(self, p):
        """Left translate p * curve, sample by sample."""
        return SampledCurve(
            self.nodes, tuple(group_mul(p, q) for q in self.points)
        )

    def subset(self, indices):
        indices = sorted(indices)
        return SampledCurve(
            tuple(self.nodes[i] for i in indices),
            tuple(self.points[i] for i in indices),
        )


def _sorted_pairs(values, nodes):
    if len(values) != len(nodes):
        raise TooFewNodesError("values and nodes must have equal length")
    pairs = sorted(zip(nodes, values))
    for (a, _), (b, _) in zip(pairs, pairs[1:]):
        if a == b:
            raise DuplicateNodeError(f"node {a} repeats")
    return pairs


def dd_coefficients(values, nodes):
    """Newton coefficients [f[x0], f[x0,x1], .., f[x0..xk]], nodes sorted.

    Nodes are sorted ascending before tabulating so the recursion always
    combines left to right; divided differences are symmetric, so this only
    pins the floating-point evaluation order.
    """
    pairs = _sorted_pairs(values, nodes)
    xs = [p[0] for p in pairs]
    col = [p[1] for p in pairs]
    coeffs = [col[0]]
    for j in range(1, len(xs)):
        col = [
            (col[i + 1] - col[i]) / (xs[i + j] - xs[i])
            for i in range(len(col) - 1)
        ]
        coeffs.append(col[0])
    return coeffs, xs


def divided_difference(values, nodes):
    """Top divided difference f[x0, .., xk] of the samples."""
    coeffs, _ = dd_coefficients(values, nodes)
    return coeffs[-1]


def newton_interp(nodes, values):
    """Interpolating polynomial through (nodes, values) in monomial form."""
    coeffs, xs = dd_coefficients(values, nodes)
    p = Poly([coeffs[-1]])
    for j in range(len(coeffs) - 2, -1, -1):
        p = p * Poly([-xs[j], 1.0]) + Poly([coeffs[j]])
    return p


def _adaptive_simpson(f, a, b, tol, budget, depth=40):
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    budget[0] -= 3
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _asimp(f, a, b, fa, fm, fb, whole, tol, budget, depth)


def _asimp(f, a, b, fa, fm, fb, whole, tol, budget, depth):
    mid = 0.5 * (a + b)
    lm, rm = 0.5 * (a + mid), 0.5 * (mid + b)
    flm, frm = f(lm), f(rm)
    budget[0] -= 2
    if budget[0] < 0:
        raise QuadratureBudgetError("quadrature evaluation budget exhausted")
    left = (mid - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - mid) / 6.0 * (fm + 4.0 * frm + fb)
    err = left + right - whole
    if abs(err) <= 15.0 * tol or depth <= 0:
        if depth <= 0 and abs(err) > 15.0 * tol:
            raise QuadratureBudgetError("quadrature depth exhausted")
        return left + right + err / 15.0
    return _asimp(f, a, mid, fa, flm, fm, left, 0.5 * tol, budget, depth - 1) + _asimp(
        f, mid, b, fm, frm, fb, right, 0.5 * tol, budget, depth - 1
    )


def hermite_genocchi(fm, nodes, tol=1e-9, budget=2_000_000):
    """Divided difference via the simplex-integral representation.

    fm is the m-th derivative of the underlying function, m = len(nodes)-1:

        f[x_0..x_m] = int over {1 >= t_1 >= .. >= t_m >= 0} of
                      fm(x_0 + t_1 (x_1 - x_0) + .. + t_m (x_m - x_{m-1})).

    Evaluated by nested adaptive Simpson quadrature, which makes it a route
    to the divided difference that is independent of the recursion; repeated
    nodes are allowed (the confluent case f^(m)(a)/m! falls out).
    """
    pts = [float(t) for t in nodes]
    m = len(pts) - 1
    if m == 0:
        return float(fm(pts[0]))
    diffs = [pts[i + 1] - pts[i] for i in range(m)]
    counter = [budget]
    level_tol = tol / (2.0 ** m)

    def level(j, base, upper):
        if j == m:
            integrand = lambda t: fm(base + t * diffs[j - 1])
        else:
            integrand = lambda t: level(j + 1, base + t * diffs[j - 1], t)
        if upper == 0.0:
            return 0.0
        return _adaptive_simpson(integrand, 0.0, upper, level_tol, counter)

    return level(1, pts[0], 1.0)


def dd_windows(n, m, window, full_enum=False):
    """Deduplicated (m+1)-subsets of node indices drawn from sliding windows.

    Returns (subsets, window_span) where subsets is a sorted list of index
    tuples.  With full_enum (or window >= n) every subset is enumerated.
    """
    width = n if full_enum or window is None or window >= n else window
    seen = set()
    for start in range(0, max(1, n - width + 1)):
        idx = range(start, min(start + width, n))
        for sub in itertools.combinations(idx, m + 1):
            seen.add(sub)
    return sorted(seen), width


def dd_profile(samples, m, window=None, deltas=None, ratio=0.5, full_enum=False):
    """Decay profiles of m-th divided-difference differences, per component.

    For each pair of (m+1)-subsets X, Y living in a common window of
    consecutive nodes, the item |gamma[X] - gamma[Y]| is recorded at scale
    diam(X u Y); the profile is the banded sup over the geometric scale
    grid.  window defaults to 2m+4 consecutive nodes.
    """
    n = len(samples.nodes)
    if n < m + 2:
        raise TooFewNodesError(f"need at least {m + 2} nodes for order {m}")
    if window is None:
        window = 2 * m + 4
    if deltas is None:
        deltas = delta_grid(samples.diam, samples.min_gap, ratio)
    nodes = samples.nodes
    comps = {"f": samples.fs, "g": samples.gs, "h": samples.hs}

    dd_of = {}
    subsets, width = dd_windows(n, m, window, full_enum)
    for sub in subsets:
        sub_nodes = [nodes[i] for i in sub]
        dd_of[sub] = {
            name: divided_difference([vals[i] for i in sub], sub_nodes)
            for name, vals in comps.items()
        }

    items = {name: [] for name in comps}
    seen_pairs = set()
    for start in range(0, max(1, n - width + 1)):
        lo, hi = start, min(start + width, n)
        local = [s for s in subsets if s[0] >= lo and s[-1] < hi]
        for s1, s2 in itertools.combinations(local, 2):
            key = (s1, s2)
            if key in seen_pairs:
                continue
            seen_pairs.add(key)
            d = nodes[max(s1[-1], s2[-1])] - nodes[min(s1[0], s2[0])]
            for name in comps:
                items[name].append((d, abs(dd_of[s1][name] - dd_of[s2][name])))

    return {
        name: banded_sup(items[name], deltas, name=f"dd_{name}")
        for name in comps
    }

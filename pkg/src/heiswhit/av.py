"""Area and velocity functionals for horizontality-compatibility checks.

For a curve (f, g, h) with degree-m Taylor polynomials T_f, T_g at a, the
pair

    A = h(b) - h(a) - 2 int_a^b (T_f' T_g - T_g' T_f)
          + 2 f(a) (g(b) - T_g(b)) - 2 g(a) (f(b) - T_f(b))
    V = (b-a)^{2m} + (b-a)^m int_a^b (|T_f'| + |T_g'|)

measures the signed area a horizontal lift would have to close against the
volume available for closing it; |A/V| -> 0 as b - a -> 0 is the
compatibility condition.  The discrete variant replaces Taylor polynomials
by interpolants through an (m+1)-node subset.
"""

import itertools
from dataclasses import dataclass

from .errors import BadSubsetError, OrderViolationError, TooFewNodesError
from .divdiff import dd_windows, newton_interp
from .poly import (
    Interval,
    abs_integral_between,
    compose_affine,
    jet_poly,
    real_roots,
    signed_integral,
)
from .profiles import Profile, banded_sup, delta_grid

RatioProfile = Profile


@dataclass(frozen=True)
class AVPair:
    """Area / velocity values for one endpoint pair."""

    area: float
    velocity: float

    def __post_init__(self):
        if not (self.velocity > 0.0):
            raise ValueError("velocity must be positive")

    @property
    def ratio(self):
        return self.area / self.velocity


def _taylor_pair(jets, ia, m):
    if jets.order < m:
        raise OrderViolationError(
            f"jets carry order {jets.order}, need at least {m}"
        )
    tf = jet_poly(jets.fjets[ia][: m + 1])
    tg = jet_poly(jets.gjets[ia][: m + 1])
    return tf, tg


def area_discrepancy(jets, a, b, m):
    """The signed-area functional A for any pair of distinct nodes.

    Works in the local variable u = t - a, so the formula is usable in
    either orientation; the orientation-checked av_pair builds on it.
    """
    ia, ib = jets.index(a), jets.index(b)
    if ia == ib:
        raise OrderViolationError("need two distinct nodes")
    tf, tg = _taylor_pair(jets, ia, m)
    u = b - a
    bracket = tf.derivative() * tg - tg.derivative() * tf
    fa, ga = jets.fjets[ia][0], jets.gjets[ia][0]
    fb, gb = jets.fjets[ib][0], jets.gjets[ib][0]
    ha, hb = jets.hjets[ia][0], jets.hjets[ib][0]
    return (
        hb
        - ha
        - 2.0 * signed_integral(bracket, 0.0, u)
        + 2.0 * fa * (gb - tg(u))
        - 2.0 * ga * (fb - tf(u))
    )


def av_pair(jets, a, b, m, tol=1e-12):
    """AVPair for nodes a < b using the jets stored at a."""
    if not (a < b):
        raise OrderViolationError(f"need a < b, got a={a}, b={b}")
    ia = jets.index(a)
    jets.index(b)
    tf, tg = _taylor_pair(jets, ia, m)
    u = b - a
    dtf, dtg = tf.derivative(), tg.derivative()
    iv = Interval(0.0, u)
    speed = _abs_int(dtf, iv, tol) + _abs_int(dtg, iv, tol)
    velocity = u ** (2 * m) + u ** m * speed
    return AVPair(area_discrepancy(jets, a, b, m), velocity)


def _abs_int(p, iv, tol):
    if p.is_zero:
        return 0.0
    roots = real_roots(p, iv, tol)
    return abs_integral_between(p, roots, iv.lo, iv.hi)


def discrete_av_pair(samples, subset, a, b, m, tol=1e-12):
    """AVPair built from interpolants through an (m+1)-node subset.

    subset is a collection of node values containing a and b with a < b;
    the area uses the interpolants of f and g through the subset, and the
    velocity uses diam(subset) in place of b - a.
    """
    x = sorted(set(float(t) for t in subset))
    if len(x) != m + 1 or len(x) != len(tuple(subset)):
        raise BadSubsetError(f"subset must hold {m + 1} distinct nodes")
    node_set = set(samples.nodes)
    if any(t not in node_set for t in x):
        raise BadSubsetError("subset must consist of sample nodes")
    if a not in x or b not in x:
        raise BadSubsetError("endpoints must belong to the subset")
    if not (a < b):
        raise OrderViolationError(f"need a < b, got a={a}, b={b}")

    idx = {t: samples.nodes.index(t) for t in x}
    pf = newton_interp(x, [samples.fs[idx[t]] for t in x])
    pg = newton_interp(x, [samples.gs[idx[t]] for t in x])
    ha = samples.hs[idx[a]]
    hb = samples.hs[idx[b]]
    return _discrete_av(pf, pg, ha, hb, a, b, x[-1] - x[0], m, tol)


def _discrete_av(pf, pg, ha, hb, a, b, diam, m, tol):
    dpf, dpg = pf.derivative(), pg.derivative()
    bracket = dpf * pg - dpg * pf
    area = hb - ha - 2.0 * signed_integral(bracket, a, b)
    iv = Interval(a, b)
    speed = _abs_int(dpf, iv, tol) + _abs_int(dpg, iv, tol)
    velocity = diam ** (2 * m) + diam ** m * speed
    return AVPair(area, velocity)


def av_profile(jets, m, deltas=None, ratio=0.5, tol=1e-12):
    """Banded sup of |A/V| over node pairs, scaled by pair separation."""
    nodes = jets.nodes
    if len(nodes) < m + 1:
        raise TooFewNodesError(f"need at least {m + 1} nodes for order {m}")
    if deltas is None:
        diam = nodes[-1] - nodes[0]
        gap = min(b - a for a, b in zip(nodes, nodes[1:]))
        deltas = delta_grid(diam, gap, ratio)
    items = []
    for ia, ib in itertools.combinations(range(len(nodes)), 2):
        a, b = nodes[ia], nodes[ib]
        pair = av_pair(jets, a, b, m, tol)
        items.append((b - a, abs(pair.ratio)))
    return banded_sup(items, deltas, name="av_ratio")


def discrete_av_profile(
    samples, m, window=None, deltas=None, ratio=0.5, full_enum=False, tol=1e-12
):
    """Banded sup of |A[X]/V[X]| over windowed (m+1)-subsets.

    Subsets are drawn from sliding windows of consecutive nodes (default
    width 2m+4) and every admissible endpoint pair inside each subset is
    scanned; items are binned at scale diam(X).
    """
    nodes = samples.nodes
    n = len(nodes)
    if n < m + 1:
        raise TooFewNodesError(f"need at least {m + 1} nodes for order {m}")
    if window is None:
        window = 2 * m + 4
    if deltas is None:
        deltas = delta_grid(samples.diam, samples.min_gap, ratio)
    subsets, _ = dd_windows(n, m, window, full_enum)
    items = []
    for sub in subsets:
        x = [nodes[i] for i in sub]
        diam = x[-1] - x[0]
        pf = newton_interp(x, [samples.fs[i] for i in sub])
        pg = newton_interp(x, [samples.gs[i] for i in sub])
        dpf, dpg = pf.derivative(), pg.derivative()
        hull = Interval(x[0], x[-1])
        rf = [] if dpf.is_zero else real_roots(dpf, hull, tol)
        rg = [] if dpg.is_zero else real_roots(dpg, hull, tol)
        bracket = dpf * pg - dpg * pf
        for ia, ib in itertools.combinations(range(len(sub)), 2):
            a, b = x[ia], x[ib]
            area = (
                samples.hs[sub[ib]]
                - samples.hs[sub[ia]]
                - 2.0 * signed_integral(bracket, a, b)
            )
            speed = abs_integral_between(dpf, rf, a, b) + abs_integral_between(
                dpg, rg, a, b
            )
            velocity = diam ** (2 * m) + diam ** m * speed
            items.append((diam, abs(area / velocity)))
    return banded_sup(items, deltas, name="discrete_av_ratio")

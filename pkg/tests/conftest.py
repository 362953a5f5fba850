"""Shared fixture builders and independent oracles.

The oracles recompute quantities under test from their definitions with
different numerics (rational arithmetic, adaptive Simpson subdivision,
the partial-fraction form of divided differences), so agreement is
evidence rather than a comparison of one code path with itself.
"""

import math
from fractions import Fraction

import numpy as np

from heiswhit import CurveJets, Poly, SampledCurve


# fixture builders -----------------------------------------------------------


def circle_rows(n, lo=0.0, hi=1.0):
    ts = np.linspace(lo, hi, n)
    return [(float(t), math.cos(t), math.sin(t), -2.0 * float(t)) for t in ts]


def circle_curve(n, lo=0.0, hi=1.0):
    """(cos t, sin t, -2t): analytic and horizontal; the positive control."""
    return SampledCurve.from_rows(circle_rows(n, lo, hi))


def circle_jets(nodes, m):
    """True jets of (cos t, sin t, -2t) at the given nodes."""

    def hd(t, k):
        if k == 0:
            return -2.0 * t
        return -2.0 if k == 1 else 0.0

    return CurveJets.from_callables(
        nodes,
        lambda t, k: math.cos(t + 0.5 * math.pi * k),
        lambda t, k: math.sin(t + 0.5 * math.pi * k),
        hd,
        m,
    )


def line_curve(n, lo=0.0, hi=1.0):
    """(t, 0, t): the height moves while no area is swept; negative control."""
    ts = np.linspace(lo, hi, n)
    return SampledCurve.from_rows([(float(t), float(t), 0.0, float(t)) for t in ts])


def flat_curve(n, lo=0.0, hi=1.0):
    """(t, 0, 0): trivially horizontal."""
    ts = np.linspace(lo, hi, n)
    return SampledCurve.from_rows([(float(t), float(t), 0.0, 0.0) for t in ts])


def random_poly(rng, deg, scale=1.0):
    return Poly([scale * rng.uniform(-1.0, 1.0) for _ in range(deg + 1)])


def horizontal_triple(rng, deg):
    """Random f, g of the given degree with the exact horizontal h.

    h' = 2(f'g - fg') pushes deg(h) up to 2*deg, so use
    bounded_horizontal_triple when every component must stay at deg <= m.
    """
    pf = random_poly(rng, deg)
    pg = random_poly(rng, deg)
    eta = 2.0 * (pf.derivative() * pg - pf * pg.derivative())
    ph = eta.antiderivative() + Poly([rng.uniform(-1.0, 1.0)])
    return pf, pg, ph


def bounded_horizontal_triple(rng, m):
    """Horizontal triple with every component of degree <= m.

    With g = alpha f + beta the bracket collapses to 2 beta f', so
    h = 2 beta f + const inherits the degree of f.
    """
    pf = random_poly(rng, m)
    alpha = rng.uniform(-1.0, 1.0)
    beta = rng.uniform(0.5, 1.5)
    pg = alpha * pf + Poly([beta])
    ph = 2.0 * beta * pf + Poly([rng.uniform(-1.0, 1.0)])
    return pf, pg, ph


def poly_curve(pf, pg, ph, nodes):
    return SampledCurve.from_rows([(t, pf(t), pg(t), ph(t)) for t in nodes])


def distinct_nodes(rng, count, lo=0.0, hi=1.0, min_gap=None):
    """Sorted draws from [lo, hi] with a guaranteed minimum separation."""
    if min_gap is None:
        min_gap = (hi - lo) * 1e-3
    while True:
        xs = np.sort(rng.uniform(lo, hi, size=count))
        if count == 1 or float(np.min(np.diff(xs))) > min_gap:
            return [float(x) for x in xs]


# oracles --------------------------------------------------------------------


def integrate_exact(p, lo, hi):
    """Signed polynomial integral in exact rational arithmetic."""
    flo, fhi = Fraction(lo), Fraction(hi)
    total = Fraction(0)
    for k, c in enumerate(p.coeffs):
        total += Fraction(c) * (fhi ** (k + 1) - flo ** (k + 1)) / (k + 1)
    return float(total)


def adaptive_quad(f, lo, hi, tol=1e-11, depth=48):
    """Recursive adaptive Simpson with Richardson correction."""

    def rec(a, b, fa, fm, fb, whole, tol, depth):
        mid = 0.5 * (a + b)
        lm, rm = 0.5 * (a + mid), 0.5 * (mid + b)
        flm, frm = f(lm), f(rm)
        left = (mid - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - mid) / 6.0 * (fm + 4.0 * frm + fb)
        if depth <= 0 or abs(left + right - whole) <= 15.0 * tol:
            return left + right + (left + right - whole) / 15.0
        return rec(a, mid, fa, flm, fm, left, 0.5 * tol, depth - 1) + rec(
            mid, b, fm, frm, fb, right, 0.5 * tol, depth - 1
        )

    if hi == lo:
        return 0.0
    mid = 0.5 * (lo + hi)
    fa, fm, fb = f(lo), f(mid), f(hi)
    whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb)
    return rec(lo, hi, fa, fm, fb, whole, tol, depth)


def abs_quad_oracle(p, lo, hi, tol=1e-12):
    """Adaptive-subdivision Simpson for the integral of |p|.

    Breadth-first over panels with numpy evaluation so a thousand random
    cases stay cheap; a panel is halved until its Simpson refinement moves
    by no more than its width's share of tol.
    """
    if hi <= lo:
        return 0.0
    a = np.array([lo])
    b = np.array([hi])
    total = 0.0
    for _ in range(48):
        mid = 0.5 * (a + b)
        lm, rm = 0.5 * (a + mid), 0.5 * (mid + b)
        fa, fm, fb = np.abs(p(a)), np.abs(p(mid)), np.abs(p(b))
        flm, frm = np.abs(p(lm)), np.abs(p(rm))
        coarse = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
        left = (mid - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - mid) / 6.0 * (fm + 4.0 * frm + fb)
        fine = left + right
        corrected = fine + (fine - coarse) / 15.0
        done = np.abs(fine - coarse) <= 15.0 * tol * (b - a) / (hi - lo)
        total += float(np.sum(corrected[done]))
        keep = ~done
        if not np.any(keep):
            return total
        a = np.concatenate([a[keep], mid[keep]])
        b = np.concatenate([mid[keep], b[keep]])
        last = corrected[keep]
    return total + float(np.sum(last))


def dd_lagrange(nodes, values):
    """Divided difference via the partial-fraction form sum v_i / prod (x_i - x_j)."""
    total = 0.0
    for i, (xi, vi) in enumerate(zip(nodes, values)):
        denom = 1.0
        for j, xj in enumerate(nodes):
            if i != j:
                denom *= xi - xj
        total += vi / denom
    return total


def area_oracle(jets, a, b, m, tol=1e-12):
    """The area discrepancy recomputed from its definition.

    Global-coordinate Taylor polynomials evaluated term by term and an
    adaptive-quadrature swept-area integral, sharing nothing with the
    polynomial engine under test.
    """
    ia, ib = jets.index(a), jets.index(b)
    fj, gj = jets.fjets[ia], jets.gjets[ia]

    def taylor(jet):
        return lambda x: sum(
            jet[k] / math.factorial(k) * (x - a) ** k for k in range(m + 1)
        )

    def taylor_d(jet):
        return lambda x: sum(
            jet[k] / math.factorial(k - 1) * (x - a) ** (k - 1)
            for k in range(1, m + 1)
        )

    tf, tg = taylor(fj), taylor(gj)
    dtf, dtg = taylor_d(fj), taylor_d(gj)
    swept = adaptive_quad(lambda x: dtf(x) * tg(x) - dtg(x) * tf(x), a, b, tol)
    fa, ga = fj[0], gj[0]
    fb, gb = jets.fjets[ib][0], jets.gjets[ib][0]
    return (
        jets.hjets[ib][0]
        - jets.hjets[ia][0]
        - 2.0 * swept
        + 2.0 * fa * (gb - tg(b))
        - 2.0 * ga * (fb - tf(b))
    )

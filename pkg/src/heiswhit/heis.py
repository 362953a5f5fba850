"""First Heisenberg group: group law, dilations, difference quotients.

Points are triples (x, y, z) with the product

    (x, y, z) * (x', y', z') = (x + x', y + y', z + z' + 2(y x' - x y')),

anisotropic dilations r.(x, y, z) = (r x, r y, r^2 z), and the horizontality
condition h' = 2(f' g - f g') for curves (f, g, h).
"""

import math
from bisect import bisect_left
from dataclasses import dataclass

from .errors import (
    CoincidentNodesError,
    DomainViolationError,
    LengthMismatchError,
    NodeNotFoundError,
    ZeroDilationError,
)


@dataclass(frozen=True)
class HPoint:
    x: float
    y: float
    z: float

    def __iter__(self):
        return iter((self.x, self.y, self.z))


ORIGIN = HPoint(0.0, 0.0, 0.0)


def group_mul(p, q):
    """Group product p * q."""
    return HPoint(
        p.x + q.x,
        p.y + q.y,
        p.z + q.z + 2.0 * (p.y * q.x - p.x * q.y),
    )


def inverse(p):
    """Group inverse; (x, y, z)^-1 = (-x, -y, -z)."""
    return HPoint(-p.x, -p.y, -p.z)


def group_mul_vec(p, q):
    """Product for the higher-dimensional analogue.

    p and q are sequences (x_1..x_n, y_1..y_n, z) of odd length 2n+1; the
    curve pipeline only ever uses n = 1 but the law itself is generic.
    """
    if len(p) != len(q) or len(p) % 2 == 0:
        raise LengthMismatchError("points need equal odd lengths 2n+1")
    n = (len(p) - 1) // 2
    x, y, z = p[:n], p[n : 2 * n], p[2 * n]
    x2, y2, z2 = q[:n], q[n : 2 * n], q[2 * n]
    twist = sum(y[j] * x2[j] - x[j] * y2[j] for j in range(n))
    return tuple(a + b for a, b in zip(x, x2)) + tuple(
        a + b for a, b in zip(y, y2)
    ) + (z + z2 + 2.0 * twist,)


def dilate(r, p):
    """Anisotropic dilation delta_r; a group automorphism for r != 0."""
    if r == 0.0:
        raise ZeroDilationError("dilation by 0 collapses the group")
    return HPoint(r * p.x, r * p.y, r * r * p.z)


def pansu_dq(pa, pb, a, b):
    """Group-dilated difference quotient delta_{1/(b-a)}(pa^-1 * pb)."""
    if a == b:
        raise CoincidentNodesError("difference quotient needs a != b")
    return dilate(1.0 / (b - a), group_mul(inverse(pa), pb))


def leibniz_stack(fjet, gjet, m):
    """Derivatives of the horizontal velocity from the jets of f and g.

    Returns [H^1, .., H^m] where

        H^k = 2 * sum_{i=0}^{k-1} C(k-1, i) (F^{k-i} G^i - G^{k-i} F^i),

    the k-th derivative of h when h' = 2(f'g - g'f) and F^j, G^j are the
    j-th derivatives of f and g.
    """
    if len(fjet) < m + 1 or len(gjet) < m + 1:
        raise LengthMismatchError(
            f"jets of length >= {m + 1} required, got {len(fjet)}, {len(gjet)}"
        )
    out = []
    for k in range(1, m + 1):
        acc = 0.0
        for i in range(k):
            acc += math.comb(k - 1, i) * (
                fjet[k - i] * gjet[i] - gjet[k - i] * fjet[i]
            )
        out.append(2.0 * acc)
    return out


def horizontality_defect(f, g, h, grid, domain=None):
    """Max over the grid of |h'(t) - 2(f'(t) g(t) - f(t) g'(t))|.

    f, g, h are callables accepting (t, deriv=k); grid is an iterable of
    parameters.  When a (lo, hi) domain is supplied, grid points outside it
    raise DomainViolationError.
    """
    worst = 0.0
    for t in grid:
        if domain is not None and not (domain[0] <= t <= domain[1]):
            raise DomainViolationError(f"grid point {t} outside {domain}")
        defect = abs(
            h(t, 1) - 2.0 * (f(t, 1) * g(t) - f(t) * g(t, 1))
        )
        if defect > worst:
            worst = defect
    return worst


@dataclass(frozen=True)
class CurveJets:
    """Per-node jets of a curve (f, g, h): three (m+1)-vectors per node."""

    nodes: tuple
    fjets: tuple
    gjets: tuple
    hjets: tuple

    def __post_init__(self):
        n = len(self.nodes)
        if not (len(self.fjets) == len(self.gjets) == len(self.hjets) == n):
            raise LengthMismatchError("one jet triple per node required")
        if any(b <= a for a, b in zip(self.nodes, self.nodes[1:])):
            raise ValueError("nodes must be strictly increasing")
        if n:
            width = len(self.fjets[0])
            for js in (self.fjets, self.gjets, self.hjets):
                if any(len(j) != width for j in js):
                    raise LengthMismatchError("all jets must share one length")

    @property
    def order(self):
        return len(self.fjets[0]) - 1 if self.nodes else -1

    def index(self, t):
        i = bisect_left(self.nodes, t)
        if i == len(self.nodes) or self.nodes[i] != t:
            raise NodeNotFoundError(f"{t} is not a node")
        return i

    @classmethod
    def from_polys(cls, nodes, pf, pg, ph, m):
        """Exact jets of a polynomial curve at the given nodes."""
        nodes = tuple(float(t) for t in nodes)
        fj, gj, hj = [], [], []
        for t in nodes:
            fj.append(tuple(pf.deriv_at(t, k) for k in range(m + 1)))
            gj.append(tuple(pg.deriv_at(t, k) for k in range(m + 1)))
            hj.append(tuple(ph.deriv_at(t, k) for k in range(m + 1)))
        return cls(nodes, tuple(fj), tuple(gj), tuple(hj))

    @classmethod
    def from_callables(cls, nodes, fd, gd, hd, m):
        """Jets from derivative oracles fd(t, k) etc."""
        nodes = tuple(float(t) for t in nodes)
        fj = tuple(tuple(fd(t, k) for k in range(m + 1)) for t in nodes)
        gj = tuple(tuple(gd(t, k) for k in range(m + 1)) for t in nodes)
        hj = tuple(tuple(hd(t, k) for k in range(m + 1)) for t in nodes)
        return cls(nodes, fj, gj, hj)

    def translated(self, p):
        """Jets of the left translate p * curve.

        First derivatives and above shift linearly through the group law;
        the zeroth components pick up the full twist.
        """
        fj, gj, hj = [], [], []
        for fjet, gjet, hjet in zip(self.fjets, self.gjets, self.hjets):
            nf = (fjet[0] + p.x,) + tuple(fjet[1:])
            ng = (gjet[0] + p.y,) + tuple(gjet[1:])
            nh = [hjet[0] + p.z + 2.0 * (p.y * fjet[0] - p.x * gjet[0])]
            for k in range(1, len(hjet)):
                nh.append(hjet[k] + 2.0 * (p.y * fjet[k] - p.x * gjet[k]))
            fj.append(nf)
            gj.append(ng)
            hj.append(tuple(nh))
        return CurveJets(self.nodes, tuple(fj), tuple(gj), tuple(hj))

"""One-dimensional Whitney fields and a blended extension operator.

A Whitney field assigns a jet (F^0, .., F^m) to every node; the field is
the trace of a C^m function when the Taylor remainders

    R_k(a, b) = |F^k(b) - T_a^{m-k} F^k(b)| / |b - a|^{m-k}

decay as nodes approach each other.  The extension operator here glues the
Taylor polynomials of adjacent nodes with a fixed smooth transition, which
keeps it linear in the field and exact on the jets at the nodes.
"""

import itertools
import math
from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .errors import (
    DuplicateNodeError,
    LengthMismatchError,
    NonFiniteError,
    TooFewNodesError,
)
from .divdiff import newton_interp
from .poly import Poly, compose_affine, jet_poly
from .profiles import Profile, banded_sup, delta_grid


@dataclass(frozen=True)
class WhitneyField:
    """Jets (F^0, .., F^m) attached to strictly increasing nodes."""

    nodes: tuple
    jets: tuple

    def __post_init__(self):
        if len(self.nodes) != len(self.jets):
            raise LengthMismatchError("one jet per node required")
        if not self.nodes:
            raise TooFewNodesError("a field needs at least one node")
        for a, b in zip(self.nodes, self.nodes[1:]):
            if a == b:
                raise DuplicateNodeError(f"node {a} repeats")
            if b < a:
                raise ValueError("nodes must be strictly increasing")
        width = len(self.jets[0])
        if any(len(j) != width for j in self.jets):
            raise LengthMismatchError("all jets must share one length")
        flat = [v for j in self.jets for v in j]
        if any(not math.isfinite(v) for v in flat):
            raise NonFiniteError("jets must be finite")

    @property
    def order(self):
        return len(self.jets[0]) - 1

    @property
    def scale(self):
        return max(abs(v) for j in self.jets for v in j) if self.jets else 0.0

    def combine(self, other, ca=1.0, cb=1.0):
        """Linear combination ca * self + cb * other on shared nodes."""
        if self.nodes != other.nodes or self.order != other.order:
            raise LengthMismatchError("fields must share nodes and order")
        jets = tuple(
            tuple(ca * u + cb * v for u, v in zip(ja, jb))
            for ja, jb in zip(self.jets, other.jets)
        )
        return WhitneyField(self.nodes, jets)


@dataclass(frozen=True)
class ModulusFn:
    """Modulus of continuity: power law c * t^s or a tabulated profile."""

    kind: str = "power"
    coeff: float = 1.0
    exponent: float = 1.0
    table: tuple = ()

    def __post_init__(self):
        if self.kind == "power":
            if not (0.0 < self.exponent <= 1.0):
                raise ValueError("power modulus needs exponent in (0, 1]")
            if not (self.coeff > 0.0):
                raise ValueError("power modulus needs a positive coefficient")
        elif self.kind == "tabulated":
            ts = [t for t, _ in self.table]
            ws = [w for _, w in self.table]
            if len(self.table) < 2 or ts != sorted(ts) or len(set(ts)) != len(ts):
                raise ValueError("tabulated modulus needs increasing abscissae")
            if any(b < a for a, b in zip(ws, ws[1:])) or any(w < 0 for w in ws):
                raise ValueError("tabulated modulus must be nonnegative, nondecreasing")
        else:
            raise ValueError(f"unknown modulus kind {self.kind!r}")

    def __call__(self, t):
        t = abs(float(t))
        if self.kind == "power":
            return self.coeff * t ** self.exponent
        ts = [abscissa for abscissa, _ in self.table]
        ws = [w for _, w in self.table]
        if t <= ts[0]:
            return ws[0] * (t / ts[0]) if ts[0] > 0 else ws[0]
        if t >= ts[-1]:
            return ws[-1]
        i = bisect_right(ts, t) - 1
        frac = (t - ts[i]) / (ts[i + 1] - ts[i])
        return ws[i] + frac * (ws[i + 1] - ws[i])


class PiecewiseCm:
    """Piecewise polynomial with local-coordinate pieces.

    Piece i covers (-inf, b_0) for i = 0, [b_{i-1}, b_i) in the middle, and
    [b_last, inf) at the right end, and is stored as a Poly in the local
    variable u = t - center_i.  Local coordinates keep evaluation stable on
    short pieces far from the origin.  C^m continuity across breakpoints is
    a property of how the pieces were built; breakpoint_jumps measures it.
    """

    def __init__(self, breakpoints, centers, pieces, order):
        if len(pieces) != len(breakpoints) + 1 or len(centers) != len(pieces):
            raise LengthMismatchError(
                "need len(pieces) == len(breakpoints) + 1 == len(centers)"
            )
        if any(b <= a for a, b in zip(breakpoints, breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        self.breakpoints = tuple(float(b) for b in breakpoints)
        self.centers = tuple(float(c) for c in centers)
        self.pieces = tuple(pieces)
        self.order = int(order)
        self._deriv_cache = [dict() for _ in pieces]

    @classmethod
    def single(cls, poly, order, center=0.0):
        return cls((), (center,), (poly,), order)

    def _piece_poly(self, i, deriv):
        cache = self._deriv_cache[i]
        if deriv not in cache:
            p = self.pieces[i]
            for _ in range(deriv):
                p = p.derivative()
            cache[deriv] = p
        return cache[deriv]

    def piece_index(self, t):
        return bisect_right(self.breakpoints, t)

    def __call__(self, t, deriv=0):
        if isinstance(t, np.ndarray):
            out = np.empty_like(t, dtype=float)
            idx = np.searchsorted(self.breakpoints, t, side="right")
            for i in range(len(self.pieces)):
                mask = idx == i
                if mask.any():
                    out[mask] = self._piece_poly(i, deriv)(t[mask] - self.centers[i])
            return out
        i = self.piece_index(t)
        return self._piece_poly(i, deriv)(t - self.centers[i])

    def jet(self, t, m):
        """(value, .., m-th derivative) at t, from the active piece."""
        i = self.piece_index(t)
        u = t - self.centers[i]
        return tuple(self._piece_poly(i, k)(u) for k in range(m + 1))

    def breakpoint_jumps(self, up_to=None):
        """Max |left - right| derivative mismatch per order across breakpoints."""
        up_to = self.order if up_to is None else up_to
        jumps = [0.0] * (up_to + 1)
        for j, b in enumerate(self.breakpoints):
            for k in range(up_to + 1):
                left = self._piece_poly(j, k)(b - self.centers[j])
                right = self._piece_poly(j + 1, k)(b - self.centers[j + 1])
                jumps[k] = max(jumps[k], abs(left - right))
        return jumps

    @property
    def hull(self):
        if not self.breakpoints:
            return (self.centers[0], self.centers[0])
        return (self.breakpoints[0], self.breakpoints[-1])


def transition_poly(m):
    """The unique degree-(2m+1) switch S with S(0)=0, S(1)=1 and m flat ends.

    S is the normalized antiderivative of s^m (1-s)^m, so S^(j) vanishes at
    both endpoints for 1 <= j <= m.
    """
    if m < 0:
        raise ValueError("order must be nonnegative")
    base = Poly([0.0, 1.0, -1.0])  # s(1-s)
    bump = Poly([1.0])
    for _ in range(m):
        bump = bump * base
    anti = bump.antiderivative()
    return anti * (1.0 / anti(1.0))


def extend(whitney_field):
    """Blended Whitney extension of the field as a PiecewiseCm.

    On each gap (a, b) the piece is T_a + S((t-a)/(b-a)) (T_b - T_a) in
    local coordinates at a; beyond the extreme nodes it continues the
    Taylor polynomial of the extreme jet.  Linear in the field, exact on
    the jets at every node, degree at most 3m+1.
    """
    m = whitney_field.order
    nodes = whitney_field.nodes
    jets = whitney_field.jets
    s_poly = transition_poly(m)

    centers = [nodes[0]]
    pieces = [jet_poly(jets[0])]
    for i in range(len(nodes) - 1):
        a, b = nodes[i], nodes[i + 1]
        gap = b - a
        ta = jet_poly(jets[i])
        tb = compose_affine(jet_poly(jets[i + 1]), -gap, 1.0)
        s_local = compose_affine(s_poly, 0.0, 1.0 / gap)
        pieces.append(ta + s_local * (tb - ta))
        centers.append(a)
    pieces.append(jet_poly(jets[-1]))
    centers.append(nodes[-1])
    return PiecewiseCm(nodes, centers, pieces, m)


def jets_from_samples(nodes, values, m):
    """Candidate jets by local interpolation through m+1 nearest nodes.

    Ties in distance resolve toward smaller t; the zeroth jet component is
    the sample itself, exactly.
    """
    nodes = tuple(float(t) for t in nodes)
    values = tuple(float(v) for v in values)
    n = len(nodes)
    if n != len(values):
        raise LengthMismatchError("one value per node required")
    if n < m + 1:
        raise TooFewNodesError(f"need at least {m + 1} nodes for order {m}")
    for a, b in zip(nodes, nodes[1:]):
        if b <= a:
            raise DuplicateNodeError("nodes must be strictly increasing")

    jets = []
    for i, a in enumerate(nodes):
        lo = hi = i
        while hi - lo + 1 < m + 1:
            left_gap = a - nodes[lo - 1] if lo > 0 else math.inf
            right_gap = nodes[hi + 1] - a if hi + 1 < n else math.inf
            if left_gap <= right_gap:
                lo -= 1
            else:
                hi += 1
        p = newton_interp(nodes[lo : hi + 1], values[lo : hi + 1])
        jet = [values[i]]
        dp = p
        for _ in range(m):
            dp = dp.derivative()
            jet.append(dp(a))
        jets.append(tuple(jet))
    return WhitneyField(nodes, tuple(jets))


@dataclass(frozen=True)
class FieldReport:
    """Diagnostics from validate_field; informational, never a rejection."""

    per_k: dict
    combined: Profile
    max_remainder: float
    omega_constant: float = None
    pair_count: int = 0


def validate_field(whitney_field, mode="cm", omega=None, deltas=None, ratio=0.5):
    """Taylor-remainder diagnostics of a field.

    mode "cm": banded decay profiles of R_k per derivative order and
    combined.  mode "cm_omega": additionally the smallest constant C with
    R_k <= C * omega(|b - a|) over all ordered pairs.
    """
    if mode not in ("cm", "cm_omega"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "cm_omega" and omega is None:
        raise ValueError("cm_omega mode needs a modulus")
    m = whitney_field.order
    nodes = whitney_field.nodes
    jets = whitney_field.jets
    n = len(nodes)
    if n < 2:
        raise TooFewNodesError("remainder ratios need at least two nodes")
    if deltas is None:
        diam = nodes[-1] - nodes[0]
        gap = min(b - a for a, b in zip(nodes, nodes[1:]))
        deltas = delta_grid(diam, gap, ratio)

    items = {k: [] for k in range(m + 1)}
    omega_c = 0.0
    worst = 0.0
    pairs = 0
    for ia in range(n):
        a = nodes[ia]
        truncated = [jet_poly(jets[ia][k:]) for k in range(m + 1)]
        for ib in range(n):
            if ib == ia:
                continue
            b = nodes[ib]
            d = abs(b - a)
            pairs += 1
            for k in range(m + 1):
                taylor = truncated[k](b - a)
                r = abs(jets[ib][k] - taylor) / d ** (m - k)
                items[k].append((d, r))
                worst = max(worst, r)
                if mode == "cm_omega":
                    w = omega(d)
                    omega_c = max(omega_c, r / w if w > 0 else math.inf)

    per_k = {
        k: banded_sup(items[k], deltas, name=f"remainder_k{k}")
        for k in range(m + 1)
    }
    combined = banded_sup(
        itertools.chain.from_iterable(items.values()), deltas, name="remainders"
    )
    return FieldReport(
        per_k,
        combined,
        worst,
        omega_c if mode == "cm_omega" else None,
        pairs,
    )

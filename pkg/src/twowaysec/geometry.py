"""Two-user rate-region geometry.

Every region built here is the convex hull of a finite point set together
with its axis projections and the origin, so it is a convex polygon hugging
both axes. Vertices are stored counter-clockwise starting at the origin:

    (0, 0) -> (max r1, 0) -> ... upper-right boundary ... -> (0, max r2)

Degenerate regions keep the same convention with repeated structure
collapsed: the origin alone, or a segment along one axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

# sine of the turning angle below which three vertices count as collinear
_COLLINEAR_TOL = 1e-12
_SNAP = 1e-14


class RatePoint(NamedTuple):
    r1: float
    r2: float


@dataclass(frozen=True)
class RateBounds:
    """R1 <= a, R2 <= b, R1 + R2 <= c. ``c`` may be negative before clipping."""

    a: float
    b: float
    c: float

    def corners(self):
        """The two upper-right corners of the clipped pentagon."""
        return pentagon_corners(self.a, self.b, self.c)


@dataclass(frozen=True, eq=False)
class RateRegion:
    vertices: np.ndarray  # (n, 2), counter-clockwise from the origin

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        if not isinstance(other, RateRegion):
            return NotImplemented
        return self.vertices.shape == other.vertices.shape and bool(
            np.allclose(self.vertices, other.vertices, rtol=0, atol=1e-12))

    @property
    def max_r1(self):
        return float(self.vertices[:, 0].max())

    @property
    def max_r2(self):
        return float(self.vertices[:, 1].max())

    def points(self):
        return [RatePoint(float(x), float(y)) for x, y in self.vertices]

    def max_sum_rate(self):
        return float(self.vertices.sum(axis=1).max())


def pentagon_corners(a, b, c):
    """Vectorized upper-right corners of {0<=r1<=a, 0<=r2<=b, r1+r2<=max(c,0)}.

    Returns an array of shape (..., 2, 2): the corner on the R1 side and the
    corner on the R2 side. Together with the origin and axis projections they
    span the whole pentagon.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.maximum(np.asarray(c, dtype=float), 0.0)
    a = np.minimum(np.maximum(a, 0.0), c)
    b = np.minimum(np.maximum(b, 0.0), c)
    right = np.stack([a, np.minimum(b, c - a)], axis=-1)
    top = np.stack([np.minimum(a, c - b), b], axis=-1)
    out = np.stack([right, top], axis=-2)
    # c - a can leave rounding residue where the sum bound is exactly tight
    out[np.abs(out) < _SNAP] = 0.0
    return out


def pentagon(bounds: RateBounds) -> RateRegion:
    return convex_hull(pentagon_corners(bounds.a, bounds.b, bounds.c).reshape(-1, 2))


def _pareto_front(pts):
    """Drop points weakly dominated by another point (both coordinates <=)."""
    order = np.lexsort((-pts[:, 1], -pts[:, 0]))
    pts = pts[order]
    best_before = np.maximum.accumulate(np.concatenate([[-np.inf], pts[:-1, 1]]))
    return pts[pts[:, 1] > best_before]


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _left_turn(o, a, b):
    cr = _cross(o, a, b)
    scale = math.hypot(a[0] - o[0], a[1] - o[1]) * math.hypot(b[0] - o[0], b[1] - o[1])
    return cr > _COLLINEAR_TOL * scale


def convex_hull(points) -> RateRegion:
    """Convex hull of ``points`` together with their projections and the origin."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        raise ValueError("convex_hull needs at least one point")
    if np.any(pts < -1e-12) or np.any(~np.isfinite(pts)):
        raise ValueError("rate points must be finite and non-negative")
    pts = np.maximum(pts, 0.0)
    r1max = float(pts[:, 0].max())
    r2max = float(pts[:, 1].max())
    if r1max == 0.0 and r2max == 0.0:
        return RateRegion(np.zeros((1, 2)))
    if r2max == 0.0:
        return RateRegion(np.array([[0.0, 0.0], [r1max, 0.0]]))
    if r1max == 0.0:
        return RateRegion(np.array([[0.0, 0.0], [0.0, r2max]]))

    front = _pareto_front(pts)
    # walk from (0, r2max) to (r1max, 0) keeping clockwise turns only
    cand = np.vstack([[[0.0, r2max]], front[::-1], [[r1max, 0.0]]])
    chain: list = []
    for p in cand:
        p = (float(p[0]), float(p[1]))
        if chain and p == chain[-1]:
            continue
        while len(chain) >= 2 and not _left_turn(p, chain[-1], chain[-2]):
            chain.pop()
        chain.append(p)
    verts = [(0.0, 0.0)] + chain[::-1]
    return RateRegion(np.array(verts))


def union_region(regions: Iterable[RateRegion]) -> RateRegion:
    regions = list(regions)
    if not regions:
        raise ValueError("union_region needs at least one region")
    return convex_hull(np.vstack([r.vertices for r in regions]))


def _segment_distance(p, a, b):
    ab = b - a
    denom = float(ab @ ab)
    t = 0.0 if denom == 0.0 else min(1.0, max(0.0, float((p - a) @ ab) / denom))
    return float(np.linalg.norm(p - (a + t * ab)))


def distance(region: RateRegion, p) -> float:
    """Euclidean distance from ``p`` to the region (0 inside)."""
    p = np.asarray(p, dtype=float)
    v = region.vertices
    n = len(v)
    if n == 1:
        return float(np.linalg.norm(p - v[0]))
    if n == 2:
        return _segment_distance(p, v[0], v[1])
    inside = True
    for i in range(n):
        a, b = v[i], v[(i + 1) % n]
        if _cross(a, b, p) < 0:
            inside = False
            break
    if inside:
        return 0.0
    return min(_segment_distance(p, v[i], v[(i + 1) % n]) for i in range(n))


def contains(region: RateRegion, p, tol=0.0) -> bool:
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return distance(region, p) <= tol


def boundary_samples(region: RateRegion, n: int) -> list[RatePoint]:
    """``n`` arc-length spaced points on the upper-right boundary.

    The walk starts at (max r1, 0) and ends at (0, max r2). A degenerate
    region is walked along its own vertices.
    """
    if n < 2:
        raise ValueError("boundary_samples needs n >= 2")
    v = region.vertices
    if len(v) == 1:
        return [RatePoint(float(v[0, 0]), float(v[0, 1]))] * n
    if len(v) == 2:
        # a segment on one axis: walk it from the far end back to the origin
        chain = v[::-1] if region.max_r1 > 0 else v
    else:
        chain = v[1:]
    seg = np.linalg.norm(np.diff(chain, axis=0), axis=1)
    s = np.concatenate([[0.0], np.cumsum(seg)])
    targets = np.linspace(0.0, s[-1], n)
    r1 = np.interp(targets, s, chain[:, 0])
    r2 = np.interp(targets, s, chain[:, 1])
    return [RatePoint(float(x), float(y)) for x, y in zip(r1, r2)]


def hull_of_bounds(a, b, c) -> RateRegion:
    """Convex hull of the union of pentagons given as arrays of bounds."""
    corners = pentagon_corners(a, b, c).reshape(-1, 2)
    return convex_hull(_pareto_front(corners))


def vertices_satisfy(region: RateRegion, bounds: Sequence[RateBounds], tol=1e-9) -> bool:
    """True if every vertex meets at least one of the generating bounds."""
    for x, y in region.vertices:
        if not any(x <= b.a + tol and y <= b.b + tol and x + y <= max(b.c, 0.0) + tol
                   for b in bounds):
            return False
    return True

"""Exact 2D primitives: orientation, hull chains, hull layers, tangents.

Points are ``(x, y)`` tuples of exact rationals (int or Fraction).  Every
predicate is decided by integer/rational sign computations; there is no
epsilon anywhere.  Lines are never vertical: the whole model forbids
vertical boundaries, and every constructed line joins points with
distinct x.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import kernels
from .rationals import Scalar, as_fraction, normalize

Point = tuple  # (x, y) with exact rational entries

LEFT, COLLINEAR, RIGHT = 1, 0, -1
ABOVE, ON, BELOW = 1, 0, -1

UPPER = "upper"
LOWER = "lower"


class GeometryError(Exception):
    pass


class VerticalLineError(GeometryError):
    """A line through two points with equal x was requested."""


class DuplicateXError(GeometryError):
    """Two input points share an x-coordinate (general-position violation)."""


class OutOfSpanError(GeometryError):
    """chain_eval was queried outside the chain's x-span."""


class DegenerateTangentError(GeometryError):
    """Tangent requested from a point inside the chain's region."""


class DegenerateTriangleError(GeometryError):
    """Triangle test with collinear corners."""


def orientation(p: Point, q: Point, r: Point) -> int:
    """Exact sign of det(q-p, r-p): LEFT (+1), RIGHT (-1) or COLLINEAR (0)."""
    return kernels.orient(p[0], p[1], q[0], q[1], r[0], r[1])


@dataclass(frozen=True)
class Line:
    """Non-vertical line y = slope*x + intercept."""

    slope: Scalar
    intercept: Scalar

    @classmethod
    def through(cls, p: Point, q: Point) -> "Line":
        if p[0] == q[0]:
            raise VerticalLineError(f"points share x={p[0]}")
        slope = Fraction(q[1] - p[1], 1) / Fraction(q[0] - p[0], 1)
        intercept = p[1] - slope * p[0]
        return cls(normalize(slope), normalize(intercept))

    def y_at(self, x: Scalar) -> Scalar:
        return normalize(as_fraction(self.slope) * x + self.intercept)


def side_of_line(pt: Point, ln: Line) -> int:
    """ABOVE / ON / BELOW comparison of pt.y against the line at pt.x, exact."""
    lhs = pt[1]
    rhs = as_fraction(ln.slope) * pt[0] + ln.intercept
    if lhs > rhs:
        return ABOVE
    if lhs < rhs:
        return BELOW
    return ON


def point_above_line(pt: Point, a: Point, b: Point) -> int:
    """ABOVE/ON/BELOW of pt w.r.t. the non-vertical line through a and b.

    Pure orientation arithmetic; avoids building Fractions.
    """
    if a[0] == b[0]:
        raise VerticalLineError("line through equal x")
    s = orientation(a, b, pt)
    return s if a[0] < b[0] else -s


def _interval_overlaps(a1, a2, b1, b2) -> bool:
    if a1 > a2:
        a1, a2 = a2, a1
    if b1 > b2:
        b1, b2 = b2, b1
    return a1 <= b2 and b1 <= a2


def segments_intersect(s1: tuple[Point, Point], s2: tuple[Point, Point]) -> bool:
    """Closed-segment intersection via orientation signs, exact."""
    p, q = s1
    r, s = s2
    d1 = orientation(r, s, p)
    d2 = orientation(r, s, q)
    d3 = orientation(p, q, r)
    d4 = orientation(p, q, s)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
        (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
    ):
        return True
    # collinear / endpoint contacts
    if d1 == 0 and _on_segment(r, s, p):
        return True
    if d2 == 0 and _on_segment(r, s, q):
        return True
    if d3 == 0 and _on_segment(p, q, r):
        return True
    if d4 == 0 and _on_segment(p, q, s):
        return True
    return False


def _on_segment(a: Point, b: Point, pt: Point) -> bool:
    """pt collinear with a,b assumed; is it within the bounding box?"""
    return _interval_overlaps(a[0], b[0], pt[0], pt[0]) and _interval_overlaps(
        a[1], b[1], pt[1], pt[1]
    )


@dataclass
class HullChain:
    """x-monotone convex chain; `side` fixes which way its region extends.

    An upper chain bounds the convex hull of downward vertical rays (the
    region is everything weakly below it, within its x-span); a lower
    chain bounds the hull of upward rays.
    """

    side: str
    vertices: list  # Points, strictly increasing x
    _xs: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        if not self._xs:
            self._xs = [v[0] for v in self.vertices]

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def x_min(self) -> Scalar:
        return self.vertices[0][0]

    @property
    def x_max(self) -> Scalar:
        return self.vertices[-1][0]

    def in_span(self, x: Scalar) -> bool:
        return self.x_min <= x <= self.x_max

    def edge_at(self, x: Scalar) -> tuple[Point, Point]:
        """The chain edge whose x-range contains x (vertices for singletons)."""
        if not self.in_span(x):
            raise OutOfSpanError(f"x={x} outside [{self.x_min}, {self.x_max}]")
        if len(self.vertices) == 1:
            v = self.vertices[0]
            return v, v
        i = bisect.bisect_right(self._xs, x)
        if i == 0:
            i = 1
        if i == len(self.vertices):
            i -= 1
        return self.vertices[i - 1], self.vertices[i]

    def vertex_index(self, pt: Point) -> Optional[int]:
        i = bisect.bisect_left(self._xs, pt[0])
        if i < len(self.vertices) and self.vertices[i] == pt:
            return i
        return None


def _scan(points: Sequence[Point], turn: int) -> list:
    """Monotone scan over x-sorted points keeping `turn`-oriented corners."""
    out: list = []
    for p in points:
        while len(out) > 1 and orientation(out[-2], out[-1], p) != turn:
            out.pop()
        out.append(p)
    return out


def _sorted_unique_x(points: Iterable[Point]) -> list:
    pts = sorted(points)
    for a, b in zip(pts, pts[1:]):
        if a[0] == b[0]:
            raise DuplicateXError(f"x={a[0]} occurs twice")
    return pts


def upper_hull(points: Iterable[Point]) -> HullChain:
    """Upper convex hull chain; O(n log n) sort + monotone scan."""
    pts = _sorted_unique_x(points)
    if not pts:
        raise GeometryError("empty point set")
    return HullChain(UPPER, _scan(pts, RIGHT))


def lower_hull(points: Iterable[Point]) -> HullChain:
    pts = _sorted_unique_x(points)
    if not pts:
        raise GeometryError("empty point set")
    return HullChain(LOWER, _scan(pts, LEFT))


def hull_from_sorted(points: Sequence[Point], side: str) -> HullChain:
    """Hull of already x-sorted, duplicate-free points (no re-sort)."""
    return HullChain(side, _scan(points, RIGHT if side == UPPER else LEFT))


@dataclass
class HullLayers:
    """Onion peeling: layer 0 is the outermost hull chain."""

    side: str
    layers: list  # of HullChain
    assignment: dict  # Point -> layer index

    def layer_of(self, pt: Point) -> int:
        return self.assignment[pt]


def hull_layers(points: Iterable[Point], side: str) -> HullLayers:
    """Peel hulls until no point remains; layers partition the input."""
    remaining = _sorted_unique_x(points)
    if not remaining:
        raise GeometryError("empty point set")
    layers: list[HullChain] = []
    assignment: dict = {}
    while remaining:
        chain = hull_from_sorted(remaining, side)
        on_chain = set(chain.vertices)
        for v in chain.vertices:
            assignment[v] = len(layers)
        layers.append(chain)
        remaining = [p for p in remaining if p not in on_chain]
    return HullLayers(side, layers, assignment)


def second_layer(sorted_points: Sequence[Point], side: str) -> list:
    """Vertices of the hull of the points not on the first hull (may be [])."""
    first = hull_from_sorted(sorted_points, side)
    on_first = set(first.vertices)
    rest = [p for p in sorted_points if p not in on_first]
    if not rest:
        return []
    return hull_from_sorted(rest, side).vertices


def chain_eval(chain: HullChain, x: Scalar) -> Scalar:
    """Exact y of the chain's piecewise-linear boundary at x."""
    a, b = chain.edge_at(x)
    if a == b:
        return a[1]
    t = Fraction(x - a[0], 1) / Fraction(b[0] - a[0], 1)
    return normalize(a[1] + t * (b[1] - a[1]))


def region_contains(chain: HullChain, pt: Point) -> bool:
    """Membership in the chain's ray-hull region (closed), span included."""
    if not chain.in_span(pt[0]):
        return False
    a, b = chain.edge_at(pt[0])
    if a == b:
        return pt[1] <= a[1] if chain.side == UPPER else pt[1] >= a[1]
    s = point_above_line(pt, a, b)
    return s <= 0 if chain.side == UPPER else s >= 0


def _slope_cmp(q: Point, u: Point, v: Point) -> int:
    """Sign of slope(q->u) - slope(q->v) for u, v on the same x-side of q.

    slope(q->u) - slope(q->v) = cross(v-q, u-q) / (dx_u * dx_v) and the
    denominator is positive when both points sit on one side of q.
    """
    if (u[0] > q[0]) != (v[0] > q[0]):
        raise GeometryError("slope comparison across q")
    return orientation(q, v, u)


def tangent_from_point(q: Point, chain: HullChain) -> tuple[Line, list]:
    """Tangent line from q with the whole chain weakly on its region side.

    Returns the line and the touched vertices (one vertex in general
    position, two if q is collinear with a chain edge).  For q inside the
    x-span (outside the region), the left-side tangent is returned.
    Raises DegenerateTangentError when q lies in the chain's region.
    """
    if region_contains(chain, q):
        raise DegenerateTangentError("query point inside the chain region")
    verts = chain.vertices
    if q[0] == verts[0][0] or q[0] == verts[-1][0]:
        # q shares x with a span endpoint but is outside the region: the
        # tangent would be vertical only if q sits on the ray; never here
        # under distinct-x general position.
        raise DuplicateXError("query shares x with a chain endpoint")

    upper = chain.side == UPPER

    if q[0] < verts[0][0]:
        idx = _tangent_scan(q, verts, want_min=not upper)
    elif q[0] > verts[-1][0]:
        idx = _tangent_scan(q, verts, want_min=upper)
    else:
        # inside span, outside region: feasible slopes form an interval;
        # the left touch is the extreme slope among vertices left of q.
        split = bisect.bisect_left(chain._xs, q[0])
        left = list(range(split))
        best = left[0]
        for i in left[1:]:
            c = _slope_cmp(q, verts[i], verts[best])
            if (c > 0) if not upper else (c < 0):
                best = i
        idx = best
    touch = [verts[idx]]
    ln = Line.through(q, verts[idx])
    # a second touched vertex shows up as a neighbour on the line
    for j in (idx - 1, idx + 1):
        if 0 <= j < len(verts) and orientation(q, verts[idx], verts[j]) == 0:
            touch.append(verts[j])
    return ln, touch


def _tangent_scan(q: Point, verts: Sequence[Point], want_min: bool) -> int:
    """Index of the extreme-slope vertex as seen from q.

    With q strictly outside the chain's x-span, slope(q -> verts[i]) is
    strictly unimodal in i, so the extreme sits where the consecutive
    slope difference first changes sign; binary search on that monotone
    predicate.
    """
    m = len(verts)
    if m == 1:
        return 0

    def pred(i: int) -> bool:
        c = _slope_cmp(q, verts[i + 1], verts[i])
        return c > 0 if want_min else c < 0

    ans = m - 1
    a, b = 0, m - 2
    while a <= b:
        mid = (a + b) // 2
        if pred(mid):
            ans = mid
            b = mid - 1
        else:
            a = mid + 1
    return ans


def point_in_triangle_interior(pt: Point, a: Point, b: Point, c: Point) -> bool:
    """Strict interior test via three orientation signs."""
    d = orientation(a, b, c)
    if d == 0:
        raise DegenerateTriangleError("collinear triangle corners")
    if d < 0:
        b, c = c, b
    return (
        orientation(a, b, pt) > 0
        and orientation(b, c, pt) > 0
        and orientation(c, a, pt) > 0
    )

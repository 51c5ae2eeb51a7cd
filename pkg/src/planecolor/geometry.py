"""Planar primitives for periodic colorings.

Everything here works in plane units where the forbidden distance is 1.
Shapes are closed convex sets: polygons, disks, and polygon-disk
intersections.  Besides membership and area, the module answers the
question the probability engines keep asking: for which directions does a
circle around a point land inside a shape.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence, Union

TWO_PI = 2.0 * math.pi
ANGLE_EPS = 1e-12
CONTAIN_EPS = 1e-12
# relative slack under which a line or circle is treated as tangent rather
# than cutting; the neglected cap has area below 1e-14
TANGENT_EPS = 1e-10


class Point(NamedTuple):
    x: float
    y: float


def _check_finite(*values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"non-finite coordinate {v!r}")


def _as_point(p) -> Point:
    x, y = float(p[0]), float(p[1])
    _check_finite(x, y)
    return Point(x, y)


# ---------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class Lattice:
    """Two-dimensional lattice spanned by ``u`` and ``v``."""

    u: Point
    v: Point

    def __post_init__(self):
        object.__setattr__(self, "u", _as_point(self.u))
        object.__setattr__(self, "v", _as_point(self.v))
        if self.cell_area <= 1e-12:
            raise ValueError(f"degenerate lattice basis u={tuple(self.u)} v={tuple(self.v)}")

    @property
    def det(self) -> float:
        return self.u.x * self.v.y - self.u.y * self.v.x

    @property
    def cell_area(self) -> float:
        return abs(self.det)

    @property
    def min_height(self) -> float:
        """Smallest distance between parallel lattice lines of the basis."""
        return self.cell_area / max(math.hypot(*self.u), math.hypot(*self.v))

    def vector(self, m: int, n: int) -> Point:
        return Point(m * self.u.x + n * self.v.x, m * self.u.y + n * self.v.y)

    def to_frac(self, p) -> tuple[float, float]:
        d = self.det
        a = (p[0] * self.v.y - p[1] * self.v.x) / d
        b = (self.u.x * p[1] - self.u.y * p[0]) / d
        return a, b

    def corners(self) -> list[Point]:
        u, v = self.u, self.v
        return [Point(0.0, 0.0), u, Point(u.x + v.x, u.y + v.y), v]


def reduce_to_cell(lattice: Lattice, p) -> tuple[Point, tuple[int, int]]:
    """Return ``(q, (m, n))`` with ``p = q + m*u + n*v`` and q in the half-open cell."""
    x, y = float(p[0]), float(p[1])
    _check_finite(x, y)
    a, b = lattice.to_frac((x, y))
    m, n = math.floor(a), math.floor(b)
    w = lattice.vector(m, n)
    q = Point(x - w.x, y - w.y)
    # floor of a value just below an integer can leave q on the far edge
    a2, b2 = lattice.to_frac(q)
    if a2 >= 1.0:
        m += 1
    elif a2 < 0.0:
        m -= 1
    if b2 >= 1.0:
        n += 1
    elif b2 < 0.0:
        n -= 1
    w = lattice.vector(m, n)
    return Point(x - w.x, y - w.y), (m, n)


# ---------------------------------------------------------------------------
# angle interval sets


def _normalize(intervals) -> tuple[tuple[float, float], ...]:
    items = []
    for a, b in intervals:
        a = max(0.0, a)
        b = min(TWO_PI, b)
        if b - a > ANGLE_EPS:
            items.append((a, b))
    items.sort()
    merged: list[list[float]] = []
    for a, b in items:
        if merged and a - merged[-1][1] <= ANGLE_EPS:
            if b > merged[-1][1]:
                merged[-1][1] = b
        else:
            merged.append([a, b])
    if merged and merged[0][0] <= ANGLE_EPS:
        merged[0][0] = 0.0
    if merged and TWO_PI - merged[-1][1] <= ANGLE_EPS:
        merged[-1][1] = TWO_PI
    return tuple((a, b) for a, b in merged)


@dataclass(frozen=True)
class AngleIntervalSet:
    """Finite union of half-open arcs ``[a, b)`` of the circle, radians in ``[0, 2pi]``.

    An arc crossing angle 0 is stored as two pieces, ``[a, 2pi)`` and
    ``[0, b)``; ``wraps`` reports that situation.
    """

    intervals: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "intervals", _normalize(self.intervals))

    @classmethod
    def empty(cls) -> "AngleIntervalSet":
        return cls(())

    @classmethod
    def full(cls) -> "AngleIntervalSet":
        return cls(((0.0, TWO_PI),))

    @classmethod
    def arc(cls, start: float, stop: float) -> "AngleIntervalSet":
        """Counter-clockwise arc from ``start`` to ``stop`` (``stop > start``), any winding."""
        length = stop - start
        if length <= 0.0:
            return cls.empty()
        if length >= TWO_PI:
            return cls.full()
        a = start % TWO_PI
        b = a + length
        if b <= TWO_PI:
            return cls(((a, b),))
        return cls(((a, TWO_PI), (0.0, b - TWO_PI)))

    @property
    def wraps(self) -> bool:
        iv = self.intervals
        return len(iv) > 1 and iv[0][0] == 0.0 and iv[-1][1] == TWO_PI

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    def measure(self) -> float:
        return sum(b - a for a, b in self.intervals)

    def complement(self) -> "AngleIntervalSet":
        out = []
        prev = 0.0
        for a, b in self.intervals:
            if a > prev:
                out.append((prev, a))
            prev = b
        if prev < TWO_PI:
            out.append((prev, TWO_PI))
        return AngleIntervalSet(tuple(out))

    def union(self, other: "AngleIntervalSet") -> "AngleIntervalSet":
        return AngleIntervalSet(self.intervals + other.intervals)

    def intersect(self, other: "AngleIntervalSet") -> "AngleIntervalSet":
        out = []
        i = j = 0
        A, B = self.intervals, other.intervals
        while i < len(A) and j < len(B):
            lo = max(A[i][0], B[j][0])
            hi = min(A[i][1], B[j][1])
            if hi > lo:
                out.append((lo, hi))
            if A[i][1] < B[j][1]:
                i += 1
            else:
                j += 1
        return AngleIntervalSet(tuple(out))

    def contains(self, phi: float) -> bool:
        phi = phi % TWO_PI
        return any(a <= phi < b for a, b in self.intervals)

    def shifted(self, theta: float) -> "AngleIntervalSet":
        pieces = []
        for a, b in self.intervals:
            pieces.extend(AngleIntervalSet.arc(a + theta, b + theta).intervals)
        return AngleIntervalSet(tuple(pieces))

    def endpoints(self) -> list[float]:
        return [x for ab in self.intervals for x in ab]

    __or__ = union
    __and__ = intersect
    __invert__ = complement


def union(a: AngleIntervalSet, b: AngleIntervalSet) -> AngleIntervalSet:
    return a.union(b)


def intersect(a: AngleIntervalSet, b: AngleIntervalSet) -> AngleIntervalSet:
    return a.intersect(b)


def complement(a: AngleIntervalSet) -> AngleIntervalSet:
    return a.complement()


def measure(a: AngleIntervalSet) -> float:
    return a.measure()


def _halfplane_arc(nx, ny, h, cx, cy, rho) -> AngleIntervalSet:
    # {phi : n.(c + rho e_phi) <= h}
    t = (h - (nx * cx + ny * cy)) / rho
    if t >= 1.0 - TANGENT_EPS:
        return AngleIntervalSet.full()
    if t <= -1.0 + TANGENT_EPS:
        return AngleIntervalSet.empty()
    alpha = math.atan2(ny, nx)
    g = math.acos(t)
    return AngleIntervalSet.arc(alpha + g, alpha + TWO_PI - g)


def _disk_arc(ox, oy, r, cx, cy, rho) -> AngleIntervalSet:
    # {phi : |c + rho e_phi - o| <= r}
    wx, wy = ox - cx, oy - cy
    dist = math.hypot(wx, wy)
    if dist == 0.0:
        return AngleIntervalSet.full() if rho <= r else AngleIntervalSet.empty()
    t = (rho * rho + dist * dist - r * r) / (2.0 * rho * dist)
    if t <= -1.0 + TANGENT_EPS:
        return AngleIntervalSet.full()
    if t >= 1.0 - TANGENT_EPS:
        return AngleIntervalSet.empty()
    beta = math.atan2(wy, wx)
    g = math.acos(t)
    return AngleIntervalSet.arc(beta - g, beta + g)


# ---------------------------------------------------------------------------
# shapes


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class ConvexPolygon:
    vertices: tuple[Point, ...]

    def __post_init__(self):
        verts = tuple(_as_point(p) for p in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        if len(set(verts)) != len(verts):
            raise ValueError("polygon has repeated vertices")
        k = len(verts)
        for i in range(k):
            if _cross(verts[i - 1], verts[i], verts[(i + 1) % k]) <= 0.0:
                raise ValueError("polygon must be strictly convex and counter-clockwise")

    @cached_property
    def halfplanes(self) -> tuple[tuple[float, float, float], ...]:
        """Outward unit normals ``(nx, ny, h)`` with the polygon being ``n.x <= h``."""
        out = []
        verts = self.vertices
        for i, p in enumerate(verts):
            q = verts[(i + 1) % len(verts)]
            dx, dy = q.x - p.x, q.y - p.y
            ln = math.hypot(dx, dy)
            nx, ny = dy / ln, -dx / ln
            out.append((nx, ny, nx * p.x + ny * p.y))
        return tuple(out)

    def translated(self, dx: float, dy: float) -> "ConvexPolygon":
        return ConvexPolygon(tuple(Point(p.x + dx, p.y + dy) for p in self.vertices))

    def contains(self, p) -> bool:
        x, y = p[0], p[1]
        return all(nx * x + ny * y - h <= CONTAIN_EPS for nx, ny, h in self.halfplanes)

    def area(self) -> float:
        return _shoelace(self.vertices)

    @cached_property
    def bounding_circle(self) -> tuple[float, float, float]:
        k = len(self.vertices)
        cx = sum(p.x for p in self.vertices) / k
        cy = sum(p.y for p in self.vertices) / k
        r = max(math.hypot(p.x - cx, p.y - cy) for p in self.vertices)
        return cx, cy, r

    def circle_angles(self, c, rho: float = 1.0) -> AngleIntervalSet:
        out = AngleIntervalSet.full()
        for nx, ny, h in self.halfplanes:
            out = out.intersect(_halfplane_arc(nx, ny, h, c[0], c[1], rho))
            if out.is_empty:
                break
        return out

    def diameter(self) -> float:
        v = self.vertices
        return max(math.dist(a, b) for a in v for b in v)

    def raw(self):
        return ([tuple(p) for p in self.vertices], list(self.halfplanes), None)


@dataclass(frozen=True)
class Disk:
    center: Point
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", _as_point(self.center))
        r = float(self.radius)
        _check_finite(r)
        if r <= 0.0:
            raise ValueError("disk radius must be positive")
        object.__setattr__(self, "radius", r)

    def translated(self, dx: float, dy: float) -> "Disk":
        return Disk(Point(self.center.x + dx, self.center.y + dy), self.radius)

    def contains(self, p) -> bool:
        dx, dy = p[0] - self.center.x, p[1] - self.center.y
        return dx * dx + dy * dy <= self.radius * self.radius + CONTAIN_EPS

    def area(self) -> float:
        return math.pi * self.radius ** 2

    @property
    def bounding_circle(self) -> tuple[float, float, float]:
        return self.center.x, self.center.y, self.radius

    def circle_angles(self, c, rho: float = 1.0) -> AngleIntervalSet:
        return _disk_arc(self.center.x, self.center.y, self.radius, c[0], c[1], rho)

    def diameter(self) -> float:
        return 2.0 * self.radius

    def raw(self):
        return (None, [], (self.center.x, self.center.y, self.radius))


@dataclass(frozen=True)
class Intersection:
    polygon: ConvexPolygon
    disk: Disk

    def __post_init__(self):
        if intersection_area([self.polygon.raw(), self.disk.raw()]) <= 0.0:
            raise ValueError("polygon and disk do not overlap")

    def translated(self, dx: float, dy: float) -> "Intersection":
        return Intersection(self.polygon.translated(dx, dy), self.disk.translated(dx, dy))

    def contains(self, p) -> bool:
        return self.polygon.contains(p) and self.disk.contains(p)

    def area(self) -> float:
        return intersection_area([self.raw()])

    @cached_property
    def bounding_circle(self) -> tuple[float, float, float]:
        a = self.polygon.bounding_circle
        b = self.disk.bounding_circle
        return a if a[2] < b[2] else b

    def circle_angles(self, c, rho: float = 1.0) -> AngleIntervalSet:
        out = self.disk.circle_angles(c, rho)
        if out.is_empty:
            return out
        return out.intersect(self.polygon.circle_angles(c, rho))

    def boundary_pieces(self) -> list[tuple]:
        """Boundary as ccw ``("seg", p, q)`` / ``("arc", a0, a1)`` pieces, in order."""
        return _boundary_pieces(self)

    def diameter(self, resolution: float = 1e-4, margin: float = 1e-3) -> float:
        import numpy as np

        c = (self.disk.center.x, self.disk.center.y)
        if _symmetric_about(self.polygon, c) and any(p[0] == "arc" for p in _boundary_pieces(self)):
            # an arc and its mirror image are both on the boundary
            return self.disk.diameter()
        # for a convex set the diameter equals the largest width
        arr = np.asarray(boundary_points(self, resolution))
        best = 0.0
        for theta in np.array_split(np.linspace(0.0, math.pi, 2048, endpoint=False), 16):
            proj = arr @ np.stack([np.cos(theta), np.sin(theta)])
            best = max(best, float((proj.max(axis=0) - proj.min(axis=0)).max()))
        estimate = best + margin
        # the tile sits inside both parts, so their exact diameters cap the estimate
        return min(estimate, self.disk.diameter(), self.polygon.diameter())

    def raw(self):
        verts, hps, _ = self.polygon.raw()
        return (verts, hps, (self.disk.center.x, self.disk.center.y, self.disk.radius))


Shape = Union[ConvexPolygon, Disk, Intersection]


def contains_point(s: Shape, p) -> bool:
    return s.contains(p)


def area_of(s: Shape) -> float:
    return s.area()


def circle_shape_angles(s: Shape, c, radius: float = 1.0) -> AngleIntervalSet:
    """Directions ``phi`` with ``c + radius*(cos phi, sin phi)`` inside ``s``."""
    return s.circle_angles(c, radius)


def shape_diameter(s: Shape) -> float:
    return s.diameter()


def regular_hexagon(center=(0.0, 0.0), width: float = 1.0, vertex_up: bool = True) -> ConvexPolygon:
    """Regular hexagon with the given across-flats ``width``."""
    R = width / math.sqrt(3.0)
    off = math.pi / 2 if vertex_up else 0.0
    cx, cy = center
    return ConvexPolygon(tuple(
        Point(cx + R * math.cos(off + k * math.pi / 3), cy + R * math.sin(off + k * math.pi / 3))
        for k in range(6)
    ))


def rectangle(x0: float, y0: float, x1: float, y1: float) -> ConvexPolygon:
    return ConvexPolygon(((x0, y0), (x1, y0), (x1, y1), (x0, y1)))


# ---------------------------------------------------------------------------
# intersection areas of convex pieces
#
# A raw piece is ``(vertices | None, halfplanes, disk | None)``; the region
# is the intersection of the polygon (given both as vertices and half-planes)
# and the disk.


def _shoelace(verts: Sequence) -> float:
    s = 0.0
    k = len(verts)
    for i in range(k):
        x0, y0 = verts[i - 1]
        x1, y1 = verts[i]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


def clip_polygon(poly: list, nx: float, ny: float, h: float) -> list:
    """Sutherland-Hodgman step: keep the part of ``poly`` with ``n.x <= h``."""
    out = []
    if not poly:
        return out
    px, py = poly[-1]
    dp = nx * px + ny * py - h
    for cx, cy in poly:
        dc = nx * cx + ny * cy - h
        if dc <= 0.0:
            if dp > 0.0:
                t = dp / (dp - dc)
                out.append((px + t * (cx - px), py + t * (cy - py)))
            out.append((cx, cy))
        elif dp < 0.0:
            t = dp / (dp - dc)
            out.append((px + t * (cx - px), py + t * (cy - py)))
        px, py, dp = cx, cy, dc
    return out


def shift_raw(piece, dx: float, dy: float):
    verts, hps, disk = piece
    if verts is not None:
        verts = [(x + dx, y + dy) for x, y in verts]
        hps = [(nx, ny, h + nx * dx + ny * dy) for nx, ny, h in hps]
    if disk is not None:
        disk = (disk[0] + dx, disk[1] + dy, disk[2])
    return verts, hps, disk


def _segment_window(x0, y0, x1, y1, disks):
    lo, hi = 0.0, 1.0
    dx, dy = x1 - x0, y1 - y0
    a = dx * dx + dy * dy
    if a == 0.0:
        return None
    ln = math.sqrt(a)
    for ox, oy, r in disks:
        fx, fy = x0 - ox, y0 - oy
        if abs(dx * fy - dy * fx) / ln >= r * (1.0 - TANGENT_EPS):
            return None
        b = 2.0 * (dx * fx + dy * fy)
        c = fx * fx + fy * fy - r * r
        disc = b * b - 4.0 * a * c
        if disc <= 0.0:
            return None
        sq = math.sqrt(disc)
        t1 = (-b - sq) / (2.0 * a)
        t2 = (-b + sq) / (2.0 * a)
        if t1 > lo:
            lo = t1
        if t2 < hi:
            hi = t2
        if hi <= lo:
            return None
    return lo, hi


def _polygon_halfplanes(poly):
    out = []
    k = len(poly)
    for i in range(k):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % k]
        dx, dy = x1 - x0, y1 - y0
        ln = math.hypot(dx, dy)
        if ln < 1e-15:
            continue
        nx, ny = dy / ln, -dx / ln
        out.append((nx, ny, nx * x0 + ny * y0))
    return out


def _dedupe_disks(disks):
    out = []
    for d in disks:
        if not any(abs(d[0] - e[0]) < 1e-13 and abs(d[1] - e[1]) < 1e-13 and abs(d[2] - e[2]) < 1e-13
                   for e in out):
            out.append(d)
    return out


def _region(pieces):
    """Clip all polygon parts together; return ``(poly | None, disks, empty)``."""
    poly = None
    hps = []
    disks = []
    for verts, hp, disk in pieces:
        if verts is not None:
            if poly is None:
                poly = list(verts)
            else:
                hps.extend(hp)
        if disk is not None:
            disks.append(disk)
    if poly is not None:
        for nx, ny, h in hps:
            poly = clip_polygon(poly, nx, ny, h)
            if len(poly) < 3:
                return None, disks, True
    return poly, _dedupe_disks(disks), False


def intersection_area(pieces) -> float:
    """Exact area of the intersection of convex raw pieces (half-planes and disks)."""
    poly, disks, empty = _region(pieces)
    if empty:
        return 0.0
    if not disks:
        return max(0.0, _shoelace(poly)) if poly is not None else math.inf
    # work in a local frame so the boundary integral does not pick up
    # round-off proportional to the distance from the origin
    rx, ry = disks[0][0], disks[0][1]
    disks = [(x - rx, y - ry, r) for x, y, r in disks]
    if poly is not None:
        poly = [(x - rx, y - ry) for x, y in poly]
    # Green's theorem: integrate x dy - y dx over the boundary pieces
    total = 0.0
    edges = []
    if poly is not None:
        k = len(poly)
        for i in range(k):
            x0, y0 = poly[i]
            x1, y1 = poly[(i + 1) % k]
            win = _segment_window(x0, y0, x1, y1, disks)
            if win is None:
                continue
            lo, hi = win
            ax, ay = x0 + lo * (x1 - x0), y0 + lo * (y1 - y0)
            bx, by = x0 + hi * (x1 - x0), y0 + hi * (y1 - y0)
            total += ax * by - bx * ay
        edges = _polygon_halfplanes(poly)
    for idx, (ox, oy, r) in enumerate(disks):
        arcs = AngleIntervalSet.full()
        for nx, ny, h in edges:
            arcs = arcs.intersect(_halfplane_arc(nx, ny, h, ox, oy, r))
            if arcs.is_empty:
                break
        if arcs.is_empty:
            continue
        for jdx, (px, py, pr) in enumerate(disks):
            if jdx != idx:
                arcs = arcs.intersect(_disk_arc(px, py, pr, ox, oy, r))
                if arcs.is_empty:
                    break
        for a, b in arcs.intervals:
            total += (r * ox * (math.sin(b) - math.sin(a))
                      - r * oy * (math.cos(b) - math.cos(a))
                      + r * r * (b - a))
    return max(0.0, 0.5 * total)


def _boundary_pieces(s: Intersection) -> list[tuple]:
    poly = [tuple(p) for p in s.polygon.vertices]
    ox, oy, r = s.disk.center.x, s.disk.center.y, s.disk.radius
    pieces = []
    k = len(poly)
    for i in range(k):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % k]
        win = _segment_window(x0, y0, x1, y1, [(ox, oy, r)])
        if win is None or win[1] - win[0] < 1e-12:
            continue
        lo, hi = win
        pieces.append(("seg", (x0 + lo * (x1 - x0), y0 + lo * (y1 - y0)),
                       (x0 + hi * (x1 - x0), y0 + hi * (y1 - y0))))
    arcs = s.polygon.circle_angles((ox, oy), r)
    ivs = list(arcs.intervals)
    if arcs.wraps:
        first = ivs.pop(0)
        ivs[-1] = (ivs[-1][0], first[1] + TWO_PI)
    for a, b in ivs:
        pieces.append(("arc", a, b))

    def start(piece):
        if piece[0] == "seg":
            x, y = piece[1]
        else:
            x, y = ox + r * math.cos(piece[1]), oy + r * math.sin(piece[1])
        return x, y

    cx = sum(start(p)[0] for p in pieces) / len(pieces)
    cy = sum(start(p)[1] for p in pieces) / len(pieces)
    pieces.sort(key=lambda p: math.atan2(start(p)[1] - cy, start(p)[0] - cx) % TWO_PI)
    return pieces


def boundary_points(s: Shape, resolution: float = 1e-3) -> list[tuple[float, float]]:
    """Points on the boundary of ``s`` spaced at most ``resolution`` apart."""
    if isinstance(s, ConvexPolygon):
        segs = [("seg", tuple(s.vertices[i]), tuple(s.vertices[(i + 1) % len(s.vertices)]))
                for i in range(len(s.vertices))]
        ox = oy = r = 0.0
    elif isinstance(s, Disk):
        segs = [("arc", 0.0, TWO_PI)]
        ox, oy, r = s.center.x, s.center.y, s.radius
    else:
        segs = _boundary_pieces(s)
        ox, oy, r = s.disk.center.x, s.disk.center.y, s.disk.radius
    pts = []
    for piece in segs:
        if piece[0] == "seg":
            (x0, y0), (x1, y1) = piece[1], piece[2]
            n = max(1, math.ceil(math.hypot(x1 - x0, y1 - y0) / resolution))
            pts.extend((x0 + (x1 - x0) * i / n, y0 + (y1 - y0) * i / n) for i in range(n))
        else:
            a, b = piece[1], piece[2]
            n = max(1, math.ceil(r * (b - a) / resolution))
            pts.extend((ox + r * math.cos(a + (b - a) * i / n), oy + r * math.sin(a + (b - a) * i / n))
                       for i in range(n))
    return pts


def _symmetric_about(poly: ConvexPolygon, c, eps: float = 1e-12) -> bool:
    cx, cy = c
    verts = [tuple(v) for v in poly.vertices]
    return all(any(abs(2 * cx - x - u) <= eps and abs(2 * cy - y - w) <= eps for u, w in verts)
               for x, y in verts)


def _point_segment(q, p0, p1) -> float:
    dx, dy = p1[0] - p0[0], p1[1] - p0[1]
    dd = dx * dx + dy * dy
    t = 0.0 if dd == 0 else min(1.0, max(0.0, ((q[0] - p0[0]) * dx + (q[1] - p0[1]) * dy) / dd))
    return math.hypot(q[0] - p0[0] - t * dx, q[1] - p0[1] - t * dy)


def point_distance(s: Shape, q) -> float:
    """Exact Euclidean distance from point ``q`` to the closed convex shape ``s``."""
    if s.contains(q):
        return 0.0
    if isinstance(s, Disk):
        return math.hypot(q[0] - s.center.x, q[1] - s.center.y) - s.radius
    if isinstance(s, ConvexPolygon):
        verts = [tuple(v) for v in s.vertices]
        return min(_point_segment(q, verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts)))
    ox, oy, r = s.disk.center.x, s.disk.center.y, s.disk.radius
    best = math.inf
    for piece in _boundary_pieces(s):
        if piece[0] == "seg":
            best = min(best, _point_segment(q, piece[1], piece[2]))
            continue
        a, b = piece[1], piece[2]
        phi = math.atan2(q[1] - oy, q[0] - ox)
        if (phi - a) % TWO_PI <= b - a:
            best = min(best, abs(math.hypot(q[0] - ox, q[1] - oy) - r))
        for t in (a, b):
            best = min(best, math.hypot(q[0] - ox - r * math.cos(t), q[1] - oy - r * math.sin(t)))
    return best


def shape_distance(a: Shape, b: Shape, resolution: float = 2e-3) -> float:
    """Lower bound on the Euclidean distance between two disjoint convex shapes.

    Curved parts are replaced by inscribed polygons sampled at ``resolution``;
    the chord sagitta is subtracted so the result never overestimates.
    """
    import numpy as np

    pa = np.asarray(boundary_points(a, resolution))
    pb = np.asarray(boundary_points(b, resolution))

    def vertex_to_edges(pts, poly):
        p0 = poly
        p1 = np.roll(poly, -1, axis=0)
        d = p1 - p0
        dd = (d ** 2).sum(axis=1)
        dd[dd == 0] = 1.0
        w = pts[:, None, :] - p0[None, :, :]
        t = np.clip((w * d[None]).sum(axis=2) / dd[None], 0.0, 1.0)
        proj = p0[None] + t[..., None] * d[None]
        return float(np.sqrt(((pts[:, None, :] - proj) ** 2).sum(axis=2)).min())

    dist = min(vertex_to_edges(pa, pb), vertex_to_edges(pb, pa))
    sag = 0.0
    for s in (a, b):
        if not isinstance(s, ConvexPolygon):
            r = s.radius if isinstance(s, Disk) else s.disk.radius
            sag += resolution * resolution / (8.0 * r)
    return dist - sag

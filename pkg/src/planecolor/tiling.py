"""Periodic colored tilings of the plane.

A tiling is a lattice plus a list of z-ordered colored convex shapes given
relative to the fundamental cell.  Where shapes overlap, the highest
``z`` wins, then the earlier list position.  Points covered by no shape get
the background color, which may be ``UNCOLORED``.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .geometry import (
    ConvexPolygon,
    Disk,
    Intersection,
    Lattice,
    Point,
    Shape,
    intersection_area,
    reduce_to_cell,
    regular_hexagon,
    point_distance,
)

UNCOLORED = -1
FULL_TOL = 1e-12
OVERLAP_TOL = 1e-13
DEFAULT_PATTERN = ((0, 1), (2, 3))


class TilingError(ValueError):
    """A tiling violates one of its construction constraints."""


class TilingFormatError(TilingError):
    """A tiling document does not conform to the file format."""

    def __init__(self, message: str, locus: str = ""):
        self.locus = locus
        super().__init__(f"{locus}: {message}" if locus else message)


@dataclass(frozen=True)
class ColoredShape:
    shape: Shape
    color: int
    z: int = 0
    hole: bool = False

    def __post_init__(self):
        if self.color == UNCOLORED and not self.hole:
            raise TilingError("an uncolored shape must be flagged as a hole")
        if self.hole and self.color != UNCOLORED:
            raise TilingError("a hole must carry the UNCOLORED color")


@dataclass(frozen=True)
class Piece:
    """One lattice translate of a tiling shape, with everything the engines need."""

    index: int
    m: int
    n: int
    shape: Shape
    color: int
    rank: tuple
    circle: tuple[float, float, float]
    raw: tuple


def _point_cell_distance(lattice: Lattice, x: float, y: float) -> float:
    a, b = lattice.to_frac((x, y))
    if 0.0 <= a <= 1.0 and 0.0 <= b <= 1.0:
        return 0.0
    corners = lattice.corners()
    best = math.inf
    for i in range(4):
        p, q = corners[i], corners[(i + 1) % 4]
        dx, dy = q.x - p.x, q.y - p.y
        t = ((x - p.x) * dx + (y - p.y) * dy) / (dx * dx + dy * dy)
        t = min(1.0, max(0.0, t))
        best = min(best, math.hypot(x - p.x - t * dx, y - p.y - t * dy))
    return best


@dataclass(frozen=True)
class PeriodicTiling:
    lattice: Lattice
    shapes: tuple[ColoredShape, ...] = ()
    background: int = UNCOLORED
    color_count: int = 1
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "shapes", tuple(self.shapes))
        if self.color_count < 1:
            raise TilingError("colorCount must be at least 1")
        if self.background != UNCOLORED and not 0 <= self.background < self.color_count:
            raise TilingError(f"background color {self.background} outside 0..{self.color_count - 1}")
        for k, cs in enumerate(self.shapes):
            if cs.color != UNCOLORED and not 0 <= cs.color < self.color_count:
                raise TilingError(f"shape {k} color {cs.color} outside 0..{self.color_count - 1}")

    # -- neighbourhood bookkeeping -------------------------------------------------

    @cached_property
    def search_radius(self) -> int:
        cell = self.lattice.corners()
        ccx = sum(p.x for p in cell) / 4
        ccy = sum(p.y for p in cell) / 4
        reach = max(math.hypot(p.x - ccx, p.y - ccy) for p in cell)
        for cs in self.shapes:
            x, y, r = cs.shape.bounding_circle
            reach = max(reach, math.hypot(x - ccx, y - ccy) + r)
        return math.ceil(reach / self.lattice.min_height) + 1

    def rank(self, index: int) -> tuple:
        return (self.shapes[index].z, -index)

    def pieces_near_cell(self, margin: float) -> list[Piece]:
        """Translates whose bounding circle comes within ``margin`` of the cell, low rank first."""
        R = self.search_radius + math.ceil(margin / self.lattice.min_height)
        out = []
        for idx, cs in enumerate(self.shapes):
            x, y, r = cs.shape.bounding_circle
            for m in range(-R, R + 1):
                for n in range(-R, R + 1):
                    w = self.lattice.vector(m, n)
                    if _point_cell_distance(self.lattice, x + w.x, y + w.y) <= r + margin:
                        shape = cs.shape.translated(w.x, w.y) if (m or n) else cs.shape
                        out.append(Piece(idx, m, n, shape, cs.color, self.rank(idx),
                                         (x + w.x, y + w.y, r), shape.raw()))
        out.sort(key=lambda p: (p.rank, p.m, p.n))
        return out

    @cached_property
    def cover(self) -> list[Piece]:
        return self.pieces_near_cell(1e-9)

    @cached_property
    def neighborhood(self) -> list[Piece]:
        """Translates reachable by a unit step from inside the cell."""
        return self.pieces_near_cell(1.0 + 1e-9)

    # -- colour lookup -------------------------------------------------------------

    def color_at(self, p) -> int:
        q, _ = reduce_to_cell(self.lattice, p)
        for piece in reversed(self.cover):
            if piece.shape.contains(q):
                return piece.color
        return self.background

    def color_at_many(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        lat = self.lattice
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        d = lat.det
        a = np.floor((xs * lat.v.y - ys * lat.v.x) / d)
        b = np.floor((lat.u.x * ys - lat.u.y * xs) / d)
        qx = xs - a * lat.u.x - b * lat.v.x
        qy = ys - a * lat.u.y - b * lat.v.y
        out = np.full(xs.shape, self.background, dtype=np.int64)
        for piece in self.cover:
            cx, cy, r = piece.circle
            near = (qx - cx) ** 2 + (qy - cy) ** 2 <= (r + 1e-9) ** 2
            if not near.any():
                continue
            hit = near & _contains_many(piece.shape, qx, qy)
            out[hit] = piece.color
        return out

    # -- visible decomposition -----------------------------------------------------

    @cached_property
    def visible(self) -> list[tuple[Piece, list]]:
        """For each cell shape, the overlapping higher-ranked translates that hide parts of it.

        The visible part of shape ``i`` is its shape minus the union of the
        returned pieces, so visible parts of all translates are disjoint.
        """
        out = []
        reach = max((_point_cell_distance(self.lattice, *cs.shape.bounding_circle[:2]) + 2 * cs.shape.bounding_circle[2]
                     for cs in self.shapes), default=0.0)
        near = self.pieces_near_cell(reach + 1e-9)
        for idx in range(len(self.shapes)):
            base = next(p for p in near if p.index == idx and p.m == 0 and p.n == 0)
            above = []
            for p in near:
                if p is base:
                    continue
                higher = p.rank > base.rank or (p.index == idx and (p.m, p.n) > (0, 0))
                if not higher:
                    continue
                bx, by, br = base.circle
                px, py, pr = p.circle
                if math.hypot(bx - px, by - py) >= br + pr:
                    continue
                # shared edges of abutting tiles leave round-off slivers
                if intersection_area([base.raw, p.raw]) > OVERLAP_TOL:
                    above.append(p)
            out.append((base, above))
        return out

    def visible_area(self, index: int) -> float:
        base, above = self.visible[index]
        return inclusion_exclusion_area([base.raw], [(p.raw, p.circle) for p in above], [base.circle])


def _contains_many(shape: Shape, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    eps = 1e-12
    if isinstance(shape, ConvexPolygon):
        ok = np.ones(x.shape, dtype=bool)
        for nx, ny, h in shape.halfplanes:
            ok &= nx * x + ny * y - h <= eps
        return ok
    if isinstance(shape, Disk):
        return (x - shape.center.x) ** 2 + (y - shape.center.y) ** 2 <= shape.radius ** 2 + eps
    return _contains_many(shape.polygon, x, y) & _contains_many(shape.disk, x, y)


def inclusion_exclusion_area(base: list, extras: list, base_circles: list) -> float:
    """Area of ``(intersection of base) minus (union of extras)``.

    ``extras`` holds ``(raw, circle)`` pairs.  Subsets whose intersection is
    empty are pruned, which keeps the expansion small when the extras are
    mostly disjoint.
    """
    a0 = intersection_area(base)
    if a0 <= 0.0 or not extras:
        return a0
    live = []
    for raw, (x, y, r) in extras:
        if all(math.hypot(x - bx, y - by) < r + br for bx, by, br in base_circles):
            live.append((raw, (x, y, r)))
    if not live:
        return a0
    total = a0

    def walk(start, pieces, circles, sign):
        nonlocal total
        for k in range(start, len(live)):
            raw, (x, y, r) = live[k]
            if not all(math.hypot(x - cx, y - cy) < r + cr for cx, cy, cr in circles):
                continue
            sub = pieces + [raw]
            a = intersection_area(sub)
            if a <= 0.0:
                continue
            total += -sign * a
            walk(k + 1, sub, circles + [(x, y, r)], -sign)

    walk(0, list(base), list(base_circles), 1)
    return total


@dataclass(frozen=True)
class FullColoringReport:
    uncolored_density: float
    is_full: bool


def check_full_coloring(t: PeriodicTiling) -> FullColoringReport:
    """Uncolored area fraction, computed exactly from the visible decomposition."""
    A = t.lattice.cell_area
    covered = 0.0
    holes = 0.0
    for idx, cs in enumerate(t.shapes):
        a = t.visible_area(idx)
        covered += a
        if cs.hole:
            holes += a
    unc = holes
    if t.background == UNCOLORED:
        unc += max(0.0, A - covered)
    dens = min(1.0, max(0.0, unc / A))
    return FullColoringReport(dens, dens <= FULL_TOL)


# ---------------------------------------------------------------------------
# built-in families


def triangular_lattice(spacing: float) -> Lattice:
    return Lattice((spacing, 0.0), (spacing / 2, spacing * math.sqrt(3) / 2))


def make_hex_tiling(d: float, pattern: Sequence[Sequence[int]], color_count: Optional[int] = None,
                    uncolored: Sequence[int] = ()) -> PeriodicTiling:
    """Regular hexagons of vertex-to-vertex diameter ``d`` colored by a periodic pattern.

    Hexagon ``(i, j)`` sits at ``i*a*(1, 0) + j*a*(1/2, sqrt3/2)`` with
    ``a = d*sqrt3/2`` and takes color ``pattern[i % m][j % n]``.  Colors in
    ``uncolored`` become holes, which gives Pritikin-style partial colorings.
    """
    if not d > 0:
        raise TilingError("hexagon diameter must be positive")
    m = len(pattern)
    n = len(pattern[0]) if m else 0
    if m == 0 or n == 0 or any(len(row) != n for row in pattern):
        raise TilingError("pattern must be a non-empty rectangular matrix")
    used = {c for row in pattern for c in row}
    if color_count is None:
        color_count = max(used) + 1
    a = d * math.sqrt(3) / 2
    hu = Point(a, 0.0)
    hv = Point(a / 2, a * math.sqrt(3) / 2)
    shapes = []
    for i in range(m):
        for j in range(n):
            c = pattern[i][j]
            center = (i * hu.x + j * hv.x, i * hu.y + j * hv.y)
            hole = c in uncolored
            shapes.append(ColoredShape(regular_hexagon(center, a), UNCOLORED if hole else c,
                                       z=i * n + j, hole=hole))
    lattice = Lattice((m * hu.x, m * hu.y), (n * hv.x, n * hv.y))
    return PeriodicTiling(lattice, tuple(shapes), UNCOLORED, color_count,
                          meta={"family": "hex", "d": d, "pattern": [list(r) for r in pattern]})


def make_hex4(d: float, pattern: Sequence[Sequence[int]] = DEFAULT_PATTERN) -> PeriodicTiling:
    """Four-colored regular hexagon tiling with diameter ``d`` in (1, 2)."""
    if not 1.0 < d < 2.0:
        raise TilingError(f"hex4 diameter must lie in (1, 2), got {d}")
    if {c for row in pattern for c in row} != {0, 1, 2, 3}:
        raise TilingError("hex4 pattern must use exactly the colors 0, 1, 2, 3")
    t = make_hex_tiling(d, pattern, 4)
    t.meta["family"] = "hex4"
    return t


def common_sublattice(a: Lattice, b: Lattice, max_den: int = 24, tol: float = 1e-9) -> Lattice:
    """Coarsest lattice contained in both ``a`` and ``b``.

    Raises ``TilingError`` when the two are not commensurable with
    denominators up to ``max_den``.
    """
    # express b's basis in a's coordinates: b_k = M[0][k] a.u + M[1][k] a.v
    cols = [a.to_frac(b.u), a.to_frac(b.v)]
    M = [[None, None], [None, None]]
    for k, (x, y) in enumerate(cols):
        for r, val in enumerate((x, y)):
            f = Fraction(val).limit_denominator(max_den)
            if abs(float(f) - val) > tol:
                raise TilingError(
                    f"lattices are not commensurable: base u={tuple(a.u)} v={tuple(a.v)}, "
                    f"overlay u={tuple(b.u)} v={tuple(b.v)}")
            M[r][k] = f
    N = math.lcm(*(f.denominator for row in M for f in row))
    # integer vectors k with M k integral span b ∩ a (in b coordinates)
    valid = []
    for k1 in range(-N, N + 1):
        for k2 in range(-N, N + 1):
            if (k1, k2) == (0, 0):
                continue
            if all((M[r][0] * k1 + M[r][1] * k2).denominator == 1 for r in range(2)):
                valid.append((k1, k2))
    valid.sort(key=lambda k: (abs(k[0]) + abs(k[1]), k))
    best = None
    for p, q in itertools.combinations(valid[:200], 2):
        det = abs(p[0] * q[1] - p[1] * q[0])
        if det and (best is None or det < best[0]):
            best = (det, p, q)
    _, p, q = best
    u = b.vector(*p)
    v = b.vector(*q)
    if u.x * v.y - u.y * v.x < 0:
        u, v = v, u
    return _reduced(Lattice(u, v))


def _reduced(lat: Lattice) -> Lattice:
    """Lagrange-Gauss reduction of a 2D basis."""
    u, v = lat.u, lat.v
    for _ in range(100):
        if u.x ** 2 + u.y ** 2 > v.x ** 2 + v.y ** 2:
            u, v = v, u
        mu = round((u.x * v.x + u.y * v.y) / (u.x ** 2 + u.y ** 2))
        if mu == 0:
            break
        v = Point(v.x - mu * u.x, v.y - mu * u.y)
    if u.x * v.y - u.y * v.x < 0:
        v = Point(-v.x, -v.y)
    return Lattice(u, v)


def _coset_shifts(sub: Lattice, lat: Lattice) -> list[Point]:
    """Vectors of ``lat`` representing its cosets modulo ``sub``."""
    index = round(sub.cell_area / lat.cell_area)
    R = math.ceil((math.hypot(*sub.u) + math.hypot(*sub.v)) / lat.min_height) + 2
    seen = {}
    for m in range(-R, R + 1):
        for n in range(-R, R + 1):
            w = lat.vector(m, n)
            q, _ = reduce_to_cell(sub, w)
            key = (round(q.x, 9), round(q.y, 9))
            seen.setdefault(key, q)
    reps = sorted(seen.values())
    # merge keys that only differ through the cell boundary wrap-around
    out = []
    for q in reps:
        if not any(_same_mod(sub, q, r) for r in out):
            out.append(q)
    if len(out) != index:
        raise TilingError(f"coset enumeration found {len(out)} translates, expected {index}")
    return out


def _same_mod(lat: Lattice, p: Point, q: Point) -> bool:
    a, b = lat.to_frac((p.x - q.x, p.y - q.y))
    return abs(a - round(a)) < 1e-7 and abs(b - round(b)) < 1e-7


def compose(base: PeriodicTiling, overlay_lattice: Lattice, overlay_shapes: Sequence[ColoredShape],
            color_count: int) -> PeriodicTiling:
    """Superimpose a periodic overlay on ``base`` over their common sublattice."""
    lat = common_sublattice(base.lattice, overlay_lattice)
    shapes = []
    for w in _coset_shifts(lat, base.lattice):
        shapes.extend(ColoredShape(cs.shape.translated(w.x, w.y), cs.color, cs.z, cs.hole) for cs in base.shapes)
    for w in _coset_shifts(lat, overlay_lattice):
        shapes.extend(ColoredShape(cs.shape.translated(w.x, w.y), cs.color, cs.z, cs.hole) for cs in overlay_shapes)
    return PeriodicTiling(lat, tuple(shapes), base.background, color_count, meta=dict(base.meta))


def _overlay(base: Optional[PeriodicTiling], lattice: Lattice, tile: Shape, color: Optional[int],
             offset, family: str, density: float) -> PeriodicTiling:
    if color is None:
        color = base.color_count if base is not None else 0
    ox, oy = offset
    z = 1 + max((cs.z for cs in base.shapes), default=0) if base is not None else 0
    shapes = (ColoredShape(tile.translated(ox, oy), color, z),)
    if base is None:
        t = PeriodicTiling(lattice, shapes, UNCOLORED, color + 1)
    else:
        t = compose(base, lattice, shapes, max(base.color_count, color + 1))
    t.meta.update({"overlay": family, "overlay_density": density, "overlay_lattice": lattice,
                   "overlay_tile": tile})
    return t


def disk_overlay_lattice(spacing: float = 2.0) -> Lattice:
    return triangular_lattice(spacing)


def overlay_disks(base: Optional[PeriodicTiling], spacing: float = 2.0, radius: float = 0.5,
                  color: Optional[int] = None, offset=(0.0, 0.0)) -> PeriodicTiling:
    """Paint disks on a triangular lattice above ``base`` (or alone when ``base`` is None)."""
    if not radius > 0:
        raise TilingError("disk radius must be positive")
    if 2 * radius > 1 + 1e-12:
        raise TilingError(f"disk diameter 2*radius={2 * radius} exceeds 1")
    if spacing - 2 * radius < 1 - 1e-12:
        raise TilingError(f"gap spacing-2*radius={spacing - 2 * radius} is below 1")
    lat = triangular_lattice(spacing)
    density = math.pi * radius ** 2 / lat.cell_area
    return _overlay(base, lat, Disk((0.0, 0.0), radius), color, offset, "disks", density)


def croft_tile(hex_width: float) -> Shape:
    """Regular hexagon (vertex up) of across-flats width ``hex_width`` cut by a concentric unit-diameter disk."""
    disk = Disk((0.0, 0.0), 0.5)
    if hex_width >= 1.0:
        return disk
    if hex_width <= 0:
        raise TilingError("hexWidth must be positive")
    return Intersection(regular_hexagon((0.0, 0.0), hex_width), disk)


def croft_margins(hex_width: float, spacing: float) -> tuple[float, float]:
    """``(1 - diameter, distance - 1)``; both must be non-negative for a feasible tile packing.

    The tile ``K`` is symmetric about the origin, so the gap between ``K``
    and ``K + w`` is ``2 * dist(-w/2, K)``, which is computed exactly.
    """
    tile = croft_tile(hex_width)
    lat = triangular_lattice(spacing)
    diam = tile.diameter()
    dist = math.inf
    for m, n in ((1, 0), (0, 1), (-1, 1)):
        w = lat.vector(m, n)
        dist = min(dist, 2.0 * point_distance(tile, (-w.x / 2, -w.y / 2)))
    return 1.0 - diam, dist - 1.0


def croft_density(hex_width: float, spacing: float) -> float:
    return croft_tile(hex_width).area() / triangular_lattice(spacing).cell_area


def overlay_croft(base: Optional[PeriodicTiling], hex_width: float, spacing: float,
                  color: Optional[int] = None, offset=(0.0, 0.0)) -> PeriodicTiling:
    """Paint Croft tiles (rounded 12-gons) on a triangular lattice above ``base``."""
    diam_margin, dist_margin = croft_margins(hex_width, spacing)
    if diam_margin < -1e-12:
        raise TilingError(f"tile diameter exceeds 1 by {-diam_margin:.3g}")
    if dist_margin < -1e-12:
        raise TilingError(f"tile distance falls short of 1 by {-dist_margin:.3g}")
    tile = croft_tile(hex_width)
    return _overlay(base, triangular_lattice(spacing), tile, color, offset, "croft",
                    croft_density(hex_width, spacing))


# ---------------------------------------------------------------------------
# file format

_SHAPE_FIELDS = {
    "polygon": {"type", "color", "z", "vertices"},
    "disk": {"type", "color", "z", "center", "radius"},
    "intersection": {"type", "color", "z", "vertices", "center", "radius"},
}
_TOP_FIELDS = {"lattice", "colorCount", "background", "shapes"}


def _num(value, locus: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise TilingFormatError("expected a number", locus)
    if not math.isfinite(value):
        raise TilingFormatError("number must be finite", locus)
    return float(value)


def _pair(value, locus: str) -> tuple[float, float]:
    if not isinstance(value, list) or len(value) != 2:
        raise TilingFormatError("expected [x, y]", locus)
    return _num(value[0], f"{locus}[0]"), _num(value[1], f"{locus}[1]")


def _int(value, locus: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TilingFormatError("expected an integer", locus)
    return value


def _check_fields(obj, allowed: set, required: set, locus: str) -> None:
    if not isinstance(obj, dict):
        raise TilingFormatError("expected an object", locus)
    unknown = set(obj) - allowed
    if unknown:
        raise TilingFormatError(f"unknown field(s) {sorted(unknown)}", locus)
    missing = required - set(obj)
    if missing:
        raise TilingFormatError(f"missing field(s) {sorted(missing)}", locus)


def tiling_from_dict(doc: dict) -> PeriodicTiling:
    _check_fields(doc, _TOP_FIELDS, _TOP_FIELDS, "$")
    lat = doc["lattice"]
    _check_fields(lat, {"u", "v"}, {"u", "v"}, "lattice")
    try:
        lattice = Lattice(_pair(lat["u"], "lattice.u"), _pair(lat["v"], "lattice.v"))
    except ValueError as exc:
        if isinstance(exc, TilingFormatError):
            raise
        raise TilingFormatError(str(exc), "lattice") from None
    count = _int(doc["colorCount"], "colorCount")
    if count < 1:
        raise TilingFormatError("must be at least 1", "colorCount")

    def color(value, locus, allow_unc):
        if value == "uncolored" and allow_unc:
            return UNCOLORED
        c = _int(value, locus)
        if not 0 <= c < count:
            raise TilingFormatError(f"color id {c} outside 0..{count - 1}", locus)
        return c

    background = color(doc["background"], "background", True)
    if not isinstance(doc["shapes"], list):
        raise TilingFormatError("expected an array", "shapes")
    shapes = []
    for k, item in enumerate(doc["shapes"]):
        locus = f"shapes[{k}]"
        if not isinstance(item, dict) or item.get("type") not in _SHAPE_FIELDS:
            raise TilingFormatError('type must be "polygon", "disk" or "intersection"', f"{locus}.type")
        allowed = _SHAPE_FIELDS[item["type"]]
        _check_fields(item, allowed, allowed - {"z"}, locus)
        c = color(item["color"], f"{locus}.color", True)
        z = _int(item.get("z", 0), f"{locus}.z")
        try:
            poly = disk = None
            if "vertices" in item:
                if not isinstance(item["vertices"], list):
                    raise TilingFormatError("expected an array of [x, y]", f"{locus}.vertices")
                poly = ConvexPolygon(tuple(_pair(v, f"{locus}.vertices[{i}]")
                                           for i, v in enumerate(item["vertices"])))
            if "center" in item:
                disk = Disk(_pair(item["center"], f"{locus}.center"), _num(item["radius"], f"{locus}.radius"))
            shape = poly if disk is None else disk if poly is None else Intersection(poly, disk)
        except TilingFormatError:
            raise
        except ValueError as exc:
            raise TilingFormatError(str(exc), locus) from None
        shapes.append(ColoredShape(shape, c, z, hole=c == UNCOLORED))
    return PeriodicTiling(lattice, tuple(shapes), background, count)


def load_tiling(document: str) -> PeriodicTiling:
    """Parse a tiling document (JSON text)."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise TilingFormatError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return tiling_from_dict(doc)


def read_tiling(path) -> PeriodicTiling:
    with open(path, encoding="utf-8") as fh:
        return load_tiling(fh.read())


def tiling_to_dict(t: PeriodicTiling) -> dict:
    shapes = []
    for cs in t.shapes:
        s = cs.shape
        item = {"type": None, "color": "uncolored" if cs.color == UNCOLORED else cs.color, "z": cs.z}
        poly = s.polygon if isinstance(s, Intersection) else s if isinstance(s, ConvexPolygon) else None
        disk = s.disk if isinstance(s, Intersection) else s if isinstance(s, Disk) else None
        item["type"] = "intersection" if poly and disk else "polygon" if poly else "disk"
        if poly is not None:
            item["vertices"] = [[p.x, p.y] for p in poly.vertices]
        if disk is not None:
            item["center"] = [disk.center.x, disk.center.y]
            item["radius"] = disk.radius
        shapes.append(item)
    return {
        "lattice": {"u": list(t.lattice.u), "v": list(t.lattice.v)},
        "colorCount": t.color_count,
        "background": "uncolored" if t.background == UNCOLORED else t.background,
        "shapes": shapes,
    }


def save_tiling(t: PeriodicTiling) -> str:
    return json.dumps(tiling_to_dict(t), indent=1)

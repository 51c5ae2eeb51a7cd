"""Monochromatic unit-edge probability and color densities of periodic tilings.

Two quadrature routes and one sampler are provided:

* ``overlap`` (default): for each direction ``phi`` the area of
  ``{sigma in cell : color(sigma) == color(sigma + e_phi)}`` is computed
  exactly from pairwise intersections of visible tile parts; the remaining
  one-dimensional integral over ``phi`` is done by adaptive Gauss-Kronrod.
* ``sigma``: the inner integral over ``phi`` is done exactly per point (arc
  splitting with midpoint color probes) and the outer integral over the
  cell by an adaptive quadtree.  Slow, used as an independent check.
* Monte Carlo with a counter-based generator keyed by ``(seed, chunk)``.
"""
from __future__ import annotations

import heapq
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .geometry import TWO_PI, reduce_to_cell, shift_raw
from .tiling import (
    UNCOLORED,
    PeriodicTiling,
    check_full_coloring,
    inclusion_exclusion_area,
)

DEFAULT_TOL = 1e-6
MAX_DEPTH = 14
MAX_PANELS = 2000
MC_CHUNK = 1 << 18
MC_Z = 2.5758293035489004  # two-sided 99% normal quantile

# Gauss-Kronrod 7/15 nodes on [-1, 1]
_XGK = (0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.0)
_WGK = (0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714)
_WG = (0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
       0.381830050505118944950369775488975, 0.417959183673469387755102040816327)


class ConvergenceError(RuntimeError):
    """Adaptive quadrature hit its depth limit before reaching the tolerance."""

    def __init__(self, message: str, partial: "ProbEstimate"):
        super().__init__(message)
        self.partial = partial


class PartialColoringError(ValueError):
    """A probability was requested for a coloring that leaves area uncolored."""


@dataclass(frozen=True)
class ProbEstimate:
    value: float
    error_bound: float
    method: str
    samples_or_cells: int
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"probability {self.value} outside [0, 1]")
        if self.error_bound < 0.0:
            raise ValueError("negative error bound")

    @property
    def conservative_upper(self) -> float:
        return self.value + self.error_bound


@dataclass(frozen=True)
class DensityReport:
    per_color: dict
    uncolored: float
    method: str = "exact"
    error_bound: float = 0.0


# ---------------------------------------------------------------------------
# inner integral at a point


def _local_pieces(t: PeriodicTiling, q):
    out = []
    for piece in t.neighborhood:
        x, y, r = piece.circle
        if math.hypot(x - q[0], y - q[1]) <= 1.0 + r + 1e-9:
            out.append(piece)
    return out


def _local_color(pieces, x, y, background):
    for piece in reversed(pieces):
        if piece.shape.contains((x, y)):
            return piece.color
    return background


def mono_angular_measure(t: PeriodicTiling, sigma) -> float:
    """Measure of directions ``phi`` for which the unit edge from ``sigma`` is monochromatic.

    UNCOLORED matches nothing, itself included.
    """
    q, _ = reduce_to_cell(t.lattice, sigma)
    pieces = _local_pieces(t, q)
    own = _local_color(pieces, q.x, q.y, t.background)
    if own == UNCOLORED:
        return 0.0
    cuts = {0.0, TWO_PI}
    for piece in pieces:
        cuts.update(piece.shape.circle_angles(q).endpoints())
    cuts = sorted(cuts)
    total = 0.0
    for a, b in zip(cuts, cuts[1:]):
        if b - a <= 0.0:
            continue
        mid = 0.5 * (a + b)
        if _local_color(pieces, q.x + math.cos(mid), q.y + math.sin(mid), t.background) == own:
            total += b - a
    return total


# ---------------------------------------------------------------------------
# overlap route


class _OverlapModel:
    """``G(phi) = area{sigma in cell : color(sigma) == color(sigma + e_phi)}``."""

    def __init__(self, t: PeriodicTiling):
        self.t = t
        self.area = t.lattice.cell_area
        self.cells = []
        visible_by_index = {}
        for base, above in t.visible:
            visible_by_index[base.index] = [(p.raw, p.circle) for p in above]
        self.visible_areas = [t.visible_area(i) for i in range(len(t.shapes))]
        bg = t.background
        self.bg_colored = bg != UNCOLORED and len(t.shapes) > 0
        # partners (j, translate) that can meet shape i after a unit shift
        for base, _ in t.visible:
            bx, by, br = base.circle
            partners = []
            for p in t.pieces_near_cell(self._reach()):
                if not self.bg_colored and (p.color != base.color or p.color == UNCOLORED):
                    continue
                px, py, pr = p.circle
                if math.hypot(px - bx, py - by) > br + pr + 1.0 + 1e-9:
                    continue
                w = t.lattice.vector(p.m, p.n)
                above = [(shift_raw(raw, w.x, w.y), (cx + w.x, cy + w.y, cr))
                         for raw, (cx, cy, cr) in visible_by_index[p.index]]
                partners.append((p, above))
            self.cells.append((base, visible_by_index[base.index], partners))

    def _reach(self) -> float:
        t = self.t
        rmax = max((cs.shape.bounding_circle[2] for cs in t.shapes), default=0.0)
        from .tiling import _point_cell_distance

        off = max((_point_cell_distance(t.lattice, *cs.shape.bounding_circle[:2]) for cs in t.shapes), default=0.0)
        return off + 2 * rmax + 1.0 + 1e-9

    def __call__(self, phi: float) -> float:
        ex, ey = math.cos(phi), math.sin(phi)
        same = 0.0
        cross_all = 0.0
        cross_i_bg = 0.0
        cross_j_bg = 0.0
        bg = self.t.background
        for base, above_i, partners in self.cells:
            bx, by, br = base.circle
            for p, above_j in partners:
                px, py, pr = p.circle
                if math.hypot(px - ex - bx, py - ey - by) >= br + pr:
                    continue
                shifted = shift_raw(p.raw, -ex, -ey)
                extras = list(above_i)
                extras.extend((shift_raw(raw, -ex, -ey), (cx - ex, cy - ey, cr)) for raw, (cx, cy, cr) in above_j)
                x = inclusion_exclusion_area([base.raw, shifted], extras,
                                             [base.circle, (px - ex, py - ey, pr)])
                if x == 0.0:
                    continue
                if p.color == base.color and p.color != UNCOLORED:
                    same += x
                if self.bg_colored:
                    cross_all += x
                    if base.color == bg:
                        cross_i_bg += x
                    if p.color == bg:
                        cross_j_bg += x
        if self.bg_colored:
            U = sum(self.visible_areas)
            Ub = sum(a for a, cs in zip(self.visible_areas, self.t.shapes) if cs.color == bg)
            same += self.area - 2 * U + cross_all + (Ub - cross_i_bg) + (Ub - cross_j_bg)
        elif bg != UNCOLORED:
            same = self.area
        return same


def _gk15(f, a, b):
    """G7/K15 on one panel; error estimate follows the QUADPACK heuristic.

    The bare difference ``|K - G|`` under-reports panels containing a kink of
    the integrand, so it is scaled by ``resasc * min(1, (200 |K-G| / resasc)^1.5)``
    where ``resasc`` measures the variation of ``f`` about its mean.
    """
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = f(c)
    pairs = []
    resk = fc * _WGK[7]
    resg = fc * _WG[3]
    for k in range(7):
        dx = h * _XGK[k]
        f1, f2 = f(c - dx), f(c + dx)
        pairs.append((f1, f2))
        resk += _WGK[k] * (f1 + f2)
        if k % 2 == 1:
            resg += _WG[k // 2] * (f1 + f2)
    mean = 0.5 * resk
    resasc = _WGK[7] * abs(fc - mean) + sum(_WGK[k] * (abs(f1 - mean) + abs(f2 - mean))
                                              for k, (f1, f2) in enumerate(pairs))
    resasc *= abs(h)
    err = abs((resk - resg) * h)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    return resk * h, err


def adaptive_gk(f, a: float, b: float, tol: float, initial_panels: int = 12, max_depth: int = MAX_DEPTH,
                max_panels: int = MAX_PANELS):
    """Globally adaptive Gauss-Kronrod on ``[a, b]``.

    The panel with the largest error estimate is bisected until the summed
    estimate drops to ``tol``.  The refinement sequence does not depend on
    ``tol``, so a smaller ``tol`` only continues it and never reports a
    larger error.  Refinement also stops once ``max_panels`` panels exist,
    which bounds the work when ``tol`` is below the round-off floor.
    Returns ``(value, error, panels, converged)``.
    """
    width = b - a
    heap = []
    edges = [a + width * k / initial_panels for k in range(initial_panels + 1)]
    for lo, hi in zip(edges, edges[1:]):
        val, err = _gk15(f, lo, hi)
        heapq.heappush(heap, (-err, lo, hi, 0, val))
    capped = []
    total = sum(-item[0] for item in heap)
    while heap and total > tol and len(heap) + len(capped) < max_panels:
        neg, lo, hi, depth, val = heapq.heappop(heap)
        if depth >= max_depth:
            capped.append((lo, val, -neg))
            continue
        total += neg
        mid = 0.5 * (lo + hi)
        for x0, x1 in ((lo, mid), (mid, hi)):
            v, e = _gk15(f, x0, x1)
            total += e
            heapq.heappush(heap, (-e, x0, x1, depth + 1, v))
    done = sorted([(lo, val, -neg) for neg, lo, _, _, val in heap] + capped)
    err = sum(e for _, _, e in done)
    return sum(v for _, v, _ in done), err, len(done), err <= tol


def _require_full(t: PeriodicTiling, allow_partial: bool) -> None:
    if allow_partial:
        return
    report = check_full_coloring(t)
    if not report.is_full:
        raise PartialColoringError(
            f"tiling leaves {report.uncolored_density:.6g} of the plane uncolored; "
            "pass allow_partial to treat UNCOLORED as non-matching")


def p_quadrature(t: PeriodicTiling, tol: float = DEFAULT_TOL, allow_partial: bool = False,
                 method: str = "overlap", max_depth: int = MAX_DEPTH) -> ProbEstimate:
    """Probability that a random unit edge is monochromatic, by deterministic quadrature.

    ``tol`` is the target absolute error on the probability; ``error_bound``
    of the result is the summed panel error estimate, not a certified
    enclosure.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    _require_full(t, allow_partial)
    if method == "overlap":
        return _p_overlap(t, tol, max_depth)
    if method == "sigma":
        return _p_sigma(t, tol, max_depth)
    raise ValueError(f"unknown quadrature method {method!r}")


def _p_overlap(t: PeriodicTiling, tol: float, max_depth: int) -> ProbEstimate:
    A = t.lattice.cell_area
    if not t.shapes:
        v = 1.0 if t.background != UNCOLORED else 0.0
        return ProbEstimate(v, 0.0, "quadrature", 0, {"route": "overlap"})
    G = _OverlapModel(t)
    # G(phi + pi) == G(phi), so half a turn suffices: p = (1 / (pi A)) int_0^pi G
    scale = 1.0 / (math.pi * A)
    val, err, panels, ok = adaptive_gk(G, 0.0, math.pi, tol / scale, max_depth=max_depth)
    value = min(1.0, max(0.0, val * scale))
    est = ProbEstimate(value, err * scale, "quadrature", panels,
                       {"route": "overlap", "tol": tol, "rule": "GK15", "max_depth": max_depth})
    if not ok:
        raise ConvergenceError(
            f"overlap quadrature did not reach tol={tol} within depth {max_depth} and {MAX_PANELS} panels", est)
    return est


def _p_sigma(t: PeriodicTiling, tol: float, max_depth: int, max_panels: int = 200_000) -> ProbEstimate:
    """Quadtree over fractional cell coordinates; greedy refinement of the worst panel."""
    lat = t.lattice
    norm = 1.0 / TWO_PI

    def m_at(a, b):
        return mono_angular_measure(t, (a * lat.u.x + b * lat.v.x, a * lat.u.y + b * lat.v.y)) * norm

    def panel(a0, b0, size, depth, centre=None):
        h = size / 2
        c = centre if centre is not None else m_at(a0 + h, b0 + h)
        q = h / 2
        subs = [m_at(a0 + q, b0 + q), m_at(a0 + 3 * q, b0 + q),
                m_at(a0 + q, b0 + 3 * q), m_at(a0 + 3 * q, b0 + 3 * q)]
        frac = size * size
        est = frac * sum(subs) / 4
        err = frac * abs(c - sum(subs) / 4)
        return (-err, a0, b0, size, depth, est, subs)

    heap = [panel(0.0, 0.0, 1.0, 0)]
    total_err = -heap[0][0]
    panels = 1
    capped_err = 0.0
    capped_val = 0.0
    while heap and total_err + capped_err > tol:
        neg_err, a0, b0, size, depth, est, subs = heapq.heappop(heap)
        total_err += neg_err
        if depth >= max_depth:
            capped_err += -neg_err
            capped_val += est
            continue
        h = size / 2
        for k, (da, db) in enumerate(((0, 0), (h, 0), (0, h), (h, h))):
            child = panel(a0 + da, b0 + db, h, depth + 1, subs[k])
            total_err += -child[0]
            heapq.heappush(heap, child)
        panels += 3
        if panels > max_panels:
            break
    value = capped_val + sum(item[5] for item in heap)
    err = total_err + capped_err
    est = ProbEstimate(min(1.0, max(0.0, value)), max(0.0, err), "quadrature", panels,
                       {"route": "sigma", "tol": tol, "max_depth": max_depth})
    if err > tol:
        raise ConvergenceError(f"sigma quadrature stalled at error {err:.3g} > tol {tol}", est)
    return est


# ---------------------------------------------------------------------------
# Monte Carlo


def _mc_chunk(t: PeriodicTiling, seed: int, chunk: int, size: int) -> int:
    rng = np.random.Generator(np.random.Philox(key=np.array([seed, chunk], dtype=np.uint64)))
    a = rng.random(size)
    b = rng.random(size)
    phi = rng.random(size) * TWO_PI
    lat = t.lattice
    x = a * lat.u.x + b * lat.v.x
    y = a * lat.u.y + b * lat.v.y
    c0 = t.color_at_many(x, y)
    c1 = t.color_at_many(x + np.cos(phi), y + np.sin(phi))
    return int(np.count_nonzero((c0 == c1) & (c0 != UNCOLORED)))


def p_monte_carlo(t: PeriodicTiling, n: int, seed: int = 0, allow_partial: bool = False,
                  threads: int = 1, chunk_size: int = MC_CHUNK) -> ProbEstimate:
    """Hit fraction of ``n`` random unit edges; error is the 99% normal half-width."""
    if n <= 0:
        raise ValueError("sample count must be positive")
    _require_full(t, allow_partial)
    sizes = [chunk_size] * (n // chunk_size)
    if n % chunk_size:
        sizes.append(n % chunk_size)
    jobs = list(enumerate(sizes))
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            hits = list(pool.map(lambda job: _mc_chunk(t, seed, job[0], job[1]), jobs))
    else:
        hits = [_mc_chunk(t, seed, k, s) for k, s in jobs]
    value = sum(hits) / n
    sigma = math.sqrt(value * (1.0 - value) / n)
    return ProbEstimate(value, MC_Z * sigma, "monteCarlo", n,
                        {"seed": seed, "sigma": sigma, "confidence": 0.99})


def mc_sigma(est: ProbEstimate) -> float:
    return est.info.get("sigma", est.error_bound / MC_Z)


# ---------------------------------------------------------------------------
# densities


def overlay_density(t: PeriodicTiling) -> DensityReport:
    """Area fraction of each color per fundamental cell (exact, from visible parts)."""
    A = t.lattice.cell_area
    per = {c: 0.0 for c in range(t.color_count)}
    covered = 0.0
    holes = 0.0
    for idx, cs in enumerate(t.shapes):
        a = t.visible_area(idx)
        covered += a
        if cs.hole:
            holes += a
        else:
            per[cs.color] += a / A
    rest = max(0.0, 1.0 - covered / A)
    uncolored = holes / A
    if t.background == UNCOLORED:
        uncolored += rest
    else:
        per[t.background] += rest
    return DensityReport(per, uncolored)


def density_monte_carlo(t: PeriodicTiling, n: int, seed: int = 0) -> tuple[dict, dict]:
    """Hit-count estimate of color densities; returns ``(fractions, sigmas)`` keyed by color."""
    rng = np.random.Generator(np.random.Philox(key=np.array([seed, 1 << 32], dtype=np.uint64)))
    counts: dict = {}
    done = 0
    while done < n:
        size = min(MC_CHUNK * 4, n - done)
        a = rng.random(size)
        b = rng.random(size)
        lat = t.lattice
        c = t.color_at_many(a * lat.u.x + b * lat.v.x, a * lat.u.y + b * lat.v.y)
        vals, cnt = np.unique(c, return_counts=True)
        for v, k in zip(vals.tolist(), cnt.tolist()):
            counts[v] = counts.get(v, 0) + k
        done += size
    frac = {k: v / n for k, v in counts.items()}
    sig = {k: math.sqrt(f * (1 - f) / n) for k, f in frac.items()}
    return frac, sig

"""Derivative-free tuning of tiling parameters and the end-to-end bound pipelines."""
from __future__ import annotations

import itertools
import logging
import math
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .bounds import (
    BoundChain,
    EdgeBound,
    VertexBound,
    edges_floor,
    edges_from_probability,
    lemma_compose,
    max_edges,
    min_vertices_erdos,
    min_vertices_from_edges,
    pritikin_vertices,
)
from .probability import DEFAULT_TOL, PartialColoringError, ProbEstimate, p_quadrature
from .tiling import (
    DEFAULT_PATTERN,
    PeriodicTiling,
    TilingError,
    check_full_coloring,
    croft_density,
    croft_margins,
    load_tiling,
    make_hex4,
    overlay_croft,
    overlay_disks,
)

log = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
COARSE_TOL = 1e-8
D_RANGE = (1.05, 1.25)
CROFT_BOX = ((0.85, 1.0), (1.85, 2.05))
SNAP_DENOMINATOR = 1000
SNAP_TOL = 1e-12


class OptimizationError(RuntimeError):
    pass


@dataclass
class OptimizationResult:
    params: list
    objective: float
    evals: int
    trace: list = field(default_factory=list)
    info: dict = field(default_factory=dict)


def golden_section(f: Callable[[float], float], lo: float, hi: float, tol: float) -> OptimizationResult:
    """Golden-section search for a local minimum of ``f`` on ``[lo, hi]``.

    Stops once the bracket is narrower than ``tol``; returns the best point
    evaluated, which lies inside the final bracket.
    """
    if not lo < hi:
        raise ValueError("need lo < hi")
    trace = []

    def call(x):
        try:
            y = f(x)
        except Exception as exc:
            raise OptimizationError(f"objective failed at x={x!r}: {exc}") from exc
        trace.append(([x], y))
        return y

    a, b = lo, hi
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = call(x1), call(x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = call(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = call(x2)
    best_x, best_f = (x1, f1) if f1 <= f2 else (x2, f2)
    return OptimizationResult([best_x], best_f, len(trace), trace, {"bracket": (a, b)})


def grid_refine(f: Callable[[Sequence[float]], float], box: Sequence[Sequence[float]],
                points_per_dim: int = 9, levels: int = 8) -> OptimizationResult:
    """Nested grid search.

    Each level evaluates a full grid on the current box and recentres a box
    of two grid spacings per side around the incumbent (clipped to the
    original box).  Points whose construction raises ``TilingError`` are
    skipped.
    """
    if points_per_dim < 3:
        raise ValueError("points_per_dim must be at least 3")
    box = [tuple(map(float, b)) for b in box]
    if any(not lo <= hi for lo, hi in box):
        raise ValueError("empty box")
    outer = list(box)
    trace = []
    skipped = 0
    best = None
    for _ in range(levels):
        axes = [[lo + (hi - lo) * i / (points_per_dim - 1) for i in range(points_per_dim)] for lo, hi in box]
        for point in itertools.product(*axes):
            try:
                y = f(point)
            except TilingError as exc:
                skipped += 1
                log.debug("skipping infeasible point %s: %s", point, exc)
                continue
            trace.append((list(point), y))
            if best is None or y < best[1]:
                best = (list(point), y)
        if best is None:
            raise OptimizationError("no feasible point in the search box")
        new_box = []
        for (lo, hi), (olo, ohi), x in zip(box, outer, best[0]):
            h = (hi - lo) / (points_per_dim - 1)
            new_box.append((max(olo, x - h), min(ohi, x + h)))
        box = new_box
    return OptimizationResult(best[0], best[1], len(trace), trace, {"skipped": skipped, "final_box": box})


# ---------------------------------------------------------------------------
# pipelines


@dataclass
class PipelineReport:
    k: int
    tilings: dict
    estimates: dict
    edge_bound: Optional[EdgeBound]
    vertex_bound: VertexBound
    chain: BoundChain
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        est = {}
        for key, val in self.estimates.items():
            if isinstance(val, ProbEstimate):
                est[key] = {"value": val.value, "errorBound": val.error_bound,
                            "conservativeUpper": val.conservative_upper, "method": val.method,
                            "samplesOrCells": val.samples_or_cells}
            else:
                est[key] = val
        return {
            "k": self.k,
            "tilings": self.tilings,
            "estimates": est,
            "e": self.edge_bound.e_min if self.edge_bound else None,
            "v": self.vertex_bound.v_min,
            "chain": self.chain.as_dict(),
            "extra": self.extra,
        }


def hex4_objective(tol: float = COARSE_TOL, pattern=DEFAULT_PATTERN) -> Callable[[float], float]:
    def f(d):
        return p_quadrature(make_hex4(d, pattern), tol).value
    return f


def optimize_hex4(d_range=D_RANGE, tol: float = COARSE_TOL, prescan: int = 21, d_tol: float = 1e-5,
                  pattern=DEFAULT_PATTERN) -> OptimizationResult:
    """Grid pre-scan over ``d_range`` followed by golden-section in the best grid bracket."""
    lo, hi = d_range
    f = hex4_objective(tol, pattern)
    grid = [lo + (hi - lo) * i / (prescan - 1) for i in range(prescan)]
    values = []
    for d in grid:
        try:
            values.append(f(d))
        except TilingError:
            values.append(math.inf)
    k = min(range(prescan), key=lambda i: values[i])
    if values[k] == math.inf:
        raise OptimizationError("no feasible diameter in range")
    a = grid[max(0, k - 1)]
    b = grid[min(prescan - 1, k + 1)]
    res = golden_section(f, a, b, d_tol)
    prescan_trace = [([d], v) for d, v in zip(grid, values)]
    res.trace = prescan_trace + res.trace
    res.evals += prescan
    res.info.update({"prescan": prescan, "coarse_tol": tol})
    if values[k] < res.objective:
        res.params, res.objective = [grid[k]], values[k]
    return res


def pipeline_k5(d_range=D_RANGE, tol: float = DEFAULT_TOL, coarse_tol: float = COARSE_TOL,
                pattern=DEFAULT_PATTERN, erdos: bool = False, d: Optional[float] = None) -> PipelineReport:
    """e_5 and v_5 from the best four-colored hexagon tiling."""
    chain = BoundChain()
    if d is None:
        opt = optimize_hex4(d_range, coarse_tol, pattern=pattern)
        d = opt.params[0]
        chain.add("optimize", {"family": "hex4", "range": list(d_range), "coarse_tol": coarse_tol,
                               "evals": opt.evals}, d)
    else:
        opt = None
    p4 = p_quadrature(make_hex4(d, pattern), tol)
    chain.add("measure", {"family": "hex4", "d": d, "tol": tol}, p4.value,
              note=f"errorBound={p4.error_bound:.3e} (estimate, not certified)")
    e = edges_from_probability(p4)
    chain.add("ceilingRule", {"p_upper": p4.conservative_upper}, e)
    v = min_vertices_erdos(e) if erdos else min_vertices_from_edges(e)
    chain.add("erdosInversion" if erdos else "maxEdgesInversion", {"e": e}, v)
    extra = {
        "d": d,
        "inverse_p": 1.0 / p4.value,
        "e_central": edges_from_probability(p4, central=True),
        "e_floor": edges_floor(p4.value),
        "v_erdos": min_vertices_erdos(e),
        "v_erdos_floor": min_vertices_erdos(edges_floor(p4.value)),
        "objective_trace": opt.trace if opt else [],
    }
    return PipelineReport(5, {"hex4": {"d": d, "pattern": [list(r) for r in pattern]}}, {"p4": p4},
                          EdgeBound(5, e, chain), VertexBound(5, v, chain), chain, extra)


def croft_objective(params) -> float:
    hex_width, spacing = params
    diam_margin, dist_margin = croft_margins(hex_width, spacing)
    if diam_margin < -1e-12 or dist_margin < -1e-12:
        raise TilingError(f"infeasible Croft parameters {params}: margins {diam_margin:.3g}, {dist_margin:.3g}")
    return -croft_density(hex_width, spacing)


def optimize_croft(box=CROFT_BOX, points_per_dim: int = 9, levels: int = 10) -> OptimizationResult:
    res = grid_refine(croft_objective, box, points_per_dim, levels)
    res.info["density"] = -res.objective
    return res


def _direct_composite(base: PeriodicTiling, mode: str, params: dict, tol: float):
    try:
        if mode == "croft":
            comp = overlay_croft(base, params["hex_width"], params["spacing"])
        else:
            comp = overlay_disks(base, params["spacing"], params["radius"])
    except TilingError as exc:
        return None, str(exc)
    return p_quadrature(comp, tol), None


def pipeline_k6(mode: str = "croft", params: Optional[dict] = None, tol: float = DEFAULT_TOL,
                base: Optional[PipelineReport] = None, d: Optional[float] = None,
                erdos: bool = False, rounding: str = "ceil") -> PipelineReport:
    """e_6 and v_6 from an overlay of a unit-distance-free fifth color on hex4.

    ``rounding="floor"`` reproduces the earlier convention ``floor(1/p)`` at
    the central value; the default takes the ceiling at the conservative end.
    """
    if mode not in ("croft", "diskLattice"):
        raise ValueError(f"unknown overlay mode {mode!r}")
    if base is None:
        base = pipeline_k5(tol=tol, d=d)
    chain = BoundChain()
    p4: ProbEstimate = base.estimates["p4"]
    d = base.extra["d"]
    chain.add("measure", {"family": "hex4", "d": d, "tol": tol}, p4.value,
              note=f"errorBound={p4.error_bound:.3e}")
    params = dict(params or {})
    if mode == "croft":
        if "hex_width" not in params:
            opt = optimize_croft()
            params["hex_width"], params["spacing"] = opt.params
            chain.add("optimize", {"family": "croft", "evals": opt.evals}, list(opt.params))
        delta = croft_density(params["hex_width"], params["spacing"])
        overlay_croft(None, params["hex_width"], params["spacing"])  # feasibility check
    else:
        params.setdefault("spacing", 2.0)
        params.setdefault("radius", 0.5)
        delta = overlay_disks(None, params["spacing"], params["radius"]).meta["overlay_density"]
    chain.add("density", {"mode": mode, **params}, delta)
    p5_central = lemma_compose(p4.value, delta)
    p5_upper = lemma_compose(min(1.0, p4.conservative_upper), delta)
    chain.add("lemmaCompose", {"p4_upper": p4.conservative_upper, "delta": delta}, p5_upper)
    direct, why = _direct_composite(make_hex4(d, base.tilings["hex4"]["pattern"]), mode, params, tol)
    candidates = [p5_upper]
    extra = {"delta": delta, "p5_lemma": p5_central, "p5_lemma_upper": p5_upper, "params": params}
    if direct is not None:
        candidates.append(direct.conservative_upper)
        extra["p5_direct"] = direct.value
        extra["lemma_exceeded"] = direct.value - p5_central > direct.error_bound + p4.error_bound
        chain.add("measure", {"family": f"hex4+{mode}", "tol": tol}, direct.value,
                  note=f"errorBound={direct.error_bound:.3e}")
    else:
        extra["direct_skipped"] = why
    if rounding == "floor":
        e = edges_floor(p5_central)
        chain.add("floorRule", {"p": p5_central}, e)
    else:
        upper = min(candidates)
        e = edges_from_probability(upper)
        chain.add("ceilingRule", {"p_upper": upper}, e)
    extra["e_central"] = edges_from_probability(p5_central)
    extra["inverse_p5"] = 1.0 / p5_central
    v = min_vertices_erdos(e) if erdos else min_vertices_from_edges(e)
    chain.add("erdosInversion" if erdos else "maxEdgesInversion", {"e": e}, v)
    estimates = {"p4": p4}
    if direct is not None:
        estimates["p5_direct"] = direct
    return PipelineReport(6, {"hex4": base.tilings["hex4"], "overlay": {"mode": mode, **params}},
                          estimates, EdgeBound(6, e, chain), VertexBound(6, v, chain), chain, extra)


def pipeline_k7(document, tol: float = DEFAULT_TOL, pritikin: bool = False) -> PipelineReport:
    """Bounds for k = 7 from a user-supplied 6-coloring document (JSON text or tiling)."""
    t = document if isinstance(document, PeriodicTiling) else load_tiling(document)
    chain = BoundChain()
    report = check_full_coloring(t)
    chain.add("density", {"uncolored": True}, report.uncolored_density)
    if not report.is_full:
        if not pritikin:
            raise PartialColoringError(
                f"coloring leaves {report.uncolored_density:.6g} uncolored; use Pritikin mode for partial colorings")
        delta = report.uncolored_density
        snapped = Fraction(delta).limit_denominator(SNAP_DENOMINATOR)
        if abs(float(snapped) - delta) <= SNAP_TOL:
            chain.add("snapDensity", {"delta": delta}, str(snapped), note="rounding noise removed")
            delta = snapped
        v = pritikin_vertices(delta)
        chain.add("pritikin", {"delta": str(delta)}, v)
        return PipelineReport(7, {"document": {"colorCount": t.color_count, "shapes": len(t.shapes)}},
                              {"delta": float(delta)}, None, VertexBound(7, v, chain), chain, {"mode": "pritikin"})
    p6 = p_quadrature(t, tol)
    chain.add("measure", {"tol": tol}, p6.value, note=f"errorBound={p6.error_bound:.3e}")
    e = edges_from_probability(p6)
    chain.add("ceilingRule", {"p_upper": p6.conservative_upper}, e)
    v = min_vertices_from_edges(e)
    chain.add("maxEdgesInversion", {"e": e}, v)
    rel = p6.error_bound / p6.value if p6.value > 0 else 0.0
    return PipelineReport(7, {"document": {"colorCount": t.color_count, "shapes": len(t.shapes)}},
                          {"p6": p6}, EdgeBound(7, e, chain), VertexBound(7, v, chain), chain,
                          {"relative_error": rel, "max_edges_at_v": max_edges(v)})

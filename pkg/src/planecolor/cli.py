"""Command-line interface: ``planecolor <command> [options]``."""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from importlib import resources
from typing import Optional, Sequence

from . import __version__
from .bounds import (
    edges_floor,
    edges_from_probability,
    max_edges,
    max_edges_source,
    min_vertices_erdos,
    min_vertices_from_edges,
    pritikin_vertices,
)
from .optimize import D_RANGE, optimize_croft, optimize_hex4, pipeline_k5, pipeline_k6, pipeline_k7
from .probability import (
    DEFAULT_TOL,
    MAX_DEPTH,
    ConvergenceError,
    PartialColoringError,
    ProbEstimate,
    density_monte_carlo,
    overlay_density,
    p_monte_carlo,
    p_quadrature,
)
from .svg import render_svg
from .tiling import (
    UNCOLORED,
    PeriodicTiling,
    TilingError,
    make_hex4,
    overlay_croft,
    overlay_disks,
    read_tiling,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_TILING, EXIT_CONVERGENCE, EXIT_OUTPUT = 0, 1, 2, 3, 4, 5
DEFAULT_N = 10 ** 7
DEFAULT_SEED = 0
QUICK_TOL = 1e-4
QUICK_N = 10 ** 5
FAMILIES = ("hex4", "disks", "croft", "hex4+disks", "hex4+croft")
PUBLISHED = {"prior": (98, 22, 180, 32), "current": (99, 28, 182, 42)}


class UsageError(Exception):
    pass


def _header(args) -> str:
    lo, hi = D_RANGE
    return (f"# planecolor {__version__}  defaults: tol={DEFAULT_TOL:g} n={DEFAULT_N} seed={DEFAULT_SEED} "
            f"d-range=[{lo},{hi}]  quadrature: GK15 adaptive, maxDepth={MAX_DEPTH}; "
            f"MC: 99% normal interval; errorBound is an estimate, not a certified enclosure")


def bundled_sample(name: str) -> str:
    return resources.files("planecolor").joinpath("data", name).read_text(encoding="utf-8")


def bundled_names() -> list:
    return sorted(p.name for p in resources.files("planecolor").joinpath("data").iterdir()
                  if p.name.endswith(".json"))


def _load_file(path: str) -> PeriodicTiling:
    from .tiling import load_tiling

    if os.path.exists(path):
        return read_tiling(path)
    name = os.path.basename(path)
    if name in bundled_names():
        return load_tiling(bundled_sample(name))
    raise UsageError(f"no such tiling file: {path}")


def build_tiling(args) -> PeriodicTiling:
    if getattr(args, "file", None):
        return _load_file(args.file)
    family = args.family or "hex4"
    base = make_hex4(args.d) if family.startswith("hex4") else None
    if family == "hex4":
        return base
    if family.endswith("disks"):
        return overlay_disks(base, args.spacing or 2.0, args.radius)
    if family.endswith("croft"):
        return overlay_croft(base, args.hex_width, args.spacing or 1.0 + args.hex_width + 1e-4)
    raise UsageError(f"unknown family {family!r}")


def _estimate(t: PeriodicTiling, args, allow_partial: bool = False) -> ProbEstimate:
    if args.engine == "mc":
        return p_monte_carlo(t, args.n, seed=args.seed, allow_partial=allow_partial, threads=args.threads)
    return p_quadrature(t, args.tol, allow_partial=allow_partial)


def _estimate_dict(est: ProbEstimate) -> dict:
    return {"value": est.value, "errorBound": est.error_bound, "conservativeUpper": est.conservative_upper,
            "method": est.method, "samplesOrCells": est.samples_or_cells, "info": est.info}


def _emit(args, lines: list, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, indent=1, sort_keys=True, default=str))
    else:
        print("\n".join(lines))


# ---------------------------------------------------------------------------
# commands


def cmd_prob(args) -> int:
    t = build_tiling(args)
    est = _estimate(t, args)
    upper = est.conservative_upper
    e = edges_from_probability(est)
    lines = [
        f"engine            {est.method}",
        f"p                 {est.value:.12g}",
        f"errorBound        {est.error_bound:.3e}  (estimate, not certified)",
        f"conservativeUpper {upper:.12g}",
        f"1/p               {1 / est.value:.6f}" if est.value > 0 else "1/p               inf",
        f"ceil(1/upper)     {e}",
        f"ceil(1/p)         {edges_from_probability(est, central=True)}" if est.value > 0 else "",
    ]
    if est.method == "monteCarlo":
        lines.append(f"seed              {args.seed}  n={args.n}")
    _emit(args, [ln for ln in lines if ln], {"estimate": _estimate_dict(est), "edges": e})
    return EXIT_OK


def cmd_density(args) -> int:
    t = build_tiling(args)
    if args.engine == "mc":
        fractions, sigmas = density_monte_carlo(t, args.n, seed=args.seed)
        per = {c: (fractions[c], sigmas[c]) for c in range(t.color_count)}
        unc = (fractions[UNCOLORED], sigmas[UNCOLORED]) if UNCOLORED in fractions else (0.0, 0.0)
        method = f"monteCarlo seed={args.seed} n={args.n}"
    else:
        rep = overlay_density(t)
        per = {c: (rep.per_color.get(c, 0.0), rep.error_bound) for c in range(t.color_count)}
        unc = (rep.uncolored, rep.error_bound)
        method = "exact"
    lines = [f"method    {method}"]
    lines += [f"color {c:<3} {v:.12f}  +- {s:.2e}" for c, (v, s) in per.items()]
    lines.append(f"uncolored {unc[0]:.12f}  +- {unc[1]:.2e}")
    _emit(args, lines, {"method": method, "perColor": {str(c): v for c, (v, _) in per.items()},
                        "uncolored": unc[0]})
    return EXIT_OK


def cmd_optimize(args) -> int:
    if args.family == "croft":
        res = optimize_croft()
        w, s = res.params
        lines = [f"hexWidth  {w:.6f}", f"spacing   {s:.6f}", f"density   {-res.objective:.8f}", f"evals     {res.evals}"]
        payload = {"hexWidth": w, "spacing": s, "density": -res.objective, "evals": res.evals}
    else:
        res = optimize_hex4(tuple(args.d_range), tol=min(args.tol, 1e-8))
        d = res.params[0]
        lines = [f"d         {d:.7f}", f"p         {res.objective:.10g}", f"1/p       {1 / res.objective:.4f}",
                 f"evals     {res.evals}"]
        payload = {"d": d, "p": res.objective, "evals": res.evals}
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.edges is None and args.vertices is None and args.p is None and args.delta is None:
        raise UsageError("give at least one of --edges, --vertices, --p, --delta")
    lines, payload = [], {}
    if args.edges is not None:
        v, ve = min_vertices_from_edges(args.edges), min_vertices_erdos(args.edges)
        lines += [f"edges {args.edges}: v >= {v} (unit-distance count bound)", f"edges {args.edges}: v >= {ve} (e < v^1.5)"]
        payload.update(minVertices=v, minVerticesErdos=ve)
    if args.vertices is not None:
        e = max_edges(args.vertices)
        lines.append(f"vertices {args.vertices}: e <= {e} ({max_edges_source(args.vertices)})")
        payload["maxEdges"] = e
    if args.p is not None:
        e = edges_from_probability(args.p)
        lines.append(f"p {args.p:g}: e >= {e} (ceil(1/p)), floor(1/p) = {edges_floor(args.p)}")
        payload["edges"] = e
    if args.delta is not None:
        v = pritikin_vertices(args.delta)
        lines.append(f"delta {args.delta:g}: v >= {v}")
        payload["pritikinVertices"] = v
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_pipeline(args) -> int:
    if args.k == 5:
        rep = pipeline_k5(tuple(args.d_range), tol=args.tol, erdos=args.erdos, d=args.d_fixed)
    elif args.k == 6:
        params = None
        if args.mode == "croft" and args.hex_width is not None:
            params = {"hex_width": args.hex_width, "spacing": args.spacing or 1.0 + args.hex_width + 1e-4}
        elif args.mode == "diskLattice":
            params = {"spacing": args.spacing or 2.0, "radius": args.radius}
        rep = pipeline_k6(args.mode, params, tol=args.tol, d=args.d_fixed, erdos=args.erdos)
    else:
        if not args.file:
            raise UsageError("pipeline --k 7 needs --file")
        path = args.file
        doc = _load_file(path)
        rep = pipeline_k7(doc, tol=args.tol, pritikin=args.pritikin)
    lines = [_header(args)]
    for i, step in enumerate(rep.chain.steps):
        out = f"{step.output:.10g}" if isinstance(step.output, float) else str(step.output)
        lines.append(f"{i + 1:>2}. {step.rule:<18} -> {out}" + (f"   [{step.note}]" if step.note else ""))
    if rep.edge_bound is not None:
        lines.append(f"e_{rep.k} >= {rep.edge_bound.e_min}")
    lines.append(f"v_{rep.k} >= {rep.vertex_bound.v_min}")
    for key in ("direct_skipped", "lemma_exceeded", "relative_error"):
        if key in rep.extra:
            lines.append(f"{key}: {rep.extra[key]}")
    payload = rep.as_dict()
    payload["extra"] = {k: v for k, v in payload["extra"].items() if k != "objective_trace"}
    _emit(args, lines, payload)
    return EXIT_OK


def _straddles(p: float, err: float) -> bool:
    lo, hi = max(p - err, 1e-300), p + err
    return math.ceil(1 / hi) != math.ceil(1 / lo)


def cmd_report(args) -> int:
    tol = QUICK_TOL if args.quick else args.tol
    n = QUICK_N if args.quick else args.n
    print(_header(args))
    print(f"# run: tol={tol:g} n={n} seed={args.seed}{'  (quick mode)' if args.quick else ''}")
    rows = {}
    try:
        k5 = pipeline_k5(tol=tol)
        p4 = k5.estimates["p4"]
        k6c = pipeline_k6("croft", tol=tol, base=k5)
        k6d = pipeline_k6("diskLattice", tol=tol, base=k5, rounding="floor")
    except (ConvergenceError, TilingError, ArithmeticError) as exc:
        print(f"pipeline failed: {exc}")
        print(f"{'row':<10}{'e5':>8}{'v5':>8}{'e6':>8}{'v6':>8}")
        return EXIT_CONVERGENCE
    e5p = edges_floor(p4.value)
    rows["prior"] = (e5p, min_vertices_erdos(e5p), k6d.edge_bound.e_min, min_vertices_erdos(k6d.edge_bound.e_min))
    rows["current"] = (k5.edge_bound.e_min, k5.vertex_bound.v_min, k6c.edge_bound.e_min, k6c.vertex_bound.v_min)
    p5 = k6c.extra["p5_lemma"]
    warn_cols = {0: _straddles(p4.value, p4.error_bound), 2: _straddles(p5, (1 - 2 * k6c.extra["delta"]) * p4.error_bound)}
    warn_cols[1], warn_cols[3] = warn_cols[0], warn_cols[2]
    print(f"d*={k5.extra['d']:.7f}  p4={p4.value:.10g} +- {p4.error_bound:.2e}  1/p4={1 / p4.value:.4f}")
    print(f"croft: hexWidth={k6c.extra['params']['hex_width']:.6f} spacing={k6c.extra['params']['spacing']:.6f} "
          f"delta={k6c.extra['delta']:.8f}  1/p5={k6c.extra['inverse_p5']:.4f}")
    print(f"disks: delta={k6d.extra['delta']:.8f}  1/p5={k6d.extra['inverse_p5']:.4f}")
    if not args.no_mc:
        mc = p_monte_carlo(make_hex4(k5.extra["d"]), n, seed=args.seed, threads=args.threads)
        agree = abs(mc.value - p4.value) <= p4.error_bound + 3 * mc.info["sigma"]
        print(f"mc check: p4={mc.value:.6g} +- {mc.info['sigma']:.2e} (1 sigma) seed={args.seed} n={n} "
              f"{'AGREE' if agree else 'DISAGREE'}")
    print(f"{'row':<10}{'e5':>8}{'v5':>8}{'e6':>8}{'v6':>8}")
    ok = True
    for name, values in rows.items():
        cells = []
        for col, (got, want) in enumerate(zip(values, PUBLISHED[name])):
            mark = "PASS" if got == want else "FAIL"
            if args.quick and warn_cols[col]:
                mark = "WARN"  # coarse error bound straddles a ceiling boundary
            ok &= mark != "FAIL"
            cells.append(f"{got:>4} {mark}")
        print(f"{name:<10}" + "".join(f"{c:>10}" for c in cells) + f"   expected {'/'.join(map(str, PUBLISHED[name]))}")
    if args.erdos:
        e5, e6 = rows["current"][0], rows["current"][2]
        print(f"{'erdos':<10}{e5:>8}{min_vertices_erdos(e5):>8}{e6:>8}{min_vertices_erdos(e6):>8}   (e < v^1.5 inversion)")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_render(args) -> int:
    t = build_tiling(args)
    data = render_svg(t)
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(data)
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_OUTPUT
    shapes = data.count('class="shape"')
    print(f"wrote {args.out} ({shapes} shapes)")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError("must be a positive finite number")
    return v


def _add_source(p):
    p.add_argument("--family", choices=FAMILIES, default=None)
    p.add_argument("--file", help="tiling JSON document (bundled sample names are accepted)")
    p.add_argument("--d", type=_positive_float, default=1.1335, help="hexagon diameter for hex4")
    p.add_argument("--spacing", type=_positive_float, default=None)
    p.add_argument("--radius", type=_positive_float, default=0.5)
    p.add_argument("--hex-width", type=_positive_float, default=0.9656)


def _add_engine(p, engines=("quadrature", "mc")):
    p.add_argument("--engine", choices=engines, default=engines[0])
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    p.add_argument("--n", type=_positive_int, default=DEFAULT_N)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--threads", type=_positive_int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="planecolor", description="Monochromatic unit-edge probabilities of "
                                     "periodic plane colorings and the graph bounds they imply.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prob", help="probability that a random unit edge is monochromatic")
    _add_source(p)
    _add_engine(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("density", help="area fraction of each color class")
    _add_source(p)
    _add_engine(p, ("exact", "mc"))
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("optimize", help="tune hex4 diameter or Croft tile parameters")
    p.add_argument("--family", choices=("hex4", "croft"), default="hex4")
    p.add_argument("--d-range", type=float, nargs=2, default=list(D_RANGE), metavar=("LO", "HI"))
    p.add_argument("--tol", type=_positive_float, default=1e-8)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("bounds", help="single-step bound conversions")
    p.add_argument("--edges", type=_positive_int)
    p.add_argument("--vertices", type=_positive_int)
    p.add_argument("--p", type=_positive_float)
    p.add_argument("--delta", type=_positive_float)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("pipeline", help="full bound chain for k = 5, 6 or 7")
    p.add_argument("--k", type=int, choices=(5, 6, 7), required=True)
    p.add_argument("--mode", choices=("croft", "diskLattice"), default="croft")
    p.add_argument("--d-range", type=float, nargs=2, default=list(D_RANGE), metavar=("LO", "HI"))
    p.add_argument("--d", dest="d_fixed", type=_positive_float, default=None, help="skip the diameter search")
    p.add_argument("--file")
    p.add_argument("--hex-width", type=_positive_float, default=None)
    p.add_argument("--spacing", type=_positive_float, default=None)
    p.add_argument("--radius", type=_positive_float, default=0.5)
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    p.add_argument("--pritikin", action="store_true", help="accept partial colorings (uncolored density bound)")
    p.add_argument("--erdos", action="store_true")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("report", help="headline table of edge and vertex bounds")
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)
    p.add_argument("--n", type=_positive_int, default=DEFAULT_N)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--quick", action="store_true", help=f"coarse tol={QUICK_TOL:g}, n={QUICK_N}")
    p.add_argument("--erdos", action="store_true", help="add an e < v^1.5 inversion row")
    p.add_argument("--no-mc", action="store_true", help="skip the Monte Carlo cross-check")

    p = sub.add_parser("render", help="SVG picture of the fundamental cell and its neighbours")
    _add_source(p)
    p.add_argument("--out", required=True)
    return parser


COMMANDS = {"prob": cmd_prob, "density": cmd_density, "optimize": cmd_optimize, "bounds": cmd_bounds,
            "pipeline": cmd_pipeline, "report": cmd_report, "render": cmd_render}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PartialColoringError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TILING
    except TilingError as exc:
        print(f"tiling error: {exc}", file=sys.stderr)
        return EXIT_TILING
    except ConvergenceError as exc:
        print(f"no convergence: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

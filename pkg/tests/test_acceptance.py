"""Acceptance criteria, each checked at its stated tolerance and time budget."""
import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from conftest import ACCEPTANCE_RESULTS
from planecolor.bounds import (
    max_edges,
    min_vertices_erdos,
    min_vertices_from_edges,
    monotonicity_repairs,
    pritikin_vertices,
)
from planecolor.cli import bundled_sample
from planecolor.geometry import TWO_PI, AngleIntervalSet, Lattice, complement, intersect, measure, rectangle, union
from planecolor.optimize import optimize_croft, pipeline_k5, pipeline_k6, pipeline_k7
from planecolor.probability import density_monte_carlo, overlay_density, p_monte_carlo, p_quadrature
from planecolor.tiling import UNCOLORED, ColoredShape, PeriodicTiling, load_tiling, make_hex4, overlay_disks

MC_N = 10 ** 7
DISK_DENSITY = math.pi / (8 * math.sqrt(3))


@contextmanager
def criterion(number: int, title: str, budget: float | None = None):
    start = time.perf_counter()
    status, detail = "PASS", ""
    try:
        yield
        elapsed = time.perf_counter() - start
        if budget is not None and elapsed > budget:
            status, detail = "FAIL", f"took {elapsed:.1f}s, budget {budget:g}s"
            raise AssertionError(detail)
        detail = f"{elapsed:.2f}s"
    except BaseException as exc:
        status = "FAIL"
        detail = detail or f"{type(exc).__name__}: {exc}"
        raise
    finally:
        line = f"[{status}] criterion {number}: {title} ({detail})"
        ACCEPTANCE_RESULTS.append(line)
        print(line)


def test_criterion_01_bounds_tables():
    exact = [0, 1, 3, 5, 7, 9, 12, 14, 18, 20, 23, 27, 30, 33, 37]
    small = [42, 47, 52, 57]
    implicit = [63, 68, 72, 77, 82, 87, 92, 97, 102, 108, 113, 119, 124, 130, 136, 142, 148, 154, 160, 166,
                172, 179, 185, 192, 198, 205, 212, 218, 225, 232, 239, 246, 254, 261, 268, 276, 283, 291, 298, 306]
    with criterion(1, "maxEdges tables for v = 1..59", budget=1.0):
        assert [max_edges(v) for v in range(1, 60)] == exact + small + implicit


def test_criterion_02_inversions():
    with criterion(2, "vertex inversions 28/42/6456/2608 and 22/32", budget=1.0):
        assert [min_vertices_from_edges(e) for e in (99, 182, 232646, 69451)] == [28, 42, 6456, 2608]
        assert [min_vertices_erdos(e) for e in (98, 180)] == [22, 32]


def test_criterion_03_disk_density():
    with criterion(3, "disk overlay density pi/(8 sqrt 3): exact and MC within 3 sigma", budget=10.0):
        t = overlay_disks(None)
        exact = overlay_density(t).per_color[0]
        assert abs(exact - DISK_DENSITY) <= 1e-12
        assert abs(t.meta["overlay_density"] - DISK_DENSITY) <= 1e-12
        frac, sig = density_monte_carlo(t, MC_N, seed=0)
        assert abs(frac[0] - DISK_DENSITY) <= 3 * sig[0]


def test_criterion_04_croft_optimum():
    with criterion(4, "Croft gridRefine density in [0.22906, 0.22966]", budget=300.0):
        res = optimize_croft()
        assert 0.22906 <= -res.objective <= 0.22966


def test_criterion_05_k5_chain():
    with criterion(5, "k=5 chain: e5 = 99 at d in [1.12, 1.15], v5 = 28", budget=1800.0):
        rep = pipeline_k5(tol=1e-6)
        assert 1.12 <= rep.extra["d"] <= 1.15
        assert rep.edge_bound.e_min == 99
        assert rep.vertex_bound.v_min == 28


def test_criterion_06_k6_chain():
    with criterion(6, "k=6 Croft chain: e6 in {182, 183}, v6 consistent with 42"):
        rep = pipeline_k6("croft", tol=1e-6)
        for i, step in enumerate(rep.chain.steps):
            print(f"  {i + 1}. {step.rule}: {step.output}")
        assert rep.edge_bound.e_min in (182, 183)
        assert rep.vertex_bound.v_min == min_vertices_from_edges(rep.edge_bound.e_min)
        assert min_vertices_from_edges(182) == 42


def test_criterion_07_stripes():
    with criterion(7, "stripes p = 1 - 2/pi: quadrature 1e-6, MC within 4 sigma", budget=60.0):
        t = PeriodicTiling(Lattice((2.0, 0.0), (0.0, 1.0)),
                           (ColoredShape(rectangle(0, 0, 1, 1), 0), ColoredShape(rectangle(1, 0, 2, 1), 1)),
                           UNCOLORED, 2)
        target = 1 - 2 / math.pi
        assert abs(p_quadrature(t, 1e-6).value - target) <= 1e-6
        mc = p_monte_carlo(t, MC_N, seed=0)
        assert abs(mc.value - target) <= 4 * mc.info["sigma"]


@pytest.mark.parametrize("name", ["hex4(1.1335)", "disk composite", "file hex6_full.json"])
def test_criterion_08_cross_engine(name):
    tilings = {
        "hex4(1.1335)": lambda: make_hex4(1.1335),
        "disk composite": lambda: overlay_disks(make_hex4(2 / math.sqrt(3))),
        "file hex6_full.json": lambda: load_tiling(bundled_sample("hex6_full.json")),
    }
    with criterion(8, f"cross-engine agreement on {name}"):
        t = tilings[name]()
        q = p_quadrature(t, 1e-6)
        m = p_monte_carlo(t, MC_N, seed=0)
        assert abs(q.value - m.value) <= q.error_bound + 3 * m.info["sigma"]


def _random_sets(rng, count):
    out = []
    for _ in range(count):
        s = AngleIntervalSet.empty()
        for _ in range(rng.integers(0, 4)):
            a = rng.uniform(0, TWO_PI)
            s = s.union(AngleIntervalSet.arc(a, a + rng.uniform(0, TWO_PI)))
        out.append(s)
    return out


def test_criterion_09_properties():
    with criterion(9, "property suites (interval algebra, colorAt, maxEdges)", budget=120.0):
        rng = np.random.default_rng(2024)
        sets_a, sets_b = _random_sets(rng, 10_000), _random_sets(rng, 10_000)
        for a, b in zip(sets_a, sets_b):
            assert abs(measure(complement(union(a, b))) - measure(intersect(complement(a), complement(b)))) <= 1e-12
            assert abs(measure(complement(intersect(a, b))) - measure(union(complement(a), complement(b)))) <= 1e-12
            assert abs(measure(union(a, b)) + measure(intersect(a, b)) - measure(a) - measure(b)) <= 1e-12
            assert abs(measure(a) + measure(complement(a)) - TWO_PI) <= 1e-12

        t = make_hex4(1.1335)
        xs, ys = rng.uniform(-20, 20, 100_000), rng.uniform(-20, 20, 100_000)
        ms, ns = rng.integers(-5, 6, 100_000), rng.integers(-5, 6, 100_000)
        base = t.color_at_many(xs, ys)
        shifted = t.color_at_many(xs + ms * t.lattice.u.x + ns * t.lattice.v.x, ys + ms * t.lattice.u.y + ns * t.lattice.v.y)
        assert np.array_equal(base, shifted)
        perm = [2, 0, 3, 1]
        tp = make_hex4(1.1335, ((perm[0], perm[1]), (perm[2], perm[3])))
        assert np.array_equal(np.asarray(perm)[base], tp.color_at_many(xs, ys))

        values = [max_edges(v) for v in range(1, 100_001)]
        assert all(a <= b for a, b in zip(values, values[1:]))
        assert monotonicity_repairs() == []
        for e in rng.integers(1, values[-1], 10_000):
            v = min_vertices_from_edges(int(e))
            assert values[v - 1] >= e and (v == 1 or values[v - 2] < e)


def test_criterion_10_k7_sample():
    with criterion(10, "k=7 pipeline on bundled samples, Pritikin consistency"):
        full = pipeline_k7(bundled_sample("hex6_full.json"), tol=1e-6)
        assert full.chain.steps and full.edge_bound.e_min >= 1
        assert full.vertex_bound.v_min == min_vertices_from_edges(full.edge_bound.e_min)
        part = pipeline_k7(bundled_sample("hex7_partial.json"), pritikin=True)
        delta = part.estimates["delta"]
        assert part.vertex_bound.v_min == pritikin_vertices(delta) == math.floor(1 / delta + 1e-9) + 1

import json
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from planecolor.geometry import Disk, Lattice, rectangle
from planecolor.tiling import (
    UNCOLORED,
    ColoredShape,
    PeriodicTiling,
    TilingError,
    TilingFormatError,
    check_full_coloring,
    common_sublattice,
    croft_density,
    croft_margins,
    croft_tile,
    load_tiling,
    make_hex4,
    make_hex_tiling,
    overlay_croft,
    overlay_disks,
    save_tiling,
    triangular_lattice,
)

DISK_DENSITY = math.pi / (8 * math.sqrt(3))


def stripes():
    return PeriodicTiling(Lattice((2.0, 0.0), (0.0, 1.0)),
                          (ColoredShape(rectangle(0, 0, 1, 1), 0), ColoredShape(rectangle(1, 0, 2, 1), 1)),
                          UNCOLORED, 2)


def test_hex4_is_full_with_equal_classes():
    t = make_hex4(1.1335)
    assert check_full_coloring(t).is_full
    for i in range(4):
        assert t.visible_area(i) / t.lattice.cell_area == pytest.approx(0.25, abs=1e-12)


def test_hex4_rejects_bad_parameters():
    with pytest.raises(TilingError):
        make_hex4(2.0)
    with pytest.raises(TilingError):
        make_hex4(1.1, ((0, 1), (2, 2)))


def test_partial_coloring_density():
    t = make_hex_tiling(1.0, ((0, 1), (2, 3)), uncolored=(3,))
    rep = check_full_coloring(t)
    assert not rep.is_full
    assert rep.uncolored_density == pytest.approx(0.25, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(-5, 5), st.floats(-5, 5), st.integers(-3, 3), st.integers(-3, 3))
def test_color_at_is_periodic(x, y, m, n):
    t = make_hex4(1.2)
    # boundary points carry a conventional colour; skip those within 1e-8 of an edge
    nearby = {t.color_at((x + dx, y + dy)) for dx, dy in ((1e-8, 0), (-1e-8, 0), (0, 1e-8), (0, -1e-8))}
    assume(len(nearby) == 1)
    w = t.lattice.vector(m, n)
    assert t.color_at((x, y)) == t.color_at((x + w.x, y + w.y))


def test_color_at_many_matches_scalar():
    t = overlay_disks(make_hex4(2 / math.sqrt(3)))
    rng = np.random.default_rng(3)
    xs, ys = rng.uniform(-4, 4, 400), rng.uniform(-4, 4, 400)
    many = t.color_at_many(xs, ys)
    assert list(many) == [t.color_at((x, y)) for x, y in zip(xs, ys)]


@settings(max_examples=20, deadline=None)
@given(st.permutations([0, 1, 2, 3]))
def test_permutation_equivariance(perm):
    pattern = ((0, 1), (2, 3))
    t = make_hex4(1.13, pattern)
    tp = make_hex4(1.13, tuple(tuple(perm[c] for c in row) for row in pattern))
    rng = np.random.default_rng(0)
    xs, ys = rng.uniform(-10, 10, 2000), rng.uniform(-10, 10, 2000)
    a, b = t.color_at_many(xs, ys), tp.color_at_many(xs, ys)
    assert np.array_equal(np.asarray(perm)[a], b)


def test_higher_z_wins():
    lat = Lattice((1.0, 0.0), (0.0, 1.0))
    low = ColoredShape(rectangle(0, 0, 1, 1), 0, z=0)
    high = ColoredShape(Disk((0.5, 0.5), 0.2), 1, z=1)
    t = PeriodicTiling(lat, (low, high), UNCOLORED, 2)
    assert t.color_at((0.5, 0.5)) == 1
    assert t.color_at((0.1, 0.1)) == 0
    assert t.visible_area(0) == pytest.approx(1 - math.pi * 0.04, abs=1e-14)


def test_uncolored_requires_hole_flag():
    with pytest.raises(ValueError):
        ColoredShape(rectangle(0, 0, 1, 1), UNCOLORED)


# ------------------------------------------------------------ composition

def test_common_sublattice():
    a = Lattice((1.0, 0.0), (0.0, 1.0))
    b = Lattice((2.0, 0.0), (0.0, 3.0))
    c = common_sublattice(a, b)
    assert c.cell_area == pytest.approx(6.0)


def test_incommensurable_lattices_raise():
    with pytest.raises(TilingError):
        common_sublattice(Lattice((1.0, 0.0), (0.0, 1.0)), Lattice((math.sqrt(2), 0.0), (0.0, 1.0)))


def test_disk_overlay_on_matching_hex4():
    t = overlay_disks(make_hex4(2 / math.sqrt(3)))
    assert check_full_coloring(t).is_full
    overlay = [i for i, cs in enumerate(t.shapes) if isinstance(cs.shape, Disk)]
    share = sum(t.visible_area(i) for i in overlay) / t.lattice.cell_area
    assert share == pytest.approx(DISK_DENSITY, abs=1e-12)
    assert t.meta["overlay_density"] == pytest.approx(DISK_DENSITY, abs=1e-15)


def test_incommensurable_overlay_is_rejected():
    with pytest.raises(TilingError):
        overlay_disks(make_hex4(1.1335))


def test_disk_overlay_constraints():
    with pytest.raises(TilingError):
        overlay_disks(None, 2.0, 0.6)
    with pytest.raises(TilingError):
        overlay_disks(None, 1.9, 0.5)


def test_croft_family():
    assert isinstance(croft_tile(1.0), Disk)
    diam, dist = croft_margins(0.96, 1.97)
    assert diam == pytest.approx(0.0, abs=1e-15) and dist == pytest.approx(0.01, abs=1e-12)
    with pytest.raises(TilingError):
        overlay_croft(None, 0.96, 1.95)
    t = overlay_croft(None, 0.96, 1.97)
    assert t.meta["overlay_density"] == pytest.approx(croft_density(0.96, 1.97))
    # tile area over triangular cell area
    assert croft_density(1.0, 2.0) == pytest.approx(DISK_DENSITY, abs=1e-14)


def test_triangular_lattice_area():
    assert triangular_lattice(2.0).cell_area == pytest.approx(2 * math.sqrt(3))


# ------------------------------------------------------------ file format

def doc(**over):
    base = {"lattice": {"u": [2, 0], "v": [0, 1]}, "colorCount": 2, "background": "uncolored",
            "shapes": [{"type": "polygon", "color": 0, "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]},
                       {"type": "polygon", "color": 1, "vertices": [[1, 0], [2, 0], [2, 1], [1, 1]]}]}
    base.update(over)
    return json.dumps(base)


def test_load_minimal_document():
    t = load_tiling(doc())
    assert t.color_count == 2 and len(t.shapes) == 2
    assert check_full_coloring(t).is_full


@pytest.mark.parametrize("text, locus", [
    (doc(colorCount=0), "colorCount"),
    (doc(extra=1), "$"),
    (doc(background=5), "background"),
    (doc(shapes=[{"type": "blob", "color": 0}]), "shapes[0].type"),
    (doc(shapes=[{"type": "disk", "color": 3, "center": [0, 0], "radius": 0.5}]), "shapes[0].color"),
    (doc(shapes=[{"type": "disk", "color": 0, "center": [0, 0]}]), "shapes[0]"),
    (doc(shapes=[{"type": "disk", "color": 0, "center": [0, "a"], "radius": 1}]), "shapes[0].center[1]"),
    (doc(lattice={"u": [1, 0], "v": [2, 0]}), "lattice"),
    ('{"lattice": ', "line 1 column 13"),
], ids=["colorCount", "unknown-field", "background", "type", "color", "missing", "number", "lattice", "json"])
def test_format_errors_name_the_locus(text, locus):
    with pytest.raises(TilingFormatError) as info:
        load_tiling(text)
    assert info.value.locus == locus


def test_round_trip_preserves_tiling():
    for t in (make_hex4(1.1335), overlay_croft(None, 0.96, 1.97), make_hex_tiling(1.0, ((0, 1),), uncolored=(1,))):
        again = load_tiling(save_tiling(t))
        assert save_tiling(again) == save_tiling(t)
        rng = np.random.default_rng(1)
        xs, ys = rng.uniform(-3, 3, 500), rng.uniform(-3, 3, 500)
        assert np.array_equal(t.color_at_many(xs, ys), again.color_at_many(xs, ys))


def test_stripes_visible_parts():
    t = stripes()
    assert t.visible_area(0) == pytest.approx(1.0)
    assert t.color_at((0.5, 0.5)) == 0 and t.color_at((1.5, 0.5)) == 1 and t.color_at((2.5, 7.5)) == 0

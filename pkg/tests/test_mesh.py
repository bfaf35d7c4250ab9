"""Slab tessellation, watertightness, and binary STL packing."""

import struct

import numpy as np
import pytest

from cartilab.mesh import (
    STL_HEADER_TEXT,
    expected_triangle_count,
    slab_mesh,
    slab_stl,
    stl_bytes,
    triangulate_face,
)


def grid(n, pitch=4.0, origin=None):
    origin = origin if origin is not None else pitch / 2.0 + 1.0
    return [(origin + i * pitch, origin + j * pitch)
            for j in range(n) for i in range(n)]


NINE = [(x, y) for y in (3.0, 7.0, 11.0) for x in (3.0, 7.0, 11.0)]


# independent reader: 80-byte header, uint32 count, then 50-byte records
# of 12 little-endian floats (normal + 3 vertices) and a uint16 attribute
def parse_stl(data):
    header = data[:80]
    (count,) = struct.unpack_from("<I", data, 80)
    assert len(data) == 84 + 50 * count
    tris = []
    for i in range(count):
        values = struct.unpack_from("<12fH", data, 84 + 50 * i)
        normal = values[0:3]
        v = [values[3:6], values[6:9], values[9:12]]
        assert values[12] == 0
        tris.append((normal, v))
    return header, tris


def edge_count(tris):
    edges = {}
    for _, (v0, v1, v2) in tris:
        for a, b in ((v0, v1), (v1, v2), (v2, v0)):
            edges[(a, b)] = edges.get((a, b), 0) + 1
    return edges


def signed_volume(tris):
    total = 0.0
    for _, (v0, v1, v2) in tris:
        a, b, c = np.array(v0), np.array(v1), np.array(v2)
        total += float(np.dot(a, np.cross(b, c))) / 6.0
    return total


def test_triangle_count_formula():
    assert expected_triangle_count(0) == 12
    assert expected_triangle_count(1) == 32
    assert expected_triangle_count(4) == 92
    assert expected_triangle_count(9) == 192
    assert expected_triangle_count(100) == 2012


@pytest.mark.parametrize("holes", [[], [(7.0, 7.0)], grid(2), NINE])
def test_mesh_hits_the_formula(holes):
    tris = slab_mesh(14.0, 14.0, holes, 2.0, 6.0)
    assert len(tris) == expected_triangle_count(len(holes))
    assert tris.shape[1:] == (3, 3)


def test_stl_structure_and_header():
    data = slab_stl(14.0, 14.0, NINE, 2.0, 6.0)
    header, tris = parse_stl(data)
    assert header.startswith(STL_HEADER_TEXT)
    assert len(tris) == 192
    assert len(data) == 84 + 50 * 192


def test_stl_is_watertight():
    _, tris = parse_stl(slab_stl(14.0, 14.0, NINE, 2.0, 6.0))
    edges = edge_count(tris)
    for (a, b), n in edges.items():
        assert n == 1, f"directed edge {a}->{b} used {n} times"
        assert (b, a) in edges, f"edge {a}->{b} has no opposite partner"


def test_stl_volume_matches_geometry():
    _, tris = parse_stl(slab_stl(14.0, 14.0, NINE, 2.0, 6.0))
    expect = (14.0 * 14.0 - 9 * 2.0 * 2.0) * 6.0  # 960 mm3
    assert signed_volume(tris) == pytest.approx(expect, rel=1e-6)


def test_solid_slab_volume():
    _, tris = parse_stl(slab_stl(10.0, 8.0, [], 2.0, 3.0))
    assert signed_volume(tris) == pytest.approx(240.0, rel=1e-9)


def test_top_face_area_excludes_holes():
    mesh = slab_mesh(14.0, 14.0, NINE, 2.0, 6.0)
    top = mesh[np.all(mesh[:, :, 2] == 6.0, axis=1)]
    area = 0.0
    for v0, v1, v2 in top:
        area += abs(float(np.cross(v1 - v0, v2 - v0)[2])) / 2.0
    assert area == pytest.approx(14.0 * 14.0 - 9 * 4.0, rel=1e-9)


def test_face_triangles_are_ccw_and_avoid_holes():
    tris = triangulate_face(14.0, 14.0, NINE, 2.0)
    for a, b, c in tris:
        cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        assert cross > 0.0
        cx = (a[0] + b[0] + c[0]) / 3.0
        cy = (a[1] + b[1] + c[1]) / 3.0
        for hx, hy in NINE:
            inside = (abs(cx - hx) < 1.0 - 1e-9) and (abs(cy - hy) < 1.0 - 1e-9)
            assert not inside, f"centroid ({cx}, {cy}) fell inside hole ({hx}, {hy})"


def test_byte_determinism():
    a = slab_stl(14.0, 14.0, NINE, 2.0, 6.0)
    b = slab_stl(14.0, 14.0, list(NINE), 2.0, 6.0)
    assert a == b


def test_large_grid_does_not_stall():
    holes = grid(10, pitch=4.0, origin=4.0)
    tris = slab_mesh(44.0, 44.0, holes, 2.0, 6.0)
    assert len(tris) == expected_triangle_count(100)
    _, parsed = parse_stl(stl_bytes(tris))
    vol = signed_volume(parsed)
    assert vol == pytest.approx((44.0 * 44.0 - 100 * 4.0) * 6.0, rel=1e-6)


def test_non_grid_holes_rejected():
    with pytest.raises(ValueError, match="full rectangular grid"):
        slab_mesh(14.0, 14.0, [(3.0, 3.0), (7.0, 3.0), (5.0, 7.0)], 2.0, 6.0)


def test_duplicate_holes_rejected():
    with pytest.raises(ValueError, match="duplicate"):
        slab_mesh(14.0, 14.0, [(3.0, 3.0), (3.0, 3.0)], 2.0, 6.0)


def test_hole_must_fit_inside_the_slab():
    with pytest.raises(ValueError, match="does not fit"):
        slab_mesh(14.0, 14.0, [(0.5, 7.0)], 2.0, 6.0)
    with pytest.raises(ValueError, match="does not fit"):
        slab_mesh(14.0, 14.0, [(13.5, 7.0)], 2.0, 6.0)


def test_dimension_guards():
    with pytest.raises(ValueError):
        slab_mesh(0.0, 14.0, [], 2.0, 6.0)
    with pytest.raises(ValueError):
        slab_mesh(14.0, 14.0, [], -2.0, 6.0)
    with pytest.raises(ValueError):
        slab_mesh(14.0, 14.0, [], 2.0, 0.0)
    with pytest.raises(ValueError):
        stl_bytes(np.zeros((2, 3)))
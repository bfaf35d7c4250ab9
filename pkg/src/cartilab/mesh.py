"""Watertight slab-with-holes tessellation and binary STL output.

The solid is a rectangular slab with axis-aligned square through-holes on
a full rectangular grid (what the flat layout generator produces).  Both
faces are triangulated using only the existing corner vertices - no
Steiner points - so the facet count is fixed by Euler's formula: each
face yields 2 + 6H triangles (4 + 4H boundary vertices plus 2 duplicated
vertices per keyhole bridge), the outer wall 8, and each hole tunnel 8,
for a total of 12 + 20H.

The face triangulation merges the holes into the outer boundary with
keyhole bridges laid out serpentine-fashion along the grid (horizontal
bridges within a row, vertical bridges between row ends, one diagonal
bridge from the first hole to the sheet corner), then ear-clips the
resulting simple polygon.  Every corridor runs through hole-free space,
so the construction is deterministic and never self-intersects.
"""

from __future__ import annotations

import math
import struct
from typing import Optional, Sequence

import numpy as np

Point = tuple[float, float]
Tri2 = tuple[Point, Point, Point]

# corner cycle of a square hole, clockwise (holes wind opposite the outer ring)
_CW = ("BL", "TL", "TR", "BR")


def expected_triangle_count(hole_count: int) -> int:
    """Facet count of the documented tessellation: 12 + 20 per hole."""
    return 12 + 20 * hole_count


def _corners(cx: float, cy: float, half: float) -> dict[str, Point]:
    return {
        "BL": (cx - half, cy - half),
        "TL": (cx - half, cy + half),
        "TR": (cx + half, cy + half),
        "BR": (cx + half, cy - half),
    }


def _grid_rows(holes: Sequence[Point]) -> list[list[Point]]:
    """Group hole centers into rows of a full rectangular grid, or raise."""
    rows: dict[float, list[float]] = {}
    for cx, cy in holes:
        rows.setdefault(cy, []).append(cx)
    ordered = [sorted(rows[cy]) for cy in sorted(rows)]
    first = ordered[0]
    if any(r != first for r in ordered[1:]):
        raise ValueError("holes must form a full rectangular grid")
    if len(set(first)) != len(first):
        raise ValueError("duplicate hole centers")
    return [[(cx, cy) for cx in row]
            for row, cy in zip(ordered, sorted(rows))]


def _serpentine(rows: list[list[Point]]) -> tuple[list[Point], list[str], list[Optional[str]]]:
    """Chain order plus per-hole entry corner and exit corner names.

    Even rows run left-to-right, odd rows right-to-left, so consecutive
    holes are always adjacent (same row) or vertically aligned (row end),
    keeping every bridge corridor inside hole-free space.
    """
    chain: list[Point] = []
    entries: list[str] = []
    exits: list[Optional[str]] = []
    for j, row in enumerate(rows):
        ordered = row if j % 2 == 0 else row[::-1]
        for i, hole in enumerate(ordered):
            chain.append(hole)
            if j == 0 and i == 0:
                entries.append("BL")  # bridged diagonally from the sheet corner
            elif i == 0:
                entries.append("BR" if j % 2 == 1 else "BL")  # from the row below
            else:
                entries.append("BL" if j % 2 == 0 else "BR")  # from the previous hole
            last_in_row = i == len(ordered) - 1
            if last_in_row and j == len(rows) - 1:
                exits.append(None)  # end of chain
            elif last_in_row:
                exits.append("TR" if j % 2 == 0 else "TL")  # up to the next row
            else:
                exits.append("BR" if j % 2 == 0 else "BL")  # onward within the row
    return chain, entries, exits


def _merged_ring(width: float, length: float, holes: Sequence[Point],
                 side: float) -> list[Point]:
    """Outer rectangle with every hole spliced in via keyhole bridges (CCW)."""
    outer = [(0.0, 0.0), (width, 0.0), (width, length), (0.0, length)]
    if not holes:
        return outer
    half = side / 2.0
    chain, entries, exits = _serpentine(_grid_rows(holes))

    # build each hole's spliced sequence back-to-front along the chain
    child: list[Point] = []
    for i in reversed(range(len(chain))):
        c = _corners(*chain[i], half)
        start = _CW.index(entries[i])
        seq: list[Point] = []
        for k in range(4):
            name = _CW[(start + k) % 4]
            seq.append(c[name])
            if exits[i] is not None and name == exits[i]:
                seq.extend(child)
                seq.append(c[name])
        seq.append(c[entries[i]])
        child = seq

    ring: list[Point] = []
    for corner in outer:
        ring.append(corner)
        if corner == (0.0, 0.0):
            ring.extend(child)
            ring.append(corner)
    return ring


def _area2(a: Point, b: Point, c: Point) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _inside_or_on(p: Point, a: Point, b: Point, c: Point) -> bool:
    # triangle is CCW; boundary counts as inside (prevents T-vertices)
    return (_area2(a, b, p) >= 0.0 and _area2(b, c, p) >= 0.0
            and _area2(c, a, p) >= 0.0)


def earclip(ring: Sequence[Point]) -> list[Tri2]:
    """Triangulate a simple CCW polygon (keyhole-doubled edges allowed).

    Returns len(ring) - 2 CCW triangles.  O(n^2) with the usual ear scan;
    fine for fabrication-size grids.
    """
    n = len(ring)
    if n < 3:
        raise ValueError("polygon needs at least 3 vertices")
    nxt = [(i + 1) % n for i in range(n)]
    prv = [(i - 1) % n for i in range(n)]
    alive = n
    tris: list[Tri2] = []
    i = 0
    stuck = 0
    while alive > 3:
        a, b, c = ring[prv[i]], ring[i], ring[nxt[i]]
        if _area2(a, b, c) > 0.0 and not _blocked(ring, prv, nxt, i):
            tris.append((a, b, c))
            nxt[prv[i]], prv[nxt[i]] = nxt[i], prv[i]
            i = prv[i]
            alive -= 1
            stuck = 0
            continue
        i = nxt[i]
        stuck += 1
        if stuck > alive:
            raise RuntimeError("ear clipping stalled on a malformed polygon")
    a, b, c = ring[prv[i]], ring[i], ring[nxt[i]]
    if _area2(a, b, c) <= 0.0:
        raise RuntimeError("degenerate final triangle")
    tris.append((a, b, c))
    return tris


def _blocked(ring: Sequence[Point], prv: list[int], nxt: list[int], i: int) -> bool:
    a, b, c = ring[prv[i]], ring[i], ring[nxt[i]]
    k = nxt[nxt[i]]
    stop = prv[i]
    while k != stop:
        p = ring[k]
        # coincident keyhole twins of the ear's own corners never block
        if p != a and p != b and p != c and _inside_or_on(p, a, b, c):
            return True
        k = nxt[k]
    return False


def triangulate_face(width: float, length: float, holes: Sequence[Point],
                     side: float) -> list[Tri2]:
    """Triangulate the slab face (outline minus hole squares), CCW triangles."""
    _validate_slab(width, length, holes, side)
    ring = _merged_ring(width, length, holes, side)
    tris = earclip(ring)
    want = len(ring) - 2
    if len(tris) != want:
        raise RuntimeError(f"tessellation invariant broken: {len(tris)} != {want}")
    return tris


def _validate_slab(width: float, length: float, holes: Sequence[Point],
                   side: float) -> None:
    if width <= 0 or length <= 0:
        raise ValueError("slab dimensions must be positive")
    if side <= 0:
        raise ValueError("hole side must be positive")
    half = side / 2.0
    for cx, cy in holes:
        if not (half < cx < width - half and half < cy < length - half):
            raise ValueError(f"hole at ({cx}, {cy}) does not fit inside the slab")


def slab_mesh(width: float, length: float, holes: Sequence[Point],
              side: float, depth: float) -> np.ndarray:
    """Closed outward-oriented triangle mesh of the slab, shape (T, 3, 3).

    Triangle count is exactly expected_triangle_count(len(holes)).
    """
    if depth <= 0:
        raise ValueError("depth must be positive")
    face = triangulate_face(width, length, holes, side)
    half = side / 2.0
    tris: list[tuple[tuple[float, float, float], ...]] = []

    for a, b, c in face:  # bottom, normal -z: reverse winding
        tris.append(((a[0], a[1], 0.0), (c[0], c[1], 0.0), (b[0], b[1], 0.0)))
    for a, b, c in face:  # top, normal +z
        tris.append(((a[0], a[1], depth), (b[0], b[1], depth), (c[0], c[1], depth)))

    def quad(v0, v1, v2, v3):
        tris.append((v0, v1, v2))
        tris.append((v0, v2, v3))

    w, l, d = width, length, depth
    quad((0.0, 0.0, 0.0), (w, 0.0, 0.0), (w, 0.0, d), (0.0, 0.0, d))  # south, -y
    quad((w, l, 0.0), (0.0, l, 0.0), (0.0, l, d), (w, l, d))          # north, +y
    quad((0.0, l, 0.0), (0.0, 0.0, 0.0), (0.0, 0.0, d), (0.0, l, d))  # west, -x
    quad((w, 0.0, 0.0), (w, l, 0.0), (w, l, d), (w, 0.0, d))          # east, +x

    for cx, cy in holes:  # tunnel walls face into the cavity
        x0, x1 = cx - half, cx + half
        y0, y1 = cy - half, cy + half
        quad((x1, y0, 0.0), (x0, y0, 0.0), (x0, y0, d), (x1, y0, d))  # +y
        quad((x0, y1, 0.0), (x1, y1, 0.0), (x1, y1, d), (x0, y1, d))  # -y
        quad((x0, y0, 0.0), (x0, y1, 0.0), (x0, y1, d), (x0, y0, d))  # +x
        quad((x1, y1, 0.0), (x1, y0, 0.0), (x1, y0, d), (x1, y1, d))  # -x

    out = np.array(tris, dtype=np.float64)
    want = expected_triangle_count(len(holes))
    if len(out) != want:
        raise RuntimeError(f"tessellation invariant broken: {len(out)} != {want}")
    return out


STL_HEADER_TEXT = b"slab with square through-holes; units mm"


def stl_bytes(triangles: np.ndarray) -> bytes:
    """Pack an (T, 3, 3) float array as binary little-endian STL."""
    tris = np.asarray(triangles, dtype=np.float64)
    if tris.ndim != 3 or tris.shape[1:] != (3, 3):
        raise ValueError("triangles must have shape (T, 3, 3)")
    parts = [STL_HEADER_TEXT.ljust(80, b"\0"), struct.pack("<I", len(tris))]
    for tri in tris:
        e1 = tri[1] - tri[0]
        e2 = tri[2] - tri[0]
        n = np.cross(e1, e2)
        norm = math.sqrt(float(n @ n))
        if norm == 0.0:
            raise ValueError("degenerate triangle in mesh")
        n = n / norm
        parts.append(struct.pack(
            "<12fH",
            *(float(v) for v in n),
            *(float(v) for v in tri.reshape(9)),
            0))
    return b"".join(parts)


def slab_stl(width: float, length: float, holes: Sequence[Point],
             side: float, depth: float) -> bytes:
    """Binary STL of the slab; byte-deterministic for identical inputs."""
    return stl_bytes(slab_mesh(width, length, holes, side, depth))

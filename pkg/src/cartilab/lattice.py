"""Hole lattices for flat sheets and spherical caps, plus exports.

Flat sheets get a centered rectangular grid: each hole owns a full
pitch-by-pitch cell inside the sheet outline, mirroring the unit-cell
picture (hole side b centred in a cell of side l).  Spherical caps get a
pole hole plus concentric rings spaced one pitch apart along the polar
arc, each ring holding floor(circumference / pitch) holes.

Everything here works in millimetres (fabrication land); the CLI converts
config quantities before calling in.  Exports are byte-deterministic:
identical inputs give identical CSV/JSON/STL bytes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import mesh

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


@dataclass(frozen=True)
class HoleSpec:
    """Square through-hole: side and depth (= sheet thickness)."""

    side_mm: float
    depth_mm: float

    def __post_init__(self):
        if self.side_mm <= 0 or self.depth_mm <= 0:
            raise ValueError("hole side and depth must be positive")


@dataclass(frozen=True)
class FlatSheet:
    width_mm: float
    length_mm: float

    def __post_init__(self):
        if self.width_mm <= 0 or self.length_mm <= 0:
            raise ValueError("sheet dimensions must be positive")


@dataclass(frozen=True)
class SphericalCap:
    radius_mm: float
    half_angle_rad: float

    def __post_init__(self):
        if self.radius_mm <= 0:
            raise ValueError("radius must be positive")
        if not 0.0 < self.half_angle_rad <= math.pi / 2 + 1e-12:
            raise ValueError("cap half-angle must lie in (0, pi/2]")


Surface = Union[FlatSheet, SphericalCap]


@dataclass(frozen=True)
class Layout:
    """Generated hole lattice: centers and outward surface normals, row-major."""

    surface: Surface
    centers_mm: np.ndarray  # (N, 3)
    normals: np.ndarray     # (N, 3), unit
    pitch_mm: float
    hole: HoleSpec

    def __post_init__(self):
        for arr in (self.centers_mm, self.normals):
            if arr.ndim != 2 or arr.shape[1] != 3:
                raise ValueError("centers/normals must have shape (N, 3)")
            arr.flags.writeable = False
        if len(self.centers_mm) != len(self.normals):
            raise ValueError("centers and normals must pair up")

    @property
    def hole_count(self) -> int:
        return len(self.centers_mm)


def _check_pitch_vs_hole(pitch_mm: float, hole: HoleSpec) -> None:
    # neighbouring footprints must clear each other even corner-to-corner,
    # so the pitch has to beat the square's diagonal
    if pitch_mm <= hole.side_mm * math.sqrt(2.0):
        raise ValueError("pitch must exceed the hole diagonal (footprints overlap)")


def flat_layout(width_mm: float, length_mm: float, pitch_mm: float,
                hole: HoleSpec) -> Layout:
    """Centered rectangular grid; one hole per full pitch cell.

    Per axis the count is floor(dim / pitch); the grid is centered, so
    every center keeps at least pitch/2 of margin to the sheet edge.
    Ordering is row-major (y rows, x within a row), deterministic.
    """
    surface = FlatSheet(width_mm, length_mm)
    if pitch_mm <= 0:
        raise ValueError("pitch must be positive")
    _check_pitch_vs_hole(pitch_mm, hole)
    nx = int(math.floor(width_mm / pitch_mm))
    ny = int(math.floor(length_mm / pitch_mm))
    if nx < 1 or ny < 1:
        raise ValueError("sheet too small for one hole at this pitch")
    x0 = (width_mm - nx * pitch_mm) / 2.0 + pitch_mm / 2.0
    y0 = (length_mm - ny * pitch_mm) / 2.0 + pitch_mm / 2.0
    centers = np.array([
        (x0 + ix * pitch_mm, y0 + iy * pitch_mm, 0.0)
        for iy in range(ny) for ix in range(nx)
    ], dtype=float)
    normals = np.tile((0.0, 0.0, 1.0), (len(centers), 1))
    return Layout(surface=surface, centers_mm=centers, normals=normals,
                  pitch_mm=pitch_mm, hole=hole)


def spherical_cap_layout(radius_mm: float, cap_half_angle_rad: float,
                         pitch_mm: float, hole: HoleSpec) -> Layout:
    """Pole hole plus concentric rings at polar arc spacing `pitch_mm`.

    Ring k sits at polar angle k * pitch / R and holds
    floor(2 pi R sin(phi) / pitch) holes at equal azimuth (first at
    azimuth 0).  Rings keep half a hole side of geodesic margin to the
    cap boundary; the pole hole is always present, so a cap smaller than
    the pitch degenerates to a single hole.
    """
    surface = SphericalCap(radius_mm, cap_half_angle_rad)
    if pitch_mm <= 0:
        raise ValueError("pitch must be positive")
    if pitch_mm > 2.0 * radius_mm:
        raise ValueError("pitch larger than the sphere allows")
    _check_pitch_vs_hole(pitch_mm, hole)

    points: list[tuple[float, float, float]] = [(0.0, 0.0, radius_mm)]
    # furthest usable polar arc: keep the hole footprint inside the cap
    max_arc = cap_half_angle_rad * radius_mm - hole.side_mm / 2.0
    k = 1
    while k * pitch_mm <= max_arc + 1e-12:
        phi = k * pitch_mm / radius_mm
        n = int(math.floor(2.0 * math.pi * radius_mm * math.sin(phi) / pitch_mm))
        for j in range(n):
            psi = 2.0 * math.pi * j / n
            points.append((radius_mm * math.sin(phi) * math.cos(psi),
                           radius_mm * math.sin(phi) * math.sin(psi),
                           radius_mm * math.cos(phi)))
        k += 1
    centers = np.array(points, dtype=float)
    normals = centers / radius_mm
    # ring spacing is measured along circles, but footprints live on the
    # surface: re-check pairwise geodesic distances so sparse rings on
    # tight curvature cannot sneak overlapping squares through
    if len(centers) > 1:
        cos_angle = np.clip(centers @ centers.T / (radius_mm * radius_mm),
                            -1.0, 1.0)
        geodesic = radius_mm * np.arccos(cos_angle)
        np.fill_diagonal(geodesic, np.inf)
        if float(geodesic.min()) <= hole.side_mm * math.sqrt(2.0):
            raise ValueError(
                "holes too close on this curvature (footprints overlap); "
                "increase the pitch or shrink the hole")
    return Layout(surface=surface, centers_mm=centers, normals=normals,
                  pitch_mm=pitch_mm, hole=hole)


@dataclass(frozen=True)
class CoverageReport:
    """Sampled check that every contact patch contains a hole center.

    `worst_gap_mm` is the largest geodesic distance from any sampled patch
    center to its nearest hole; coverage passes when that never exceeds the
    patch radius.  Flat sheets need no check (the patch is the whole
    contact plane), so `applicable` is False and `passed` is None.
    """

    applicable: bool
    passed: Union[bool, None]
    samples: int
    patch_radius_mm: float
    worst_gap_mm: float
    pitch_mm: float
    notes: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "passed": self.passed,
            "samples": self.samples,
            "patch_radius_mm": self.patch_radius_mm,
            "worst_gap_mm": self.worst_gap_mm,
            "pitch_mm": self.pitch_mm,
            "notes": list(self.notes),
        }


def verify_coverage(layout: Layout, depth_mm: float,
                    samples: int = 10000) -> CoverageReport:
    """Sample contact-patch centers over the cap; each patch must hold a hole.

    The patch radius is half the contact chord at pressing depth
    `depth_mm`; a quasi-uniform spiral of `samples` points stands in for
    all possible contact sites.
    """
    if isinstance(layout.surface, FlatSheet):
        return CoverageReport(
            applicable=False, passed=None, samples=0, patch_radius_mm=0.0,
            worst_gap_mm=0.0, pitch_mm=layout.pitch_mm,
            notes=("not applicable: a flat contact patch spans the sheet, "
                   "so pitch alone decides coverage",))
    cap = layout.surface
    R = cap.radius_mm
    if not 0.0 <= depth_mm <= 2.0 * R:
        raise ValueError("depth must lie in [0, 2R]")
    if samples < 1:
        raise ValueError("need at least one sample")
    # half the contact chord, used as a geodesic patch radius (conservative:
    # the chord is never longer than the arc it subtends)
    patch_radius = math.sqrt(depth_mm * (2.0 * R - depth_mm))

    i = np.arange(samples)
    z = 1.0 - (1.0 - math.cos(cap.half_angle_rad)) * (i + 0.5) / samples
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    psi = GOLDEN_ANGLE * i
    pts = R * np.column_stack((r * np.cos(psi), r * np.sin(psi), z))

    cos_angle = np.clip(pts @ layout.centers_mm.T / (R * R), -1.0, 1.0)
    geodesic = R * np.arccos(cos_angle)
    nearest = geodesic.min(axis=1)
    worst = float(nearest.max())
    passed = bool(worst <= patch_radius + 1e-12)
    return CoverageReport(applicable=True, passed=passed, samples=samples,
                          patch_radius_mm=patch_radius, worst_gap_mm=worst,
                          pitch_mm=layout.pitch_mm)


# --- exports ------------------------------------------------------------------

CSV_HEADER = "x_mm,y_mm,z_mm,nx,ny,nz"


def export_layout(layout: Layout, fmt: str) -> bytes:
    """Serialize a layout as csv, json, or (flat only) binary STL bytes."""
    if layout.hole_count == 0:
        raise ValueError("empty layout")
    if fmt == "csv":
        lines = [CSV_HEADER]
        for c, n in zip(layout.centers_mm, layout.normals):
            lines.append(",".join(repr(float(v)) for v in (*c, *n)))
        return ("\n".join(lines) + "\n").encode("ascii")
    if fmt == "json":
        if isinstance(layout.surface, FlatSheet):
            surface = {"type": "flat",
                       "width_mm": layout.surface.width_mm,
                       "length_mm": layout.surface.length_mm}
        else:
            surface = {"type": "spherical_cap",
                       "radius_mm": layout.surface.radius_mm,
                       "cap_half_angle_rad": layout.surface.half_angle_rad}
        doc = {
            "surface": surface,
            "pitch_mm": layout.pitch_mm,
            "hole": {"side_mm": layout.hole.side_mm,
                     "depth_mm": layout.hole.depth_mm},
            "holes": [
                {"center_mm": [float(v) for v in c],
                 "normal": [float(v) for v in n]}
                for c, n in zip(layout.centers_mm, layout.normals)
            ],
        }
        return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode("ascii")
    if fmt == "stl":
        if not isinstance(layout.surface, FlatSheet):
            raise ValueError("stl export unsupported for spherical layouts")
        return mesh.slab_stl(layout.surface.width_mm, layout.surface.length_mm,
                             [(float(c[0]), float(c[1])) for c in layout.centers_mm],
                             layout.hole.side_mm, layout.hole.depth_mm)
    raise ValueError(f"unknown export format '{fmt}'")

"""Lay out holes on a fingertip-sized spherical cap, then export a printable
flat test slab as binary STL.

Writes cap_holes.csv and flat_slab.stl into the working directory.
"""

import math

from cartilab.lattice import (
    HoleSpec,
    export_layout,
    flat_layout,
    spherical_cap_layout,
    verify_coverage,
)

hole = HoleSpec(side_mm=1.0, depth_mm=6.0)

cap = spherical_cap_layout(20.0, math.radians(60.0), 2.0, hole)
print(f"cap R 20 mm, half-angle 60 deg, pitch 2 mm -> {cap.hole_count} holes")
coverage = verify_coverage(cap, depth_mm=1.0)
print(f"coverage at 1 mm pressing depth: "
      f"{'PASS' if coverage.passed else 'FAIL'} "
      f"(worst gap {coverage.worst_gap_mm:.3f} mm, "
      f"patch radius {coverage.patch_radius_mm:.3f} mm)")
with open("cap_holes.csv", "wb") as fh:
    fh.write(export_layout(cap, "csv"))
print("wrote cap_holes.csv")

flat = flat_layout(14.0, 14.0, 4.0, HoleSpec(side_mm=2.0, depth_mm=6.0))
stl = export_layout(flat, "stl")
with open("flat_slab.stl", "wb") as fh:
    fh.write(stl)
print(f"wrote flat_slab.stl ({flat.hole_count} holes, {len(stl)} bytes)")

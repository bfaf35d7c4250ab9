"""Walk the stiffness chain for the reference sheet, one quantity at a time.

Run:  python3 demos/stiffness_walkthrough.py
"""

from cartilab.elasticity import REFERENCE_ASSEMBLY, REFERENCE_LOAD, deflection_report
from cartilab.quantities import PAPER_UNITS

asm = REFERENCE_ASSEMBLY
cell = asm.cell

print("reference cell: "
      f"{cell.outer_side.to('cm'):g} cm square, "
      f"{cell.hole_side.to('cm'):g} cm hole, "
      f"{cell.height.to('cm'):g} cm tall, x{asm.cell_count}")
print(f"rubber: E = {PAPER_UNITS.display(asm.material.young_modulus)}, "
      f"nu = {asm.material.poisson_ratio:g}")
print()

report = deflection_report(asm, REFERENCE_LOAD)
print(f"shear modulus   G    = {PAPER_UNITS.display(report.shear_modulus)}")
print(f"shape factor    S    = {report.shape_factor:g}")
print(f"apparent modulus E_ap = {PAPER_UNITS.display(report.apparent_modulus)}")
print(f"deflection at {PAPER_UNITS.display(report.total_load)}: "
      f"{PAPER_UNITS.display(report.deflection)}")
for w in report.warnings:
    print(f"warning: {w}")
for n in report.notes:
    print(f"note: {n}")

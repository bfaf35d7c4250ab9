"""How much fluid does the 9-cell sheet push out as the load ramps up?"""

from cartilab.elasticity import REFERENCE_ASSEMBLY
from cartilab.exudation import check_reference_constant, sheet_exudation
from cartilab.quantities import qty

print("load_kgf  deflection_cm  per_cell_cm3  sheet_cm3")
for w in (1.0, 3.4, 6.8, 10.0):
    r = sheet_exudation(REFERENCE_ASSEMBLY, qty(w, "kgf"))
    print(f"{w:8.1f}  {r.deflection.to('cm'):13.4f}  "
          f"{r.per_cell.total.to('cm3'):12.5f}  {r.sheet_total.to('cm3'):9.5f}")

print()
print("audit of the quoted per-cell constant:")
for note in check_reference_constant(REFERENCE_ASSEMBLY, qty(6.8, "kgf")).notes:
    print(f"  {note}")

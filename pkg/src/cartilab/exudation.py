"""Fluid volumes squeezed out of a compressed unit cell.

Two mechanisms move fluid when a cell compresses by delta: the insert
column above the hole loses height (axial, L1 = b^2 delta), and the
incompressible rubber bulges sideways into the hole (lateral,
L2 = nu (a^2 - b^2) delta).  Their sum factors to
(nu a^2 + b^2 - nu b^2) delta.

check_reference_constant documents a long-standing shortcut figure for
the reference design, 17W/(21x): exact fraction arithmetic shows it is a
fixed volume with the 6.8 kgf test load baked in, not a formula in W.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .quantities import LENGTH, Quantity, DimensionError
from .elasticity import (
    SheetAssembly,
    matches_reference_assembly,
    sheet_deflection,
)


def axial_exudation(hole_side: Quantity, depth: Quantity) -> Quantity:
    """Volume displaced by the insert column shortening: b^2 delta."""
    _length(hole_side, "hole_side")
    _length(depth, "depth")
    return hole_side * hole_side * depth


def lateral_exudation(poisson_ratio: float, outer_side: Quantity,
                      hole_side: Quantity, depth: Quantity) -> Quantity:
    """Volume displaced by rubber bulging into the hole: nu (a^2 - b^2) delta."""
    if not 0.0 <= poisson_ratio <= 0.5:
        raise ValueError("poisson_ratio must lie in [0, 0.5]")
    _length(outer_side, "outer_side")
    _length(hole_side, "hole_side")
    _length(depth, "depth")
    if outer_side.si <= hole_side.si:
        raise ValueError("need hole_side < outer_side")
    annulus = outer_side * outer_side - hole_side * hole_side
    return poisson_ratio * (annulus * depth)


@dataclass(frozen=True)
class ExudationResult:
    """Per-cell exuded volumes for one compression depth."""

    axial: Quantity
    lateral: Quantity
    total: Quantity  # axial + lateral, by construction


def total_exudation(poisson_ratio: float, outer_side: Quantity,
                    hole_side: Quantity, depth: Quantity) -> ExudationResult:
    """Both mechanisms for one cell; total is the exact sum of the parts."""
    l1 = axial_exudation(hole_side, depth)
    l2 = lateral_exudation(poisson_ratio, outer_side, hole_side, depth)
    return ExudationResult(axial=l1, lateral=l2, total=l1 + l2)


@dataclass(frozen=True)
class SheetExudation:
    """Exudation of a whole sheet under a total load."""

    deflection: Quantity
    per_cell: ExudationResult
    sheet_total: Quantity
    cell_count: int


def sheet_exudation(assembly: SheetAssembly, total_load: Quantity) -> SheetExudation:
    """Deflection under the load, then per-cell and sheet exuded volumes."""
    delta = sheet_deflection(assembly, total_load)
    per_cell = total_exudation(assembly.material.poisson_ratio,
                               assembly.cell.outer_side,
                               assembly.cell.hole_side, delta)
    return SheetExudation(deflection=delta, per_cell=per_cell,
                          sheet_total=per_cell.total * assembly.cell_count,
                          cell_count=assembly.cell_count)


def _length(q: Quantity, what: str) -> None:
    if not isinstance(q, Quantity) or q.dim != LENGTH:
        raise DimensionError(f"{what} must be a length quantity")
    if q.si < 0:
        raise ValueError(f"{what} must be non-negative")


# --- reference-constant erratum checker ------------------------------------

# The reference chain in exact rationals (lengths in cm, pressures in
# kgf/cm2): a = 2/5, b = 1/5, h = 3/5, nu = 1/2, E = 3, x = 9.  The
# shortcut constant rounds the apparent modulus to 21/5 before building
# the load-to-volume coefficient, so the checker does the same.
_A = Fraction(2, 5)
_B = Fraction(1, 5)
_H = Fraction(3, 5)
_NU = Fraction(1, 2)
_X = 9
_EAP_ROUNDED = Fraction(21, 5)  # kgf/cm2
_SHAPE_COEFF = Fraction(329, 100)

_LOADED_AREA = _A * _A - _B * _B                      # 3/25 cm2
_VOLUME_FACTOR = _NU * _A * _A + _B * _B - _NU * _B * _B   # 1/10 cm2
# delta per unit sheet load: h / (E_ap A_L x) -> cm per kgf
_DELTA_COEFF = _H / (_EAP_ROUNDED * _LOADED_AREA * _X)
# sheet volume per unit load: factor * delta_coeff * x -> 5/42 cm3 per kgf
SHEET_VOLUME_COEFF = _VOLUME_FACTOR * _DELTA_COEFF * _X

# The quoted shortcut, per cell: 17/(21 x) cm3.  A volume, not a rate.
REFERENCE_PER_CELL_CM3 = Fraction(17, 21 * _X)
REFERENCE_SHEET_CM3 = Fraction(17, 21)
# The single load at which the symbolic result reproduces the constant.
REFERENCE_MATCH_LOAD_KGF = REFERENCE_SHEET_CM3 / SHEET_VOLUME_COEFF  # 34/5


@dataclass(frozen=True)
class ReferenceConstantReport:
    """How the quoted 17W/(21x) figure relates to the symbolic pipeline.

    Structural fields are exact Fractions so the statements hold by
    arithmetic, not by tolerance.  Load-specific fields are floats and
    present only when a load was supplied.
    """

    applicable: bool
    cell_count: int
    symbolic_sheet_coeff_cm3_per_kgf: Fraction = SHEET_VOLUME_COEFF
    symbolic_per_cell_coeff_cm3_per_kgf: Fraction = SHEET_VOLUME_COEFF / _X
    quoted_per_cell_cm3: Fraction = REFERENCE_PER_CELL_CM3
    quoted_sheet_cm3: Fraction = REFERENCE_SHEET_CM3
    match_load_kgf: Fraction = REFERENCE_MATCH_LOAD_KGF
    queried_load_kgf: Optional[float] = None
    symbolic_per_cell_at_load_cm3: Optional[float] = None
    literal_per_cell_at_load_cm3: Optional[float] = None
    constant_holds_at_load: Optional[bool] = None
    notes: tuple[str, ...] = field(default=())

    def as_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "cell_count": self.cell_count,
            "symbolic_sheet_coeff_cm3_per_kgf": str(self.symbolic_sheet_coeff_cm3_per_kgf),
            "symbolic_per_cell_coeff_cm3_per_kgf": str(self.symbolic_per_cell_coeff_cm3_per_kgf),
            "quoted_per_cell_cm3": str(self.quoted_per_cell_cm3),
            "quoted_sheet_cm3": str(self.quoted_sheet_cm3),
            "match_load_kgf": str(self.match_load_kgf),
            "queried_load_kgf": self.queried_load_kgf,
            "symbolic_per_cell_at_load_cm3": self.symbolic_per_cell_at_load_cm3,
            "literal_per_cell_at_load_cm3": self.literal_per_cell_at_load_cm3,
            "constant_holds_at_load": self.constant_holds_at_load,
            "notes": list(self.notes),
        }


def check_reference_constant(assembly: SheetAssembly,
                             load: Optional[Quantity] = None) -> ReferenceConstantReport:
    """Audit the quoted 17W/(21x) exudation figure against the symbolic chain.

    For the reference assembly the symbolic sheet volume is (5/42) W cm3
    (per cell 5W/(42x), apparent modulus rounded to 21/5 kgf/cm2 as the
    shortcut itself does).  Equating to the quoted constant shows it holds
    only at W = 34/5 kgf; with a load supplied, the report also evaluates
    both readings at that load and flags the mismatch elsewhere.
    """
    if not matches_reference_assembly(assembly):
        return ReferenceConstantReport(
            applicable=False,
            cell_count=assembly.cell_count,
            notes=("quoted constant is tied to the reference geometry and "
                   "material; not applicable to this assembly",),
        )

    notes = [
        "symbolic pipeline: sheet volume 5W/42 cm3, per cell 5W/(42x) cm3 "
        "(apparent modulus rounded to 21/5 kgf/cm2)",
        "the quoted 17W/(21x) figure already contains the 6.8 kgf test "
        "load: as a constant it equals 17/(21x) cm3 per cell and matches "
        "the symbolic result only at W = 34/5 kgf",
    ]
    queried = symbolic_at = literal_at = None
    holds = None
    if load is not None:
        queried = load.to("kgf")
        symbolic_at = float(SHEET_VOLUME_COEFF / _X) * queried
        literal_at = float(REFERENCE_PER_CELL_CM3) * queried
        holds = abs(queried - float(REFERENCE_MATCH_LOAD_KGF)) <= 1e-9 * float(REFERENCE_MATCH_LOAD_KGF)
        if holds:
            notes.append(
                "at W = 6.8 kgf the symbolic per-cell volume equals the quoted "
                "constant 17/(21x) cm3; re-multiplying the printed form by W "
                "anyway would double-count the load")
        else:
            notes.append(
                f"at W = {queried:.6g} kgf the symbolic per-cell volume is "
                f"{symbolic_at:.6g} cm3, not the quoted constant "
                f"{float(REFERENCE_PER_CELL_CM3):.6g} cm3; the constant holds "
                "only at 6.8 kgf")
    return ReferenceConstantReport(
        applicable=True,
        cell_count=assembly.cell_count,
        queried_load_kgf=queried,
        symbolic_per_cell_at_load_cm3=symbolic_at,
        literal_per_cell_at_load_cm3=literal_at,
        constant_holds_at_load=holds,
        notes=tuple(notes),
    )

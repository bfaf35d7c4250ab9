"""Dimension-checked quantities with SI-canonical storage.

Three base dimensions cover everything the toolkit computes: length, mass,
and force.  Force is a base dimension (not mass*length/time^2) because the
input literature mixes gravitational units (kgf) with SI, and the whole
point of this layer is to keep those from silently cross-contaminating.
Every Quantity stores its value in the canonical SI unit of its dimension
(m, kg, N and products thereof); the unit it was created with is kept for
presentation and round-tripping.

Conversion constants are exact by definition: 1 lb = 0.45359237 kg,
1 kgf = 9.80665 N, 1 kgf/cm2 = 98066.5 Pa.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

STANDARD_GRAVITY_M_S2 = 9.80665  # standard gravity, exact by convention
KG_PER_LB = 0.45359237  # avoirdupois pound, exact by definition

# A dimension is a tuple of integer exponents over (length, mass, force).
Dim = tuple[int, int, int]

DIMENSIONLESS: Dim = (0, 0, 0)
LENGTH: Dim = (1, 0, 0)
AREA: Dim = (2, 0, 0)
VOLUME: Dim = (3, 0, 0)
MASS: Dim = (0, 1, 0)
FORCE: Dim = (0, 0, 1)
PRESSURE: Dim = (-2, 0, 1)

_DIM_NAMES = {
    DIMENSIONLESS: "dimensionless",
    LENGTH: "length",
    AREA: "area",
    VOLUME: "volume",
    MASS: "mass",
    FORCE: "force",
    PRESSURE: "pressure",
}

# unit name -> (dimension, SI factor).  Names are case-sensitive and these
# exact spellings are the external contract (config files, CLI output).
UNITS: dict[str, tuple[Dim, float]] = {
    "m": (LENGTH, 1.0),
    "cm": (LENGTH, 1e-2),
    "mm": (LENGTH, 1e-3),
    "m2": (AREA, 1.0),
    "cm2": (AREA, 1e-4),
    "mm2": (AREA, 1e-6),
    "m3": (VOLUME, 1.0),
    "cm3": (VOLUME, 1e-6),
    "mm3": (VOLUME, 1e-9),
    "kg": (MASS, 1.0),
    "g": (MASS, 1e-3),
    "lb": (MASS, KG_PER_LB),
    "N": (FORCE, 1.0),
    "kgf": (FORCE, STANDARD_GRAVITY_M_S2),
    "Pa": (PRESSURE, 1.0),
    "kPa": (PRESSURE, 1e3),
    "MPa": (PRESSURE, 1e6),
    "kgf/cm2": (PRESSURE, STANDARD_GRAVITY_M_S2 / 1e-4),
}

# Canonical SI unit per dimension, for labelling arithmetic results.
_SI_UNIT: dict[Dim, str] = {
    LENGTH: "m",
    AREA: "m2",
    VOLUME: "m3",
    MASS: "kg",
    FORCE: "N",
    PRESSURE: "Pa",
}


class DimensionError(TypeError):
    """Raised when an operation mixes incompatible dimensions."""


def _dim_name(dim: Dim) -> str:
    return _DIM_NAMES.get(dim, f"L^{dim[0]} M^{dim[1]} F^{dim[2]}")


def _combine(a: Dim, b: Dim, sign: int) -> Dim:
    return (a[0] + sign * b[0], a[1] + sign * b[1], a[2] + sign * b[2])


@dataclass(frozen=True)
class Quantity:
    """A value with a dimension, stored in canonical SI.

    `si` is the magnitude in the canonical SI unit of `dim`; `unit` is the
    presentation unit the quantity was built with.  Arithmetic composes
    dimensions and labels results with the canonical SI unit.  Operations
    whose result is dimensionless return a plain float.
    """

    si: float
    dim: Dim
    unit: str

    @property
    def value(self) -> float:
        """Magnitude expressed in the presentation unit."""
        return self.si / UNITS[self.unit][1]

    def to(self, unit: str) -> float:
        """Magnitude of this quantity expressed in `unit`."""
        target_dim, factor = _lookup(unit)
        if target_dim != self.dim:
            raise DimensionError(
                f"cannot express {_dim_name(self.dim)} in '{unit}' ({_dim_name(target_dim)})"
            )
        return self.si / factor

    def __add__(self, other: "Quantity") -> "Quantity":
        if not isinstance(other, Quantity):
            return NotImplemented
        if other.dim != self.dim:
            raise DimensionError(
                f"cannot add {_dim_name(other.dim)} to {_dim_name(self.dim)}"
            )
        return Quantity(self.si + other.si, self.dim, self.unit)

    def __sub__(self, other: "Quantity") -> "Quantity":
        if not isinstance(other, Quantity):
            return NotImplemented
        if other.dim != self.dim:
            raise DimensionError(
                f"cannot subtract {_dim_name(other.dim)} from {_dim_name(self.dim)}"
            )
        return Quantity(self.si - other.si, self.dim, self.unit)

    def __neg__(self) -> "Quantity":
        return Quantity(-self.si, self.dim, self.unit)

    def __mul__(self, other: Union["Quantity", float, int]) -> Union["Quantity", float]:
        if isinstance(other, Quantity):
            dim = _combine(self.dim, other.dim, +1)
            if dim == DIMENSIONLESS:
                return self.si * other.si
            return Quantity(self.si * other.si, dim, _si_label(dim))
        if isinstance(other, (int, float)):
            return Quantity(self.si * other, self.dim, self.unit)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: Union["Quantity", float, int]) -> Union["Quantity", float]:
        if isinstance(other, Quantity):
            dim = _combine(self.dim, other.dim, -1)
            if dim == DIMENSIONLESS:
                return self.si / other.si
            return Quantity(self.si / other.si, dim, _si_label(dim))
        if isinstance(other, (int, float)):
            return Quantity(self.si / other, self.dim, self.unit)
        return NotImplemented

    def __rtruediv__(self, other: Union[float, int]) -> "Quantity":
        if isinstance(other, (int, float)):
            dim = _combine(DIMENSIONLESS, self.dim, -1)
            return Quantity(other / self.si, dim, _si_label(dim))
        return NotImplemented

    def _cmp_si(self, other: "Quantity") -> tuple[float, float]:
        if not isinstance(other, Quantity) or other.dim != self.dim:
            raise DimensionError("comparison requires matching dimensions")
        return self.si, other.si

    def __lt__(self, other: "Quantity") -> bool:
        a, b = self._cmp_si(other)
        return a < b

    def __le__(self, other: "Quantity") -> bool:
        a, b = self._cmp_si(other)
        return a <= b

    def __gt__(self, other: "Quantity") -> bool:
        a, b = self._cmp_si(other)
        return a > b

    def __ge__(self, other: "Quantity") -> bool:
        a, b = self._cmp_si(other)
        return a >= b

    def __repr__(self) -> str:
        return f"Quantity({self.value!r}, {self.unit!r})"


def _lookup(unit: str) -> tuple[Dim, float]:
    try:
        return UNITS[unit]
    except KeyError:
        raise ValueError(f"unknown unit '{unit}'") from None


def _si_label(dim: Dim) -> str:
    # derived dims without a registered unit keep a structural label; such
    # quantities can still multiply/divide but not be presented directly
    return _SI_UNIT.get(dim, f"L{dim[0]}M{dim[1]}F{dim[2]}")


def qty(value: float, unit: str) -> Quantity:
    """Build a Quantity from a magnitude and a unit name."""
    dim, factor = _lookup(unit)
    return Quantity(value * factor, dim, unit)


def convert(q: Quantity, unit: str) -> Quantity:
    """Re-express `q` in `unit` (same dimension, same physical value)."""
    return qty(q.to(unit), unit)


@dataclass(frozen=True)
class UnitSystem:
    """Presentation profile: which unit each dimension is reported in.

    Two stock profiles exist.  PAPER_UNITS reports in the gravitational
    cm / kgf / kgf/cm2 system; SI_UNITS in mm / N / MPa (engineering SI).
    Internally everything is SI regardless, so numerical results never
    depend on the profile.
    """

    name: str
    length: str
    force: str
    pressure: str
    volume: str
    gravity_m_s2: float = STANDARD_GRAVITY_M_S2

    def display_unit(self, dim: Dim) -> str:
        table = {LENGTH: self.length, FORCE: self.force,
                 PRESSURE: self.pressure, VOLUME: self.volume}
        try:
            return table[dim]
        except KeyError:
            return _si_label(dim)

    def display(self, q: Quantity, fmt: str = "{:.6g}") -> str:
        unit = self.display_unit(q.dim)
        return fmt.format(q.to(unit)) + f" {unit}"


PAPER_UNITS = UnitSystem(name="paper", length="cm", force="kgf",
                         pressure="kgf/cm2", volume="cm3")
SI_UNITS = UnitSystem(name="si", length="mm", force="N",
                      pressure="MPa", volume="cm3")


def unit_system(name: str) -> UnitSystem:
    if name == "paper":
        return PAPER_UNITS
    if name == "si":
        return SI_UNITS
    raise ValueError(f"unknown unit system '{name}' (expected 'paper' or 'si')")


def mass_to_load(mass: Quantity, system: UnitSystem = SI_UNITS) -> Quantity:
    """Weight force of a mass under the system's gravity.

    In the paper profile a 1 kg mass weighs exactly 1 kgf by construction;
    in SI the same mass weighs 9.80665 N.  Same physical force either way.
    """
    if mass.dim != MASS:
        raise DimensionError(f"mass_to_load needs a mass, got {_dim_name(mass.dim)}")
    return Quantity(mass.si * system.gravity_m_s2, FORCE, system.force)

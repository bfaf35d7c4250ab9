"""Toolkit configuration: strict TOML with explicit units.

One file describes the sheet under study: material constants, unit-cell
geometry, sheet layout parameters, and simulation defaults.  Validation
is strict - unknown keys anywhere are rejected, and every dimensioned
value names its unit from the allowed set - so a typo fails loudly
instead of silently running with a default.

The bundled reference.toml reproduces the worked reference design
(3x3 sheet, 4/2/6 mm cells, E = 3 kgf/cm2).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .quantities import (
    FORCE,
    MASS,
    Quantity,
    STANDARD_GRAVITY_M_S2,
    UnitSystem,
    mass_to_load,
    qty,
    unit_system,
)
from .elasticity import MaterialSpec, SheetAssembly, UnitCell
from .cycles import (
    DEFAULT_CAPSULE_POOL_CM3,
    DEFAULT_ETA,
    DEFAULT_POROSITY,
    DEFAULT_RHO,
    DEFAULT_RHO_DIRECT,
    FrictionCalibration,
    default_calibration,
)

# the unit spellings a config file may use, by field kind
LENGTH_UNITS = ("mm", "cm", "m")
PRESSURE_UNITS = ("MPa", "kgf/cm2")
LOAD_UNITS = ("N", "kgf", "lb", "kg")  # masses are converted via gravity


class ConfigError(ValueError):
    """Invalid or unknown configuration contents."""


@dataclass(frozen=True)
class SimConfig:
    """Cycle-simulation defaults (see cycles module for semantics)."""

    eta: float = DEFAULT_ETA
    rho: float = DEFAULT_RHO
    rho_direct: float = DEFAULT_RHO_DIRECT
    porosity: float = DEFAULT_POROSITY
    capsule_pool_cm3: float = DEFAULT_CAPSULE_POOL_CM3
    base_sheet_volume_cm3: Optional[float] = None
    mu_dry: float = 0.079
    mu_wet: float = 0.053
    film_threshold_cm3: Optional[float] = None


@dataclass(frozen=True)
class ToolkitConfig:
    """Validated toolkit settings; the single source every command reads."""

    units: UnitSystem
    material: MaterialSpec
    cell: UnitCell
    cell_count: int
    design_pitch_mm: float
    hole_gap_mm: float
    pitch_is_center_to_center: bool
    has_base_sheet: bool
    design_load: Quantity
    sim: SimConfig = field(default_factory=SimConfig)
    friction_increments_g: dict[str, float] = field(default_factory=dict)

    @property
    def assembly(self) -> SheetAssembly:
        return SheetAssembly(cell=self.cell, cell_count=self.cell_count,
                             material=self.material)

    @property
    def layout_pitch_mm(self) -> float:
        """Center-to-center pitch the layout generator should use."""
        if self.pitch_is_center_to_center:
            return self.design_pitch_mm
        return self.hole_gap_mm + self.cell.hole_side.to("mm")

    def calibration(self) -> FrictionCalibration:
        threshold = self.sim.film_threshold_cm3
        if threshold is None:
            threshold = default_calibration(self.assembly).film_threshold_cm3
        return FrictionCalibration(film_threshold_cm3=threshold,
                                   mu_dry=self.sim.mu_dry,
                                   mu_wet=self.sim.mu_wet)


def _take(table: dict, allowed: dict[str, object], section: str) -> dict:
    """Pop known keys with defaults; reject anything unexpected."""
    unknown = set(table) - set(allowed)
    if unknown:
        raise ConfigError(f"[{section}] unknown keys: {sorted(unknown)}")
    return {k: table.get(k, default) for k, default in allowed.items()}


def _unit_of(value, unit: str, allowed: tuple[str, ...], section: str,
             key: str) -> Quantity:
    if unit not in allowed:
        raise ConfigError(
            f"[{section}] {key}: unit '{unit}' not allowed (use one of {allowed})")
    try:
        return qty(float(value), unit)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"[{section}] {key}: {exc}") from None


def parse_config(text: str) -> ToolkitConfig:
    """Parse and validate a TOML config document."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML: {exc}") from None

    unknown = set(doc) - {"units", "material", "cell", "sheet", "sim", "friction"}
    if unknown:
        raise ConfigError(f"unknown sections: {sorted(unknown)}")

    u = _take(doc.get("units", {}),
              {"mode": "paper", "gravity_m_s2": STANDARD_GRAVITY_M_S2}, "units")
    try:
        base = unit_system(str(u["mode"]))
    except ValueError as exc:
        raise ConfigError(f"[units] {exc}") from None
    units = UnitSystem(name=base.name, length=base.length, force=base.force,
                       pressure=base.pressure, volume=base.volume,
                       gravity_m_s2=float(u["gravity_m_s2"]))

    m = _take(doc.get("material", {}),
              {"young_modulus": 3.0, "young_modulus_unit": "kgf/cm2",
               "poisson_ratio": 0.5, "shore_hardness_a": None}, "material")
    try:
        material = MaterialSpec(
            young_modulus=_unit_of(m["young_modulus"],
                                   str(m["young_modulus_unit"]),
                                   PRESSURE_UNITS, "material", "young_modulus"),
            poisson_ratio=float(m["poisson_ratio"]),
            shore_hardness_a=(None if m["shore_hardness_a"] is None
                              else float(m["shore_hardness_a"])))
    except ValueError as exc:
        raise ConfigError(f"[material] {exc}") from None

    c = _take(doc.get("cell", {}),
              {"outer_side": 4.0, "hole_side": 2.0, "height": 6.0,
               "unit": "mm"}, "cell")
    unit = str(c["unit"])
    try:
        cell = UnitCell(
            outer_side=_unit_of(c["outer_side"], unit, LENGTH_UNITS, "cell", "outer_side"),
            hole_side=_unit_of(c["hole_side"], unit, LENGTH_UNITS, "cell", "hole_side"),
            height=_unit_of(c["height"], unit, LENGTH_UNITS, "cell", "height"))
    except ValueError as exc:
        raise ConfigError(f"[cell] {exc}") from None

    s = _take(doc.get("sheet", {}),
              {"cell_count": 9, "design_pitch_mm": 2.0, "hole_gap_mm": 2.0,
               "pitch_is_center_to_center": False, "has_base_sheet": True,
               "design_load": 6.8, "design_load_unit": "kgf"}, "sheet")
    load_unit = str(s["design_load_unit"])
    load_q = _unit_of(s["design_load"], load_unit, LOAD_UNITS, "sheet", "design_load")
    if load_q.dim == MASS:
        load_q = mass_to_load(load_q, units)
    elif load_q.dim != FORCE:
        raise ConfigError("[sheet] design_load must be a force or a mass")
    if float(s["design_pitch_mm"]) <= 0 or float(s["hole_gap_mm"]) <= 0:
        raise ConfigError("[sheet] pitch and gap must be positive")

    si = _take(doc.get("sim", {}),
               {"eta": DEFAULT_ETA, "rho": DEFAULT_RHO,
                "rho_direct": DEFAULT_RHO_DIRECT, "porosity": DEFAULT_POROSITY,
                "capsule_pool_cm3": DEFAULT_CAPSULE_POOL_CM3,
                "base_sheet_volume_cm3": None,
                "mu_dry": 0.079, "mu_wet": 0.053,
                "film_threshold_cm3": None}, "sim")
    sim = SimConfig(
        eta=float(si["eta"]), rho=float(si["rho"]),
        rho_direct=float(si["rho_direct"]), porosity=float(si["porosity"]),
        capsule_pool_cm3=float(si["capsule_pool_cm3"]),
        base_sheet_volume_cm3=(None if si["base_sheet_volume_cm3"] is None
                               else float(si["base_sheet_volume_cm3"])),
        mu_dry=float(si["mu_dry"]), mu_wet=float(si["mu_wet"]),
        film_threshold_cm3=(None if si["film_threshold_cm3"] is None
                            else float(si["film_threshold_cm3"])))
    for name in ("eta", "rho", "rho_direct"):
        if not 0.0 <= getattr(sim, name) <= 1.0:
            raise ConfigError(f"[sim] {name} must lie in [0, 1]")
    if sim.mu_dry <= sim.mu_wet:
        raise ConfigError("[sim] mu_dry must exceed mu_wet")

    f = _take(doc.get("friction", {}), {"increments_g": {}}, "friction")
    increments: dict[str, float] = {}
    if not isinstance(f["increments_g"], dict):
        raise ConfigError("[friction] increments_g must be a table")
    for condition, inc in f["increments_g"].items():
        try:
            increments[str(condition)] = float(inc)
        except (TypeError, ValueError):
            raise ConfigError(
                f"[friction] increments_g['{condition}'] must be a number") from None
        if increments[str(condition)] <= 0:
            raise ConfigError(
                f"[friction] increments_g['{condition}'] must be positive")

    return ToolkitConfig(
        units=units, material=material, cell=cell,
        cell_count=int(s["cell_count"]),
        design_pitch_mm=float(s["design_pitch_mm"]),
        hole_gap_mm=float(s["hole_gap_mm"]),
        pitch_is_center_to_center=bool(s["pitch_is_center_to_center"]),
        has_base_sheet=bool(s["has_base_sheet"]),
        design_load=load_q, sim=sim, friction_increments_g=increments)


def load_config(path: str) -> ToolkitConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def default_config() -> ToolkitConfig:
    """The bundled reference-design configuration."""
    text = resources.files("cartilab.data").joinpath("reference.toml").read_text("utf-8")
    return parse_config(text)

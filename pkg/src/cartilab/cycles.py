"""Quasi-static load/wipe/unload cycling of the sheet's fluid inventory.

Five compartments hold all fluid: the absorbent inserts, the optional
absorbent base sheet beneath them, the surface film, the surrounding
capsule pool, and the running total removed by wiping.  Each protocol
step moves fluid between compartments and nothing is created or lost, so
the five-way sum is conserved to rounding.

Steps are event-based; there is no clock.  A Load squeezes fluid from the
inserts to the surface (at most the demand eta * sheet exudation at that
load); a Wipe collects the film; an Unload lets the sheet re-wick: base
sheet first refills from the pool, then the inserts draw a fraction rho
of their deficit from the base, or rho_direct straight from the pool when
no base sheet is fitted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence, Union

from .quantities import MASS, Quantity, qty, mass_to_load
from .elasticity import (
    MaterialSpec,
    REFERENCE_ASSEMBLY,
    SheetAssembly,
    UnitCell,
)
from .exudation import sheet_exudation

DEFAULT_ETA = 1.0
DEFAULT_RHO = 1.0
DEFAULT_RHO_DIRECT = 0.2
DEFAULT_POROSITY = 0.9
DEFAULT_CAPSULE_POOL_CM3 = 10.0
# Equivalent thickness assumed for the base sheet when its volume is not
# given: footprint times 0.3 cm.  A free parameter, not a measured value.
DEFAULT_BASE_THICKNESS_CM = 0.3


class ProtocolError(ValueError):
    """Malformed protocol document or step list."""


class ConservationError(AssertionError):
    """Total fluid changed beyond rounding; indicates a simulator bug."""


@dataclass(frozen=True)
class ReservoirState:
    """Fluid inventory snapshot, volumes in cm3."""

    insert_fluid: float
    insert_capacity: float
    base_fluid: float
    base_capacity: float
    surface_film: float
    capsule_pool: float
    wiped_total: float
    has_base_sheet: bool

    def __post_init__(self):
        if not self.has_base_sheet and (self.base_fluid or self.base_capacity):
            raise ValueError("base compartment must be zero without a base sheet")
        for name in ("insert_fluid", "base_fluid", "surface_film",
                     "capsule_pool", "wiped_total"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.insert_fluid > self.insert_capacity * (1 + 1e-12):
            raise ValueError("insert_fluid exceeds capacity")
        if self.base_fluid > self.base_capacity * (1 + 1e-12):
            raise ValueError("base_fluid exceeds capacity")

    @property
    def total_fluid(self) -> float:
        return (self.insert_fluid + self.base_fluid + self.surface_film
                + self.capsule_pool + self.wiped_total)


@dataclass(frozen=True)
class LoadStep:
    mass: Quantity

    def __post_init__(self):
        if self.mass.dim != MASS:
            raise ProtocolError("load step needs a mass")
        if self.mass.si < 0:
            raise ProtocolError("load mass must be non-negative")


@dataclass(frozen=True)
class WipeStep:
    pass


@dataclass(frozen=True)
class UnloadStep:
    pass


Step = Union[LoadStep, WipeStep, UnloadStep]


@dataclass(frozen=True)
class Protocol:
    """Ordered steps plus the sheet they act on and the transfer fractions."""

    steps: tuple[Step, ...]
    assembly: SheetAssembly
    eta: float = DEFAULT_ETA
    rho: float = DEFAULT_RHO
    rho_direct: float = DEFAULT_RHO_DIRECT

    def __post_init__(self):
        for name in ("eta", "rho", "rho_direct"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ProtocolError(f"{name} must lie in [0, 1]")


def make_state(assembly: SheetAssembly, *,
               porosity: float = DEFAULT_POROSITY,
               has_base_sheet: bool = True,
               capsule_pool_cm3: float = DEFAULT_CAPSULE_POOL_CM3,
               base_sheet_volume_cm3: Optional[float] = None,
               insert_fill: float = 1.0,
               base_fill: float = 1.0) -> ReservoirState:
    """Initial inventory for a sheet: capacities from geometry and porosity."""
    if not 0.0 < porosity <= 1.0:
        raise ValueError("porosity must lie in (0, 1]")
    for name, v in (("insert_fill", insert_fill), ("base_fill", base_fill)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1]")
    if capsule_pool_cm3 < 0:
        raise ValueError("capsule_pool_cm3 must be non-negative")
    insert_cap = (assembly.cell_count
                  * assembly.cell.hole_volume.to("cm3") * porosity)
    if has_base_sheet:
        if base_sheet_volume_cm3 is None:
            footprint = (assembly.cell_count
                         * (assembly.cell.outer_side * assembly.cell.outer_side).to("cm2"))
            base_sheet_volume_cm3 = footprint * DEFAULT_BASE_THICKNESS_CM
        if base_sheet_volume_cm3 < 0:
            raise ValueError("base_sheet_volume_cm3 must be non-negative")
        base_cap = base_sheet_volume_cm3 * porosity
    else:
        base_cap = 0.0
    return ReservoirState(
        insert_fluid=insert_cap * insert_fill,
        insert_capacity=insert_cap,
        base_fluid=base_cap * base_fill if has_base_sheet else 0.0,
        base_capacity=base_cap,
        surface_film=0.0,
        capsule_pool=capsule_pool_cm3,
        wiped_total=0.0,
        has_base_sheet=has_base_sheet,
    )


def step_load(state: ReservoirState, mass: Quantity,
              protocol: Protocol) -> tuple[ReservoirState, float]:
    """Squeeze fluid to the surface; starved inserts exude what they have."""
    demand = (protocol.eta
              * sheet_exudation(protocol.assembly,
                                mass_to_load(mass)).sheet_total.to("cm3"))
    exuded = min(demand, state.insert_fluid)
    new = replace(state,
                  insert_fluid=state.insert_fluid - exuded,
                  surface_film=state.surface_film + exuded)
    return new, exuded


def step_wipe(state: ReservoirState) -> tuple[ReservoirState, float]:
    """Collect the surface film into the wiped total."""
    wiped = state.surface_film
    new = replace(state, surface_film=0.0,
                  wiped_total=state.wiped_total + wiped)
    return new, wiped


def step_unload(state: ReservoirState,
                protocol: Protocol) -> tuple[ReservoirState, float]:
    """Re-wick the inserts; returns the volume that reached them.

    With a base sheet the pool tops up the base first, then the inserts
    draw rho of their deficit from the base.  Without one the inserts
    draw only rho_direct of the deficit straight from the pool.
    """
    if state.has_base_sheet:
        into_base = min(state.capsule_pool,
                        state.base_capacity - state.base_fluid)
        pool = state.capsule_pool - into_base
        base = state.base_fluid + into_base
        deficit = state.insert_capacity - state.insert_fluid
        into_inserts = min(protocol.rho * deficit, base)
        new = replace(state,
                      capsule_pool=pool,
                      base_fluid=base - into_inserts,
                      insert_fluid=state.insert_fluid + into_inserts)
    else:
        deficit = state.insert_capacity - state.insert_fluid
        into_inserts = min(protocol.rho_direct * deficit, state.capsule_pool)
        new = replace(state,
                      capsule_pool=state.capsule_pool - into_inserts,
                      insert_fluid=state.insert_fluid + into_inserts)
    return new, into_inserts


@dataclass(frozen=True)
class FrictionCalibration:
    """Endpoints of the film-to-friction map: dry and fully wetted."""

    film_threshold_cm3: float
    mu_dry: float = 0.079
    mu_wet: float = 0.053

    def __post_init__(self):
        if self.mu_dry <= self.mu_wet:
            raise ValueError("mu_dry must exceed mu_wet")
        if self.film_threshold_cm3 <= 0:
            raise ValueError("film threshold must be positive")


def default_calibration(assembly: SheetAssembly = REFERENCE_ASSEMBLY) -> FrictionCalibration:
    """Dry/wet endpoints 0.079/0.053; threshold = one full 8 lb exudation."""
    threshold = sheet_exudation(
        assembly, mass_to_load(qty(8.0, "lb"))).sheet_total.to("cm3")
    return FrictionCalibration(film_threshold_cm3=threshold)


def friction_estimate(state: ReservoirState,
                      calibration: FrictionCalibration) -> float:
    """Friction estimate from film volume: linear from mu_dry down to mu_wet."""
    film = state.surface_film
    if film <= 0.0:
        return calibration.mu_dry
    if film >= calibration.film_threshold_cm3:
        return calibration.mu_wet
    frac = film / calibration.film_threshold_cm3
    return calibration.mu_dry + (calibration.mu_wet - calibration.mu_dry) * frac


@dataclass(frozen=True)
class StepRecord:
    """One executed step: 1-based index, action label, resulting state."""

    index: int
    action: str
    state: ReservoirState
    exuded: float
    mu_est: float


def run_protocol(protocol: Protocol, initial: ReservoirState,
                 calibration: Optional[FrictionCalibration] = None) -> list[StepRecord]:
    """Execute every step, checking fluid conservation after each one.

    Deterministic: the same protocol and initial state give a bit-identical
    series.  `exuded` is the load-step transfer (zero for wipe/unload).
    """
    if calibration is None:
        calibration = default_calibration(protocol.assembly)
    total0 = initial.total_fluid
    tol = 1e-12 * max(total0, 1.0)
    records: list[StepRecord] = []
    state = initial
    for i, step in enumerate(protocol.steps, start=1):
        if isinstance(step, LoadStep):
            state, exuded = step_load(state, step.mass, protocol)
            action = "load"
        elif isinstance(step, WipeStep):
            state, _ = step_wipe(state)
            exuded, action = 0.0, "wipe"
        elif isinstance(step, UnloadStep):
            state, _ = step_unload(state, protocol)
            exuded, action = 0.0, "unload"
        else:
            raise ProtocolError(f"unknown step type {type(step).__name__}")
        if abs(state.total_fluid - total0) > tol:
            raise ConservationError(
                f"step {i}: total fluid {state.total_fluid!r} != {total0!r}")
        records.append(StepRecord(index=i, action=action, state=state,
                                  exuded=exuded,
                                  mu_est=friction_estimate(state, calibration)))
    return records


def per_cycle_exudation(records: Sequence[StepRecord]) -> list[float]:
    """Exuded volume of each load step, in order (one entry per cycle)."""
    return [r.exuded for r in records if r.action == "load"]


SERIES_COLUMNS = ("step", "action", "insert_fluid", "base_fluid",
                  "surface_film", "capsule_pool", "wiped_total",
                  "exuded", "mu_est")


def series_to_csv(records: Sequence[StepRecord]) -> str:
    """Time series as CSV, full-precision values, header always present."""
    lines = [",".join(SERIES_COLUMNS)]
    for r in records:
        s = r.state
        lines.append(",".join([
            str(r.index), r.action,
            repr(s.insert_fluid), repr(s.base_fluid), repr(s.surface_film),
            repr(s.capsule_pool), repr(s.wiped_total),
            repr(r.exuded), repr(r.mu_est),
        ]))
    return "\n".join(lines) + "\n"


# --- protocol documents -------------------------------------------------------

_PARAM_KEYS = {
    "eta", "rho", "rho_direct", "porosity", "has_base_sheet",
    "capsule_pool_cm3", "base_sheet_volume_cm3", "insert_fill", "base_fill",
}
_ASSEMBLY_KEYS = {
    "outer_side_cm", "hole_side_cm", "height_cm", "cell_count",
    "young_modulus", "young_modulus_unit", "poisson_ratio",
}


def _parse_assembly(doc) -> SheetAssembly:
    if doc == "reference":
        return REFERENCE_ASSEMBLY
    if not isinstance(doc, dict):
        raise ProtocolError("assembly must be an object or the string 'reference'")
    unknown = set(doc) - _ASSEMBLY_KEYS
    if unknown:
        raise ProtocolError(f"unknown assembly keys: {sorted(unknown)}")
    missing = {"outer_side_cm", "hole_side_cm", "height_cm",
               "cell_count", "young_modulus"} - set(doc)
    if missing:
        raise ProtocolError(f"assembly missing keys: {sorted(missing)}")
    try:
        cell = UnitCell(outer_side=qty(float(doc["outer_side_cm"]), "cm"),
                        hole_side=qty(float(doc["hole_side_cm"]), "cm"),
                        height=qty(float(doc["height_cm"]), "cm"))
        material = MaterialSpec(
            young_modulus=qty(float(doc["young_modulus"]),
                              str(doc.get("young_modulus_unit", "kgf/cm2"))),
            poisson_ratio=float(doc.get("poisson_ratio", 0.5)))
        return SheetAssembly(cell=cell, cell_count=int(doc["cell_count"]),
                             material=material)
    except (ValueError, TypeError) as exc:
        raise ProtocolError(f"bad assembly: {exc}") from None


def _parse_step(i: int, doc) -> Step:
    if not isinstance(doc, dict) or len(doc) != 1:
        raise ProtocolError(f"step {i}: each step is an object with one key")
    key, value = next(iter(doc.items()))
    if key == "load_lb":
        return LoadStep(mass=qty(float(value), "lb"))
    if key == "load_kg":
        return LoadStep(mass=qty(float(value), "kg"))
    if key == "wipe":
        if value is not True:
            raise ProtocolError(f"step {i}: wipe must be true")
        return WipeStep()
    if key == "unload":
        if value is not True:
            raise ProtocolError(f"step {i}: unload must be true")
        return UnloadStep()
    raise ProtocolError(f"step {i}: unknown step key '{key}'")


def load_protocol(text: str,
                  defaults: Optional[Mapping[str, object]] = None
                  ) -> tuple[Protocol, ReservoirState]:
    """Parse a protocol document (JSON) into a Protocol and initial state.

    Schema: {"assembly": <object or "reference">, "steps": [...],
    "params": {...}}.  Step objects carry exactly one of load_lb, load_kg,
    wipe, unload.  Unknown keys anywhere are rejected.  `defaults`
    (typically from a toolkit config) fills in params the document omits;
    explicit document params always win.
    """
    base: dict[str, object] = {
        "eta": DEFAULT_ETA, "rho": DEFAULT_RHO, "rho_direct": DEFAULT_RHO_DIRECT,
        "porosity": DEFAULT_POROSITY, "has_base_sheet": True,
        "capsule_pool_cm3": DEFAULT_CAPSULE_POOL_CM3,
        "base_sheet_volume_cm3": None, "insert_fill": 1.0, "base_fill": 1.0,
    }
    if defaults:
        unknown = set(defaults) - _PARAM_KEYS
        if unknown:
            raise ProtocolError(f"unknown default params: {sorted(unknown)}")
        base.update(defaults)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ProtocolError("protocol must be a JSON object")
    unknown = set(doc) - {"assembly", "steps", "params"}
    if unknown:
        raise ProtocolError(f"unknown top-level keys: {sorted(unknown)}")
    if "assembly" not in doc or "steps" not in doc:
        raise ProtocolError("protocol needs 'assembly' and 'steps'")
    assembly = _parse_assembly(doc["assembly"])
    if not isinstance(doc["steps"], list):
        raise ProtocolError("'steps' must be a list")
    steps = tuple(_parse_step(i, s) for i, s in enumerate(doc["steps"], start=1))

    params = dict(base)
    given = doc.get("params", {})
    if not isinstance(given, dict):
        raise ProtocolError("'params' must be an object")
    unknown = set(given) - _PARAM_KEYS
    if unknown:
        raise ProtocolError(f"unknown params: {sorted(unknown)}")
    params.update(given)
    try:
        protocol = Protocol(
            steps=steps, assembly=assembly,
            eta=float(params["eta"]),
            rho=float(params["rho"]),
            rho_direct=float(params["rho_direct"]))
        state = make_state(
            assembly,
            porosity=float(params["porosity"]),
            has_base_sheet=bool(params["has_base_sheet"]),
            capsule_pool_cm3=float(params["capsule_pool_cm3"]),
            base_sheet_volume_cm3=(
                None if params["base_sheet_volume_cm3"] is None
                else float(params["base_sheet_volume_cm3"])),
            insert_fill=float(params["insert_fill"]),
            base_fill=float(params["base_fill"]))
    except (ValueError, TypeError) as exc:
        raise ProtocolError(str(exc)) from None
    return protocol, state

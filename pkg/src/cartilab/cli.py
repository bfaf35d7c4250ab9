"""Command-line interface: wires configs, data files, and emitters together.

Subcommands: design (pitch-condition geometry), exude (squeezed volumes),
friction (pull-to-slip tables), simulate (load-cycle fluid inventory),
layout (hole lattices and fabrication exports), and reproduce-paper (the
self-check that recomputes every worked reference number and prints a
PASS/FAIL checklist).

Global flags work before or after the subcommand: --config PATH selects a
TOML config (falling back to $CARTILAB_CONFIG, then the bundled reference
preset), --units paper|si restyles the output units without changing any
verdict, and --json switches the report to schema-stable JSON.  Exit code
is 0 iff no errors; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import struct
import sys
from dataclasses import replace
from importlib import resources
from typing import Callable, Optional

import numpy as np

from . import contact
from .config import (
    ConfigError,
    ToolkitConfig,
    default_config,
    load_config,
    parse_config,
)
from .cycles import (
    ConservationError,
    FrictionCalibration,
    LoadStep,
    Protocol,
    ProtocolError,
    UnloadStep,
    WipeStep,
    default_calibration,
    load_protocol,
    make_state,
    per_cycle_exudation,
    run_protocol,
    series_to_csv,
)
from .elasticity import (
    DeflectionReport,
    REFERENCE_ASSEMBLY,
    REFERENCE_LOAD,
    SheetAssembly,
    deflection_report,
)
from .exudation import check_reference_constant, sheet_exudation
from .friction import (
    FrictionDataError,
    build_table,
    read_trials_csv,
    rows_to_csv,
    rows_to_json,
)
from .lattice import (
    FlatSheet,
    HoleSpec,
    export_layout,
    flat_layout,
    spherical_cap_layout,
    verify_coverage,
)
from .quantities import UnitSystem, mass_to_load, qty, unit_system

CONFIG_ENV_VAR = "CARTILAB_CONFIG"


def _num(x: float) -> str:
    return f"{x:.4g}"


def _print_json(doc, stream=None) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True), file=stream or sys.stdout)


def _load_toolkit_config(ns: argparse.Namespace) -> ToolkitConfig:
    path = ns.config or os.environ.get(CONFIG_ENV_VAR)
    cfg = load_config(path) if path else default_config()
    if ns.units:
        stock = unit_system(ns.units)
        cfg = replace(cfg, units=replace(stock, gravity_m_s2=cfg.units.gravity_m_s2))
    return cfg


def _print_sheet_report(report: DeflectionReport, units: UnitSystem,
                        indent: str = "") -> None:
    print(f"{indent}total load: {units.display(report.total_load)}")
    print(f"{indent}per-cell load: {units.display(report.per_cell_load)}")
    print(f"{indent}shape factor: {report.shape_factor:.6g}")
    print(f"{indent}shear modulus: {units.display(report.shear_modulus)}")
    print(f"{indent}apparent modulus: {units.display(report.apparent_modulus)}")
    print(f"{indent}deflection: {units.display(report.deflection)}")
    for warning in report.warnings:
        print(f"{indent}warning: {warning}")
    for note in report.notes:
        print(f"{indent}note: {note}")


# --- design --------------------------------------------------------------------

def cmd_design(ns: argparse.Namespace) -> int:
    cfg = _load_toolkit_config(ns)
    units = cfg.units
    report = deflection_report(cfg.assembly, cfg.design_load)
    r = ns.r_mm

    if ns.delta_mm is not None:
        delta = ns.delta_mm
        limit = contact.max_pitch(r, delta)
        theta = contact.chord_half_angle(r, delta)
        check = contact.check_pitch_condition(cfg.design_pitch_mm, r, delta)
        if check.ok:
            verdict = (f"{_num(check.pitch)} mm pitch OK "
                       f"(margin {_num(check.margin)} mm)")
        else:
            verdict = (f"{_num(check.pitch)} mm pitch NOT OK "
                       f"(exceeds max {_num(limit)} mm)")
        doc = {
            "mode": "max_pitch",
            "radius_mm": r,
            "depth_mm": delta,
            "chord_half_angle_rad": theta,
            "max_pitch_mm": limit,
            "design_pitch_mm": check.pitch,
            "pitch_ok": check.ok,
            "margin_mm": check.margin,
            "verdict": verdict,
            "sheet": report.as_dict(units),
        }
        lines = [
            f"sphere radius: {_num(r)} mm, pressing depth: {_num(delta)} mm",
            f"chord half-angle: {_num(math.degrees(theta))} deg",
            f"max pitch: {_num(limit)} mm",
            f"verdict: {verdict}",
        ]
    else:
        pitch = ns.pitch_mm
        dmin = contact.min_deflection_for_pitch(pitch, r)
        sheet_delta_mm = report.deflection.to("mm")
        ok = sheet_delta_mm >= dmin * (1.0 - 1e-12)
        if ok:
            verdict = (f"{_num(pitch)} mm pitch OK at design load "
                       f"(deflection {_num(sheet_delta_mm)} mm >= "
                       f"min {_num(dmin)} mm)")
        else:
            verdict = (f"{_num(pitch)} mm pitch NOT OK at design load "
                       f"(deflection {_num(sheet_delta_mm)} mm < "
                       f"min {_num(dmin)} mm)")
        doc = {
            "mode": "min_deflection",
            "radius_mm": r,
            "pitch_mm": pitch,
            "min_deflection_mm": dmin,
            "design_deflection_mm": sheet_delta_mm,
            "pitch_ok": ok,
            "verdict": verdict,
            "sheet": report.as_dict(units),
        }
        lines = [
            f"sphere radius: {_num(r)} mm, pitch: {_num(pitch)} mm",
            f"min deflection: {_num(dmin)} mm",
            f"verdict: {verdict}",
        ]

    if ns.json:
        _print_json(doc)
        return 0
    for line in lines:
        print(line)
    print("configured sheet at design load:")
    _print_sheet_report(report, units, indent="  ")
    return 0


# --- exude ---------------------------------------------------------------------

def cmd_exude(ns: argparse.Namespace) -> int:
    cfg = _load_toolkit_config(ns)
    units = cfg.units
    if ns.load_kgf is not None:
        load = qty(ns.load_kgf, "kgf")
    elif ns.load_lb is not None:
        load = mass_to_load(qty(ns.load_lb, "lb"), units)
    elif ns.load_n is not None:
        load = qty(ns.load_n, "N")
    else:
        load = cfg.design_load
    if load.si < 0:
        print("error: load must be non-negative", file=sys.stderr)
        return 1

    result = sheet_exudation(cfg.assembly, load)
    ref = check_reference_constant(cfg.assembly, load)
    doc = {
        "load": units.display(load),
        "load_kgf": load.to("kgf"),
        "deflection": units.display(result.deflection),
        "cell_count": result.cell_count,
        "per_cell_cm3": {
            "axial": result.per_cell.axial.to("cm3"),
            "lateral": result.per_cell.lateral.to("cm3"),
            "total": result.per_cell.total.to("cm3"),
        },
        "sheet_total_cm3": result.sheet_total.to("cm3"),
        "reference_constant": ref.as_dict() if ref.applicable else None,
    }
    if ns.json:
        _print_json(doc)
        return 0
    print(f"load: {units.display(load)}")
    print(f"deflection: {units.display(result.deflection)}")
    print(f"per-cell axial: {units.display(result.per_cell.axial)}")
    print(f"per-cell lateral: {units.display(result.per_cell.lateral)}")
    print(f"per-cell total: {units.display(result.per_cell.total)}")
    print(f"sheet total ({result.cell_count} cells): "
          f"{units.display(result.sheet_total)}")
    if ref.applicable:
        print("reference-constant audit:")
        for note in ref.notes:
            print(f"  {note}")
    return 0


# --- friction ------------------------------------------------------------------

def cmd_friction(ns: argparse.Namespace) -> int:
    cfg = _load_toolkit_config(ns)
    with open(ns.trials_csv, "r", encoding="utf-8") as fh:
        text = fh.read()
    rows = build_table(read_trials_csv(text, cfg.friction_increments_g))

    stem = os.path.splitext(ns.trials_csv)[0]
    csv_path, json_path = stem + "_mu.csv", stem + "_mu.json"
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(rows_to_csv(rows))
    with open(json_path, "w", encoding="utf-8") as fh:
        fh.write(rows_to_json(rows))
    print(f"wrote {csv_path}", file=sys.stderr)
    print(f"wrote {json_path}", file=sys.stderr)

    if ns.json:
        sys.stdout.write(rows_to_json(rows))
        return 0
    header = ("condition", "N (g)", "W (g)", "mu", "mu_unc", "censored")
    body = [
        (r.condition, f"{r.normal_load_g:g}", f"{r.slip_weight_g:g}",
         r.display_mu(),
         "unknown" if r.mu_uncertainty is None else f"{r.mu_uncertainty:.3f}",
         "yes" if r.censored else "no")
        for r in rows
    ]
    widths = [max(len(header[i]), *(len(row[i]) for row in body))
              for i in range(len(header))]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    print("  ".join("-" * w for w in widths))
    for row in body:
        print("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    return 0


# --- simulate ------------------------------------------------------------------

def _calibration_for(cfg: ToolkitConfig, assembly: SheetAssembly) -> FrictionCalibration:
    threshold = cfg.sim.film_threshold_cm3
    if threshold is None:
        threshold = default_calibration(assembly).film_threshold_cm3
    return FrictionCalibration(film_threshold_cm3=threshold,
                               mu_dry=cfg.sim.mu_dry, mu_wet=cfg.sim.mu_wet)


def _sim_defaults(cfg: ToolkitConfig) -> dict:
    sim = cfg.sim
    return {
        "eta": sim.eta, "rho": sim.rho, "rho_direct": sim.rho_direct,
        "porosity": sim.porosity, "has_base_sheet": cfg.has_base_sheet,
        "capsule_pool_cm3": sim.capsule_pool_cm3,
        "base_sheet_volume_cm3": sim.base_sheet_volume_cm3,
    }


def cmd_simulate(ns: argparse.Namespace) -> int:
    cfg = _load_toolkit_config(ns)
    with open(ns.protocol, "r", encoding="utf-8") as fh:
        text = fh.read()
    protocol, state = load_protocol(text, defaults=_sim_defaults(cfg))
    records = run_protocol(protocol, state, _calibration_for(cfg, protocol.assembly))

    if ns.json:
        steps = [
            {
                "step": r.index, "action": r.action,
                "insert_fluid": r.state.insert_fluid,
                "base_fluid": r.state.base_fluid,
                "surface_film": r.state.surface_film,
                "capsule_pool": r.state.capsule_pool,
                "wiped_total": r.state.wiped_total,
                "exuded": r.exuded, "mu_est": r.mu_est,
            }
            for r in records
        ]
        doc = {
            "steps": steps,
            "per_cycle_exudation_cm3": per_cycle_exudation(records),
            "mu_at_load_steps": [r.mu_est for r in records if r.action == "load"],
        }
        payload = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        payload = series_to_csv(records)

    if ns.out:
        with open(ns.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
        print(f"wrote {ns.out}", file=sys.stderr)
        summary = sys.stdout
    else:
        sys.stdout.write(payload)
        summary = sys.stderr

    cycles = per_cycle_exudation(records)
    mus = [r.mu_est for r in records if r.action == "load"]
    print(f"cycles: {len(cycles)}", file=summary)
    if cycles:
        print("per-cycle exudation (cm3): "
              + ", ".join(f"{v:.6g}" for v in cycles), file=summary)
        print("mu estimate at load steps: "
              + ", ".join(f"{v:.3f}" for v in mus), file=summary)
    return 0


# --- layout --------------------------------------------------------------------

def cmd_layout(ns: argparse.Namespace) -> int:
    cfg = _load_toolkit_config(ns)
    parser: argparse.ArgumentParser = ns.parser

    hole_side = ns.hole_mm if ns.hole_mm is not None else cfg.cell.hole_side.to("mm")
    depth = ns.depth_mm if ns.depth_mm is not None else cfg.cell.height.to("mm")
    hole = HoleSpec(side_mm=hole_side, depth_mm=depth)
    if ns.pitch_mm is not None:
        pitch = ns.pitch_mm
    elif ns.gap_mm is not None:
        pitch = ns.gap_mm + hole_side
    else:
        pitch = cfg.layout_pitch_mm

    if ns.surface == "flat":
        if ns.width_mm is None or ns.length_mm is None:
            parser.error("--surface flat needs --width-mm and --length-mm")
        if ns.radius_mm is not None or ns.cap_angle_deg is not None:
            parser.error("--radius-mm/--cap-angle-deg apply to --surface cap")
        layout = flat_layout(ns.width_mm, ns.length_mm, pitch, hole)
    else:
        if ns.radius_mm is None or ns.cap_angle_deg is None:
            parser.error("--surface cap needs --radius-mm and --cap-angle-deg")
        if ns.width_mm is not None or ns.length_mm is not None:
            parser.error("--width-mm/--length-mm apply to --surface flat")
        layout = spherical_cap_layout(ns.radius_mm,
                                      math.radians(ns.cap_angle_deg),
                                      pitch, hole)

    if ns.verify and ns.delta_mm is None:
        parser.error("--verify needs --delta-mm")
    if ns.delta_mm is not None and not ns.verify:
        parser.error("--delta-mm needs --verify")
    coverage = verify_coverage(layout, ns.delta_mm) if ns.verify else None

    if ns.fmt == "stl" and not ns.out:
        parser.error("--format stl writes binary data; --out is required")
    data = export_layout(layout, ns.fmt)

    if ns.out:
        with open(ns.out, "wb") as fh:
            fh.write(data)
        print(f"wrote {ns.out}", file=sys.stderr)
        summary = sys.stdout
    else:
        sys.stdout.write(data.decode("ascii"))
        summary = sys.stderr

    if ns.json:
        if isinstance(layout.surface, FlatSheet):
            surface_doc = {"type": "flat", "width_mm": layout.surface.width_mm,
                           "length_mm": layout.surface.length_mm}
        else:
            surface_doc = {"type": "spherical_cap",
                           "radius_mm": layout.surface.radius_mm,
                           "cap_half_angle_rad": layout.surface.half_angle_rad}
        doc = {
            "surface": surface_doc,
            "pitch_mm": layout.pitch_mm,
            "hole": {"side_mm": hole.side_mm, "depth_mm": hole.depth_mm},
            "hole_count": layout.hole_count,
            "format": ns.fmt,
            "out": ns.out,
            "coverage": coverage.as_dict() if coverage else None,
        }
        _print_json(doc, stream=summary)
        return 0

    if isinstance(layout.surface, FlatSheet):
        print(f"surface: flat {_num(layout.surface.width_mm)} x "
              f"{_num(layout.surface.length_mm)} mm", file=summary)
    else:
        print(f"surface: spherical cap R {_num(layout.surface.radius_mm)} mm, "
              f"half-angle {_num(math.degrees(layout.surface.half_angle_rad))} deg",
              file=summary)
    print(f"pitch: {_num(layout.pitch_mm)} mm (center to center)", file=summary)
    print(f"hole: {_num(hole.side_mm)} mm square, {_num(hole.depth_mm)} mm deep",
          file=summary)
    print(f"holes: {layout.hole_count}", file=summary)
    if coverage is not None:
        if not coverage.applicable:
            print("coverage: not applicable (flat surface)", file=summary)
        elif coverage.passed:
            print(f"coverage: PASS (worst gap {_num(coverage.worst_gap_mm)} mm "
                  f"<= patch radius {_num(coverage.patch_radius_mm)} mm, "
                  f"{coverage.samples} samples)", file=summary)
        else:
            print(f"coverage: FAIL (worst gap {_num(coverage.worst_gap_mm)} mm "
                  f"> patch radius {_num(coverage.patch_radius_mm)} mm, "
                  f"{coverage.samples} samples)", file=summary)
    return 0


# --- reproduce-paper -----------------------------------------------------------
#
# Each check recomputes one block of the worked reference numbers from
# scratch and returns (name, passed, detail).  The checks mirror the
# acceptance tests; the command exists so a user can audit an install in
# one line without the test suite.

def _check_stiffness() -> tuple[str, bool, str]:
    asm = REFERENCE_ASSEMBLY
    s = asm.shape_factor
    g = asm.material.shear_modulus.to("kgf/cm2")
    eap = asm.apparent_modulus.to("kgf/cm2")
    ok = (s == 0.25 and g == 1.0 and abs(eap - 4.205625) <= 1e-9
          and abs(4.2 / eap - 1.0) <= 0.002)
    detail = (f"S = {s:g}, G = {g:g} kgf/cm2, E_ap = {eap:.6f} kgf/cm2 "
              f"({abs(4.2 / eap - 1.0) * 100:.2f}% from the quoted 4.2)")
    return "stiffness chain", ok, detail


def _check_deflection() -> tuple[str, bool, str]:
    report = deflection_report(REFERENCE_ASSEMBLY, REFERENCE_LOAD)
    d_cm = report.deflection.to("cm")
    ok = 0.898 <= d_cm <= 0.900 and len(report.notes) > 0
    detail = (f"deflection {d_cm:.6f} cm in [0.898, 0.900]; "
              f"design note {'emitted' if report.notes else 'MISSING'}")
    return "deflection window", ok, detail


def _check_friction_table(cfg: ToolkitConfig) -> tuple[str, bool, str]:
    text = resources.files("cartilab.data").joinpath(
        "friction_trials.csv").read_text("utf-8")
    rows = build_table(read_trials_csv(text, cfg.friction_increments_g))
    by = {r.condition: r for r in rows}
    expected = {"film": 0.079, "film + fluid": 0.064,
                "film + fluid + sponge": 0.053}
    ok = all(abs(by[c].mu - v) <= 1e-3 and not by[c].censored
             for c, v in expected.items())
    no_film = by["no film"]
    ok = ok and no_film.censored and no_film.mu >= 0.5
    order = ["no film", "film", "film + fluid", "film + fluid + sponge"]
    mus = [by[c].mu for c in order]
    ok = ok and all(a > b for a, b in zip(mus, mus[1:]))
    detail = "mu: " + ", ".join(f"{c} {by[c].display_mu()}" for c in order)
    return "friction table", ok, detail


def _check_pitch_properties() -> tuple[str, bool, str]:
    rng = random.Random(20260816)
    floor_ok = all(contact.max_pitch(r, 1.0) >= 2.0
                   for r in [3.0, 100.0] + [rng.uniform(3.0, 100.0)
                                            for _ in range(1000)])
    worst_round = 0.0
    worst_theta = 0.0
    for _ in range(1000):
        r = rng.uniform(1.0, 100.0)
        pitch = r * rng.uniform(0.01, 1.99)
        depth = contact.min_deflection_for_pitch(pitch, r)
        back = contact.max_pitch(r, depth)
        worst_round = max(worst_round, abs(back - pitch) / pitch)
        depth2 = r * rng.uniform(0.01, 1.0)
        chord = contact.max_pitch(r, depth2)
        via_theta = 2.0 * r * math.sin(contact.chord_half_angle(r, depth2))
        worst_theta = max(worst_theta, abs(via_theta - chord) / chord)
    ok = floor_ok and worst_round <= 1e-9 and worst_theta <= 1e-12
    detail = (f"max pitch >= 2 mm at depth 1 mm over r in [3, 100]; "
              f"round-trip worst {worst_round:.2e} (<= 1e-9); "
              f"theta-form worst {worst_theta:.2e} (<= 1e-12)")
    return "pitch condition", ok, detail


def _check_exudation() -> tuple[str, bool, str]:
    result = sheet_exudation(REFERENCE_ASSEMBLY, REFERENCE_LOAD)
    sheet = result.sheet_total.to("cm3")
    per = result.per_cell.total.to("cm3")
    ok = (abs(sheet / (17.0 / 21.0) - 1.0) <= 0.005
          and abs(per / (17.0 / 189.0) - 1.0) <= 0.005)
    at_match = check_reference_constant(REFERENCE_ASSEMBLY, qty(6.8, "kgf"))
    elsewhere = check_reference_constant(REFERENCE_ASSEMBLY, qty(5.0, "kgf"))
    ok = (ok and at_match.constant_holds_at_load is True
          and elsewhere.constant_holds_at_load is False
          and abs(elsewhere.symbolic_per_cell_at_load_cm3
                  - elsewhere.literal_per_cell_at_load_cm3) > 1e-6)
    detail = (f"sheet {sheet:.6f} cm3 vs 17/21 = {17 / 21:.6f} "
              f"({abs(sheet / (17 / 21) - 1) * 100:.2f}%); per cell {per:.6f} vs "
              f"17/189 = {17 / 189:.6f}; quoted constant holds only at 6.8 kgf")
    return "exudation volumes", ok, detail


def _load_bundled_protocol(name: str):
    text = resources.files("cartilab.data").joinpath(name).read_text("utf-8")
    return load_protocol(text)


def _check_cycles() -> tuple[str, bool, str]:
    rng = random.Random(99)
    steps = []
    for _ in range(10000):
        roll = rng.random()
        if roll < 0.4:
            steps.append(LoadStep(mass=qty(rng.uniform(0.5, 20.0), "lb")))
        elif roll < 0.7:
            steps.append(WipeStep())
        else:
            steps.append(UnloadStep())
    protocol = Protocol(steps=tuple(steps), assembly=REFERENCE_ASSEMBLY,
                        eta=0.7, rho=0.9, rho_direct=0.3)
    state = make_state(REFERENCE_ASSEMBLY, capsule_pool_cm3=2.0)
    records = run_protocol(protocol, state)
    conserved = (abs(records[-1].state.total_fluid - state.total_fluid)
                 <= 1e-12 * state.total_fluid)

    base_p, base_s = _load_bundled_protocol("five_cycles_base.json")
    base_cycles = per_cycle_exudation(run_protocol(base_p, base_s))
    sustained = (len(base_cycles) == 5
                 and base_cycles[4] >= 0.8 * base_cycles[0] > 0.0)

    nb_p, nb_s = _load_bundled_protocol("five_cycles_nobase.json")
    nb_cycles = per_cycle_exudation(run_protocol(nb_p, nb_s))
    starving = (min(nb_cycles) == 0.0
                and all(b < a or a == b == 0.0
                        for a, b in zip(nb_cycles, nb_cycles[1:])))

    step_p, step_s = _load_bundled_protocol("step_8_to_15.json")
    step_cycles = per_cycle_exudation(run_protocol(step_p, step_s))
    heavier_wins = step_cycles[-1] > step_cycles[-2]

    ok = conserved and sustained and starving and heavier_wins
    detail = (f"conservation over 10000 randomized steps; with base "
              f"cycle5/cycle1 = {base_cycles[4] / base_cycles[0]:.3f} (>= 0.8); "
              f"no base decays to starvation; 15 lb after depletion exudes "
              f"{step_cycles[-1]:.4f} > {step_cycles[-2]:.4f} cm3")
    return "cycle simulation", ok, detail


def _parse_stl(data: bytes) -> list[tuple[tuple[float, float, float], ...]]:
    """Minimal binary-STL reader used only to audit exports."""
    if len(data) < 84:
        raise ValueError("stl too short")
    (count,) = struct.unpack_from("<I", data, 80)
    if len(data) != 84 + 50 * count:
        raise ValueError("stl length mismatch")
    triangles = []
    for i in range(count):
        values = struct.unpack_from("<12fH", data, 84 + 50 * i)
        triangles.append(tuple(tuple(values[3 + 3 * k + j] for j in range(3))
                               for k in range(3)))
    return triangles


def _stl_watertight_volume(data: bytes) -> tuple[bool, float]:
    triangles = _parse_stl(data)
    edges: dict[tuple, int] = {}
    volume = 0.0
    for a, b, c in triangles:
        for p, q in ((a, b), (b, c), (c, a)):
            edges[(p, q)] = edges.get((p, q), 0) + 1
        volume += (a[0] * (b[1] * c[2] - b[2] * c[1])
                   - a[1] * (b[0] * c[2] - b[2] * c[0])
                   + a[2] * (b[0] * c[1] - b[1] * c[0])) / 6.0
    watertight = all(n == 1 and edges.get((q, p)) == 1
                     for (p, q), n in edges.items())
    return watertight, volume


def _check_layout_exports() -> tuple[str, bool, str]:
    hole = HoleSpec(side_mm=2.0, depth_mm=6.0)
    flat = flat_layout(14.0, 14.0, 4.0, hole)
    nine = flat.hole_count == 9

    cap = spherical_cap_layout(20.0, math.radians(60.0), 4.0, hole)
    radii = np.linalg.norm(cap.centers_mm, axis=1)
    on_sphere = float(np.max(np.abs(radii - 20.0))) <= 1e-9 * 20.0
    radial = float(np.max(np.abs(cap.normals - cap.centers_mm / 20.0))) <= 1e-12

    stl = export_layout(flat, "stl")
    deterministic = (stl == export_layout(flat, "stl")
                     and export_layout(cap, "csv") == export_layout(cap, "csv")
                     and export_layout(cap, "json") == export_layout(cap, "json"))
    watertight, volume = _stl_watertight_volume(stl)
    expected_volume = (14.0 * 14.0 - 9 * 4.0) * 6.0
    volume_ok = abs(volume - expected_volume) <= 1e-6 * expected_volume

    ok = nine and on_sphere and radial and deterministic and watertight and volume_ok
    detail = (f"flat 14x14/gap 2 -> {flat.hole_count} holes; cap centers "
              f"on-sphere; STL watertight, volume {volume:.3f} mm3 "
              f"(expected {expected_volume:.3f}); exports byte-stable")
    return "layout and exports", ok, detail


def _check_unit_invariance() -> tuple[str, bool, str]:
    def chain(cfg: ToolkitConfig) -> list[float]:
        report = deflection_report(cfg.assembly, cfg.design_load)
        exu = sheet_exudation(cfg.assembly, cfg.design_load)
        check = contact.check_pitch_condition(cfg.design_pitch_mm, 3.0, 1.0)
        cal = _calibration_for(cfg, cfg.assembly)
        text = resources.files("cartilab.data").joinpath(
            "friction_trials.csv").read_text("utf-8")
        rows = build_table(read_trials_csv(text, cfg.friction_increments_g))
        return ([report.deflection.si, report.apparent_modulus.si,
                 exu.sheet_total.to("cm3"), float(check.ok),
                 cal.film_threshold_cm3]
                + [r.mu for r in rows])

    paper_chain = chain(default_config())
    si_text = resources.files("cartilab.data").joinpath(
        "reference_si.toml").read_text("utf-8")
    si_chain = chain(parse_config(si_text))
    worst = max(abs(a - b) / max(abs(b), 1e-300)
                for a, b in zip(paper_chain, si_chain))
    ok = len(paper_chain) == len(si_chain) and worst <= 1e-9
    detail = (f"deflection, stiffness, exudation, pitch verdict, calibration "
              f"and mu table agree across paper/SI ingestion; worst relative "
              f"difference {worst:.2e} (<= 1e-9)")
    return "unit invariance", ok, detail


def cmd_reproduce(ns: argparse.Namespace) -> int:
    cfg = default_config()  # the checklist audits the bundled reference preset
    checks = [
        _check_stiffness(),
        _check_deflection(),
        _check_friction_table(cfg),
        _check_pitch_properties(),
        _check_exudation(),
        _check_cycles(),
        _check_layout_exports(),
        _check_unit_invariance(),
    ]
    passed = sum(1 for _, ok, _ in checks if ok)
    if ns.json:
        _print_json({
            "checks": [{"name": name, "passed": ok, "detail": detail}
                       for name, ok, detail in checks],
            "all_passed": passed == len(checks),
        })
    else:
        for name, ok, detail in checks:
            print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        print(f"{passed}/{len(checks)} checks passed")
    return 0 if passed == len(checks) else 1


# --- parser --------------------------------------------------------------------

def _add_common_flags(parser: argparse.ArgumentParser, default) -> None:
    parser.add_argument("--config", metavar="PATH", default=default,
                        help=f"TOML config (default: ${CONFIG_ENV_VAR}, "
                             "then the bundled reference preset)")
    parser.add_argument("--units", choices=("paper", "si"), default=default,
                        help="report units: cm/kgf or mm/N (formatting only, "
                             "verdicts never change)")
    parser.add_argument("--json", action="store_true", default=default,
                        help="emit the report as JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cartilab",
        description="Design and analysis toolkit for fluid-exuding "
                    "cartilage sheets.")
    _add_common_flags(parser, default=None)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name: str, func: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, description=help_text)
        _add_common_flags(p, default=argparse.SUPPRESS)
        p.set_defaults(func=func, parser=p)
        return p

    p = add("design", cmd_design,
            "check the hole pitch against the contact patch of a sphere "
            "pressed into the sheet")
    p.add_argument("--r-mm", type=float, required=True, dest="r_mm",
                   help="sphere radius in mm")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--delta-mm", type=float, dest="delta_mm",
                       help="pressing depth in mm (reports the max pitch)")
    group.add_argument("--pitch-mm", type=float, dest="pitch_mm",
                       help="hole pitch in mm (reports the min depth)")

    p = add("exude", cmd_exude,
            "compute per-cell and sheet exuded volumes under a load")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--load-kgf", type=float, dest="load_kgf",
                       help="total load in kgf")
    group.add_argument("--load-lb", type=float, dest="load_lb",
                       help="total load as a mass in lb")
    group.add_argument("--load-n", type=float, dest="load_n",
                       help="total load in newtons")

    p = add("friction", cmd_friction,
            "build a friction table from pull-to-slip trial sweeps")
    p.add_argument("trials_csv", metavar="TRIALS_CSV",
                   help="sweep data: condition,normal_load_g,counterweight_g,slipped")

    p = add("simulate", cmd_simulate,
            "run a load/wipe/unload protocol over the fluid inventory")
    p.add_argument("protocol", metavar="PROTOCOL_JSON",
                   help="protocol document (JSON)")
    p.add_argument("--out", metavar="FILE", default=None,
                   help="write the series here instead of stdout")

    p = add("layout", cmd_layout,
            "generate a hole lattice for a flat sheet or spherical cap")
    p.add_argument("--surface", choices=("flat", "cap"), default="flat")
    p.add_argument("--width-mm", type=float, dest="width_mm")
    p.add_argument("--length-mm", type=float, dest="length_mm")
    p.add_argument("--radius-mm", type=float, dest="radius_mm")
    p.add_argument("--cap-angle-deg", type=float, dest="cap_angle_deg",
                   help="polar half-angle of the cap in degrees")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--pitch-mm", type=float, dest="pitch_mm",
                       help="center-to-center hole pitch in mm")
    group.add_argument("--gap-mm", type=float, dest="gap_mm",
                       help="edge-to-edge hole gap in mm")
    p.add_argument("--hole-mm", type=float, dest="hole_mm",
                   help="square hole side in mm (default: config cell)")
    p.add_argument("--depth-mm", type=float, dest="depth_mm",
                   help="hole depth / sheet thickness in mm (default: config cell)")
    p.add_argument("--format", choices=("csv", "json", "stl"), default="csv",
                   dest="fmt")
    p.add_argument("--out", metavar="FILE", default=None,
                   help="write the layout here instead of stdout "
                        "(required for stl)")
    p.add_argument("--verify", action="store_true",
                   help="run the contact-coverage check (needs --delta-mm)")
    p.add_argument("--delta-mm", type=float, dest="delta_mm",
                   help="pressing depth for --verify, in mm")

    add("reproduce-paper", cmd_reproduce,
        "recompute every worked reference number and design check; "
        "print a PASS/FAIL checklist")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except (ConfigError, ProtocolError, FrictionDataError,
            ConservationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Acceptance gate: one test per headline capability.

Each test recomputes its numbers from the public API (with independent
readers where serialization is involved) and finishes with a PASS line so
a `pytest -s` run doubles as a checklist.
"""

import math
import random
import struct

import numpy as np

from cartilab import contact
from cartilab.config import default_config, parse_config
from cartilab.cycles import (
    LoadStep,
    Protocol,
    UnloadStep,
    WipeStep,
    load_protocol,
    make_state,
    per_cycle_exudation,
    run_protocol,
)
from cartilab.elasticity import REFERENCE_ASSEMBLY, REFERENCE_LOAD, deflection_report
from cartilab.exudation import check_reference_constant, sheet_exudation
from cartilab.friction import build_table, read_trials_csv
from cartilab.lattice import HoleSpec, export_layout, flat_layout, spherical_cap_layout
from cartilab.quantities import qty

from conftest import bundled_text


def test_acceptance_stiffness_chain():
    asm = REFERENCE_ASSEMBLY
    s = asm.shape_factor
    g = asm.material.shear_modulus.to("kgf/cm2")
    eap = asm.apparent_modulus.to("kgf/cm2")
    assert s == 0.25
    assert g == 1.0
    assert abs(eap - 4.205625) <= 1e-9
    assert abs(eap / 4.2 - 1.0) <= 0.002
    print(f"PASS: stiffness chain S={s:g}, G={g:g} kgf/cm2, "
          f"E_ap={eap:.6f} kgf/cm2 (within 0.2% of the quoted 4.2)")


def test_acceptance_deflection_window():
    report = deflection_report(REFERENCE_ASSEMBLY, REFERENCE_LOAD)
    d_cm = report.deflection.to("cm")
    assert 0.898 <= d_cm <= 0.900
    assert report.notes, "unit-misread note must be emitted"
    assert any("0.9" in n for n in report.notes)
    print(f"PASS: deflection window {d_cm:.6f} cm lands in [0.898, 0.900] "
          f"and the quoted-figure note is emitted")


def test_acceptance_friction_table():
    cfg = default_config()
    rows = build_table(read_trials_csv(bundled_text("friction_trials.csv"),
                                       cfg.friction_increments_g))
    by = {r.condition: r for r in rows}
    quoted = {"film": 0.079, "film + fluid": 0.064,
              "film + fluid + sponge": 0.053}
    for condition, mu in quoted.items():
        assert abs(by[condition].mu - mu) <= 1e-3
        assert not by[condition].censored
    no_film = by["no film"]
    assert no_film.censored
    assert no_film.mu >= 0.5
    order = ["no film", "film", "film + fluid", "film + fluid + sponge"]
    mus = [by[c].mu for c in order]
    assert all(a > b for a, b in zip(mus, mus[1:]))
    print("PASS: friction table mu " +
          ", ".join(f"{c}={by[c].mu:.4f}" for c in order) +
          " (quoted values within 0.001, censored floor >= 0.5, strictly "
          "decreasing)")


def test_acceptance_pitch_condition():
    rng = random.Random(20260816)
    radii = [3.0, 100.0] + [rng.uniform(3.0, 100.0) for _ in range(1000)]
    assert all(contact.max_pitch(r, 1.0) >= 2.0 for r in radii)

    worst_round = 0.0
    worst_theta = 0.0
    for _ in range(1000):
        r = rng.uniform(1.0, 100.0)
        pitch = r * rng.uniform(0.01, 1.99)
        depth = contact.min_deflection_for_pitch(pitch, r)
        worst_round = max(worst_round,
                          abs(contact.max_pitch(r, depth) - pitch) / pitch)
        depth2 = r * rng.uniform(0.01, 1.0)
        chord = contact.max_pitch(r, depth2)
        via_theta = 2.0 * r * math.sin(contact.chord_half_angle(r, depth2))
        worst_theta = max(worst_theta, abs(via_theta - chord) / chord)
    assert worst_round <= 1e-9
    assert worst_theta <= 1e-12
    print(f"PASS: pitch condition max_pitch >= 2 mm at 1 mm depth for "
          f"r in [3, 100]; 1000 round-trips within {worst_round:.2e} "
          f"(<= 1e-9) and theta-form within {worst_theta:.2e} (<= 1e-12)")


def test_acceptance_exudation_consistency():
    result = sheet_exudation(REFERENCE_ASSEMBLY, REFERENCE_LOAD)
    sheet = result.sheet_total.to("cm3")
    per = result.per_cell.total.to("cm3")
    assert abs(sheet / (17.0 / 21.0) - 1.0) <= 0.005
    assert abs(per / (17.0 / 189.0) - 1.0) <= 0.005

    at_match = check_reference_constant(REFERENCE_ASSEMBLY, qty(6.8, "kgf"))
    assert at_match.constant_holds_at_load is True
    elsewhere = check_reference_constant(REFERENCE_ASSEMBLY, qty(5.0, "kgf"))
    assert elsewhere.constant_holds_at_load is False
    assert abs(elsewhere.symbolic_per_cell_at_load_cm3
               - elsewhere.literal_per_cell_at_load_cm3) > 1e-6
    print(f"PASS: exudation sheet {sheet:.6f} cm3 within 0.5% of 17/21 "
          f"({17 / 21:.6f}), per cell {per:.6f} within 0.5% of 17/189; "
          f"quoted constant holds only at 6.8 kgf")


def test_acceptance_cycle_simulation():
    rng = random.Random(4242)
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
    drift = abs(records[-1].state.total_fluid - state.total_fluid)
    assert drift <= 1e-12 * state.total_fluid

    base = per_cycle_exudation(
        run_protocol(*load_protocol(bundled_text("five_cycles_base.json"))))
    assert len(base) == 5
    assert base[4] >= 0.8 * base[0] > 0.0

    nobase = per_cycle_exudation(
        run_protocol(*load_protocol(bundled_text("five_cycles_nobase.json"))))
    assert min(nobase) == 0.0
    assert all(b < a or a == b == 0.0 for a, b in zip(nobase, nobase[1:]))

    step = per_cycle_exudation(
        run_protocol(*load_protocol(bundled_text("step_8_to_15.json"))))
    assert step[-1] > step[-2]

    print(f"PASS: cycle simulation conserves fluid over 10000 randomized "
          f"steps (drift {drift:.2e} cm3); base sheet sustains "
          f"cycle5/cycle1 = {base[4] / base[0]:.3f}, no base starves to "
          f"zero, and the 15 lb step exudes {step[-1]:.4f} > "
          f"{step[-2]:.4f} cm3")


def _read_stl(data: bytes):
    assert len(data) >= 84
    (count,) = struct.unpack_from("<I", data, 80)
    assert len(data) == 84 + 50 * count
    tris = []
    for i in range(count):
        v = struct.unpack_from("<12fH", data, 84 + 50 * i)
        assert v[12] == 0
        tris.append(tuple(tuple(v[3 + 3 * k + j] for j in range(3))
                          for k in range(3)))
    return tris


def test_acceptance_layout_and_stl():
    hole = HoleSpec(side_mm=2.0, depth_mm=6.0)
    flat = flat_layout(14.0, 14.0, 4.0, hole)
    assert flat.hole_count == 9

    cap = spherical_cap_layout(20.0, math.radians(60.0), 4.0, hole)
    radii = np.linalg.norm(cap.centers_mm, axis=1)
    assert float(np.max(np.abs(radii - 20.0))) <= 1e-9 * 20.0
    assert float(np.max(np.abs(cap.normals - cap.centers_mm / 20.0))) <= 1e-12

    stl = export_layout(flat, "stl")
    assert stl == export_layout(flat, "stl")
    assert export_layout(cap, "csv") == export_layout(cap, "csv")
    assert export_layout(cap, "json") == export_layout(cap, "json")

    tris = _read_stl(stl)
    edges = {}
    volume = 0.0
    for a, b, c in tris:
        for p, q in ((a, b), (b, c), (c, a)):
            edges[(p, q)] = edges.get((p, q), 0) + 1
        volume += float(np.dot(a, np.cross(b, c))) / 6.0
    assert all(n == 1 and edges.get((q, p)) == 1
               for (p, q), n in edges.items())
    expected = (14.0 * 14.0 - 9 * 4.0) * 6.0
    assert abs(volume - expected) <= 1e-6 * expected

    print(f"PASS: layout 14x14 mm at 4 mm pitch -> 9 holes; cap centers "
          f"on-sphere with radial normals; STL watertight with enclosed "
          f"volume {volume:.3f} mm3 (expected {expected:.3f}); exports are "
          f"byte-deterministic")


def test_acceptance_unit_invariance():
    def chain(cfg):
        report = deflection_report(cfg.assembly, cfg.design_load)
        exu = sheet_exudation(cfg.assembly, cfg.design_load)
        check = contact.check_pitch_condition(cfg.design_pitch_mm, 3.0, 1.0)
        rows = build_table(read_trials_csv(bundled_text("friction_trials.csv"),
                                           cfg.friction_increments_g))
        return ([report.deflection.si, report.apparent_modulus.si,
                 exu.sheet_total.to("cm3"), float(check.ok)]
                + [r.mu for r in rows])

    paper_chain = chain(default_config())
    si_chain = chain(parse_config(bundled_text("reference_si.toml")))
    assert len(paper_chain) == len(si_chain)
    worst = max(abs(a - b) / max(abs(b), 1e-300)
                for a, b in zip(paper_chain, si_chain))
    assert worst <= 1e-9
    print(f"PASS: unit invariance paper vs SI config agree on deflection, "
          f"stiffness, exudation, pitch verdict and the mu table (worst "
          f"relative difference {worst:.2e} <= 1e-9)")

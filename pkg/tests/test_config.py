"""Strict TOML configuration parsing."""

import pytest

from cartilab.config import (
    ConfigError,
    SimConfig,
    ToolkitConfig,
    default_config,
    load_config,
    parse_config,
)
from cartilab.quantities import STANDARD_GRAVITY_M_S2


def test_empty_document_gives_reference_defaults():
    cfg = parse_config("")
    assert cfg.units.name == "paper"
    assert cfg.cell_count == 9
    assert cfg.cell.outer_side.to("mm") == pytest.approx(4.0)
    assert cfg.cell.hole_side.to("mm") == pytest.approx(2.0)
    assert cfg.cell.height.to("mm") == pytest.approx(6.0)
    assert cfg.material.young_modulus.to("kgf/cm2") == pytest.approx(3.0)
    assert cfg.design_load.to("kgf") == pytest.approx(6.8)
    assert cfg.design_pitch_mm == 2.0
    assert cfg.has_base_sheet
    assert cfg.sim == SimConfig()
    assert cfg.friction_increments_g == {}


def test_bundled_reference_config_loads():
    cfg = default_config()
    assert cfg.units.name == "paper"
    assert cfg.assembly.cell_count == 9
    assert cfg.friction_increments_g == {
        "film": 104.0, "film + fluid": 47.0, "film + fluid + sponge": 7.0}
    # gap mode: center pitch = hole gap + hole side
    assert not cfg.pitch_is_center_to_center
    assert cfg.layout_pitch_mm == pytest.approx(4.0)


def test_layout_pitch_center_mode():
    cfg = parse_config("[sheet]\npitch_is_center_to_center = true\n"
                       "design_pitch_mm = 5.0\n")
    assert cfg.layout_pitch_mm == 5.0


def test_si_twin_config_matches_reference_physically():
    from importlib import resources
    text = resources.files("cartilab.data").joinpath(
        "reference_si.toml").read_text("utf-8")
    si = parse_config(text)
    ref = default_config()
    assert si.units.name == "si"
    assert si.material.young_modulus.si == pytest.approx(
        ref.material.young_modulus.si, rel=1e-9)
    assert si.design_load.si == pytest.approx(ref.design_load.si, rel=1e-9)
    assert si.cell.outer_side.si == pytest.approx(ref.cell.outer_side.si, rel=1e-12)


def test_unknown_keys_rejected_per_section():
    with pytest.raises(ConfigError, match=r"\[material\] unknown keys"):
        parse_config("[material]\nyoung = 3.0\n")
    with pytest.raises(ConfigError, match=r"\[sheet\] unknown keys"):
        parse_config("[sheet]\npitch = 2.0\n")
    with pytest.raises(ConfigError, match="unknown sections"):
        parse_config("[extras]\nx = 1\n")


def test_unit_spellings_are_enforced():
    with pytest.raises(ConfigError, match="not allowed"):
        parse_config("[material]\nyoung_modulus = 435.0\n"
                     "young_modulus_unit = \"psi\"\n")
    with pytest.raises(ConfigError, match="not allowed"):
        parse_config("[cell]\nouter_side = 0.16\nunit = \"in\"\n")
    with pytest.raises(ConfigError, match="not allowed"):
        parse_config("[sheet]\ndesign_load = 15.0\ndesign_load_unit = \"lbf\"\n")


def test_bad_toml_reports_cleanly():
    with pytest.raises(ConfigError, match="invalid TOML"):
        parse_config("[material\nyoung_modulus = 3.0\n")


def test_sim_validation():
    with pytest.raises(ConfigError, match=r"\[sim\] eta"):
        parse_config("[sim]\neta = 1.5\n")
    with pytest.raises(ConfigError, match="mu_dry must exceed"):
        parse_config("[sim]\nmu_dry = 0.05\nmu_wet = 0.06\n")


def test_friction_increment_validation():
    with pytest.raises(ConfigError, match="must be positive"):
        parse_config("[friction.increments_g]\nfilm = -1.0\n")
    with pytest.raises(ConfigError, match="must be a number"):
        parse_config("[friction.increments_g]\nfilm = \"lots\"\n")


def test_cell_geometry_errors_carry_section():
    with pytest.raises(ConfigError, match=r"\[cell\]"):
        parse_config("[cell]\nouter_side = 2.0\nhole_side = 4.0\nheight = 6.0\n")


def test_design_load_as_mass_uses_config_gravity():
    kg = parse_config("[sheet]\ndesign_load = 1.0\ndesign_load_unit = \"kg\"\n")
    assert kg.design_load.to("kgf") == pytest.approx(1.0, rel=1e-12)
    # halving gravity halves the force the same mass exerts
    half_g = parse_config(
        "[units]\ngravity_m_s2 = %r\n"
        "[sheet]\ndesign_load = 1.0\ndesign_load_unit = \"kg\"\n"
        % (STANDARD_GRAVITY_M_S2 / 2.0))
    assert half_g.design_load.si == pytest.approx(kg.design_load.si / 2.0,
                                                  rel=1e-12)


def test_design_load_as_pound_mass():
    cfg = parse_config("[sheet]\ndesign_load = 15.0\ndesign_load_unit = \"lb\"\n")
    assert cfg.design_load.to("kgf") == pytest.approx(15.0 * 0.45359237, rel=1e-12)


def test_unknown_units_mode():
    with pytest.raises(ConfigError, match=r"\[units\]"):
        parse_config("[units]\nmode = \"imperial\"\n")


def test_load_config_reads_files(tmp_path):
    p = tmp_path / "site.toml"
    p.write_text("[sheet]\ncell_count = 4\n", encoding="utf-8")
    cfg = load_config(str(p))
    assert cfg.cell_count == 4
    assert cfg.assembly.cell_count == 4


def test_calibration_defaults_to_full_squeeze_threshold():
    cfg = default_config()
    cal = cfg.calibration()
    assert cal.mu_dry == 0.079
    assert cal.mu_wet == 0.053
    # one full 8 lb exudation of the reference sheet, in cm3
    assert cal.film_threshold_cm3 == pytest.approx(0.43141, rel=1e-4)


def test_calibration_threshold_override():
    cfg = parse_config("[sim]\nfilm_threshold_cm3 = 0.25\nmu_dry = 0.1\n")
    cal = cfg.calibration()
    assert cal.film_threshold_cm3 == 0.25
    assert cal.mu_dry == 0.1


def test_material_shore_hardness_is_optional_metadata():
    cfg = parse_config("[material]\nshore_hardness_a = 50.0\n")
    assert cfg.material.shore_hardness_a == 50.0
    assert parse_config("").material.shore_hardness_a is None

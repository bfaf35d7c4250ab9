import math

import pytest
from hypothesis import given, strategies as st

from cartilab.quantities import (
    DimensionError,
    FORCE,
    KG_PER_LB,
    MASS,
    PAPER_UNITS,
    PRESSURE,
    SI_UNITS,
    STANDARD_GRAVITY_M_S2,
    UNITS,
    convert,
    mass_to_load,
    qty,
    unit_system,
)


# units grouped by dimension for round-trip sweeps
_LENGTHS = ("m", "cm", "mm")
_MASSES = ("kg", "g", "lb")
_FORCES = ("N", "kgf")
_PRESSURES = ("Pa", "kPa", "MPa", "kgf/cm2")


@given(st.floats(min_value=1e-6, max_value=1e6),
       st.sampled_from(_LENGTHS + _MASSES + _FORCES + _PRESSURES))
def test_round_trip_through_si(value, unit):
    q = qty(value, unit)
    assert q.to(unit) == pytest.approx(value, rel=1e-12)
    assert q.value == pytest.approx(value, rel=1e-12)


@given(st.floats(min_value=1e-6, max_value=1e6),
       st.sampled_from([_LENGTHS, _MASSES, _FORCES, _PRESSURES]))
def test_conversion_is_consistent_across_units(value, family):
    # converting a -> b -> a recovers the value for any pair in a family
    a, b = family[0], family[-1]
    q = qty(value, a)
    back = convert(convert(q, b), a)
    assert back.value == pytest.approx(value, rel=1e-12)
    assert back.unit == a


def test_exact_definition_constants():
    assert qty(1.0, "kgf").to("N") == STANDARD_GRAVITY_M_S2
    assert qty(1.0, "lb").to("kg") == KG_PER_LB
    assert qty(1.0, "kgf/cm2").to("Pa") == pytest.approx(98066.5, rel=1e-12)
    assert qty(1.0, "kgf/cm2").to("MPa") == pytest.approx(0.0980665, rel=1e-15)


def test_reference_pound_stacks():
    # the two pull-test stacks, in kg
    assert qty(8.0, "lb").to("kg") == pytest.approx(3.62873896, abs=1e-8)
    assert qty(15.0, "lb").to("kg") == pytest.approx(6.80388555, abs=1e-8)


def test_mass_to_load_paper_identity():
    # under the gravitational convention a 1 kg mass weighs exactly 1 kgf
    w = mass_to_load(qty(1.0, "kg"), PAPER_UNITS)
    assert w.dim == FORCE
    assert w.to("kgf") == 1.0
    assert mass_to_load(qty(1.0, "kg"), SI_UNITS).to("N") == STANDARD_GRAVITY_M_S2


def test_mass_to_load_rejects_non_mass():
    with pytest.raises(DimensionError):
        mass_to_load(qty(1.0, "N"))


def test_addition_requires_matching_dimension():
    with pytest.raises(DimensionError):
        qty(1.0, "cm") + qty(1.0, "kg")
    with pytest.raises(DimensionError):
        qty(1.0, "N") - qty(1.0, "Pa")
    with pytest.raises(DimensionError):
        qty(1.0, "cm") < qty(1.0, "kg")
    with pytest.raises(DimensionError):
        qty(1.0, "cm").to("kg")


def test_addition_keeps_left_unit():
    s = qty(1.0, "cm") + qty(5.0, "mm")
    assert s.unit == "cm"
    assert s.value == pytest.approx(1.5, rel=1e-12)


def test_multiplication_composes_dimensions():
    area = qty(2.0, "cm") * qty(3.0, "cm")
    assert area.dim == (2, 0, 0)
    assert area.to("cm2") == pytest.approx(6.0, rel=1e-12)
    volume = area * qty(4.0, "cm")
    assert volume.to("cm3") == pytest.approx(24.0, rel=1e-12)


def test_dimensionless_ratio_is_plain_float():
    ratio = qty(6.0, "cm") / qty(3.0, "cm")
    assert isinstance(ratio, float)
    assert ratio == 2.0


def test_pressure_times_area_is_force():
    f = qty(3.0, "kgf/cm2") * qty(2.0, "cm2")
    assert f.dim == FORCE
    assert f.to("kgf") == pytest.approx(6.0, rel=1e-12)


def test_scalar_arithmetic():
    q = 2.0 * qty(3.0, "mm")
    assert q.to("mm") == pytest.approx(6.0)
    assert (q / 2).to("mm") == pytest.approx(3.0)
    inv = 1.0 / qty(2.0, "cm")
    assert inv.dim == (-1, 0, 0)


def test_unknown_unit_rejected():
    with pytest.raises(ValueError, match="unknown unit"):
        qty(1.0, "furlong")
    with pytest.raises(ValueError, match="unknown unit system"):
        unit_system("imperial")


def test_unit_registry_spellings_are_exact():
    # these spellings are the external contract; renames break configs
    for name in ("mm", "cm", "m", "kg", "g", "lb", "N", "kgf",
                 "Pa", "kPa", "MPa", "kgf/cm2", "cm3", "mm3", "m3"):
        assert name in UNITS
    assert "KGF" not in UNITS
    assert "Kgf/cm2" not in UNITS


def test_display_uses_profile_units():
    q = qty(2.0, "kgf")
    assert PAPER_UNITS.display(q) == "2 kgf"
    assert SI_UNITS.display(q) == f"{2 * STANDARD_GRAVITY_M_S2:.6g} N"
    assert PAPER_UNITS.display_unit(PRESSURE) == "kgf/cm2"
    assert SI_UNITS.display_unit(MASS) == "kg"

"""cartilab: design and analysis toolkit for fluid-exuding cartilage sheets.

A cartilage sheet is a perforated rubber slab whose holes carry absorbent
fluid inserts; pressing the sheet squeezes fluid to the contact surface
and lowers friction.  The toolkit covers the stiffness chain (shear
modulus, shape factor, apparent modulus, deflection), exuded volumes,
contact-patch pitch geometry, pull-to-slip friction tables, quasi-static
load-cycle simulation of the fluid inventory, and hole-lattice layout
generation with CSV/JSON/STL export.
"""

from .quantities import (
    DimensionError,
    PAPER_UNITS,
    Quantity,
    SI_UNITS,
    UnitSystem,
    convert,
    mass_to_load,
    qty,
    unit_system,
)
from .elasticity import (
    DeflectionReport,
    MaterialSpec,
    REFERENCE_ASSEMBLY,
    REFERENCE_CELL,
    REFERENCE_LOAD,
    REFERENCE_MATERIAL_KGF,
    REFERENCE_MATERIAL_MPA,
    SheetAssembly,
    UnitCell,
    apparent_modulus,
    deflection,
    deflection_report,
    load_for_deflection,
    matches_reference_assembly,
    shape_factor,
    shear_modulus,
    sheet_deflection,
    shore_to_young,
)
from .contact import (
    PitchCheck,
    check_pitch_condition,
    chord_half_angle,
    max_pitch,
    min_deflection_for_pitch,
)
from .exudation import (
    ExudationResult,
    ReferenceConstantReport,
    SheetExudation,
    axial_exudation,
    check_reference_constant,
    lateral_exudation,
    sheet_exudation,
    total_exudation,
)
from .friction import (
    FrictionDataError,
    FrictionRow,
    FrictionTrial,
    build_table,
    friction_coefficient,
    read_trials_csv,
    rows_to_csv,
    rows_to_json,
    slip_threshold,
)
from .cycles import (
    ConservationError,
    FrictionCalibration,
    LoadStep,
    Protocol,
    ProtocolError,
    ReservoirState,
    StepRecord,
    UnloadStep,
    WipeStep,
    default_calibration,
    friction_estimate,
    load_protocol,
    make_state,
    per_cycle_exudation,
    run_protocol,
    series_to_csv,
    step_load,
    step_unload,
    step_wipe,
)
from .lattice import (
    CoverageReport,
    FlatSheet,
    HoleSpec,
    Layout,
    SphericalCap,
    export_layout,
    flat_layout,
    spherical_cap_layout,
    verify_coverage,
)
from .config import (
    ConfigError,
    SimConfig,
    ToolkitConfig,
    default_config,
    load_config,
    parse_config,
)

__version__ = "0.1.0"

"""Complex magnetic permeability maps of a standing-wave-driven
three-level medium: closed-form steady state, dynamics-based
verification, spatial scans with feature analysis, and deterministic
serialization.
"""

from .config import (
    OutputSpec,
    SimulationConfig,
    default_config,
    load_config,
    parse_config,
    serialize_config,
)
from .dynamics import (
    SettleReport,
    Trajectory,
    evolve,
    evolve_with_rho32,
    max_stable_dt,
    settle,
)
from .errors import (
    AsymmetricGrid,
    CoherenceMagnitudeWarning,
    ConfigError,
    LocalFieldSingularity,
    MumapError,
    NotSettled,
    ParseError,
    SingularSystem,
    UnstableStep,
    ValidationError,
)
from .estimator import StandingWavePermeability
from .fieldmap import (
    ExtremumReport,
    FieldMap,
    IsotropyReport,
    SweepRow,
    find_extrema,
    isotropy_profile,
    mirror_map_x,
    permeability_at_points,
    scan_grid,
    suggest_threshold,
    sweep_detuning,
    two_level_baseline,
)
from .mapio import (
    HeatmapStyle,
    read_map_csv,
    render_heatmap_ppm,
    write_map_csv,
    write_map_json,
)
from .params import (
    CoherenceVector,
    DriveParams,
    GridSpec,
    MediumParams,
    RateSet,
    default_grid,
)
from .response import (
    SystemMatrix,
    build_system,
    chi_prefactor,
    compute_xi,
    linear_solve_steady,
    magnetic_susceptibility,
    permeability_at_point,
    relative_permeability,
    standing_wave_rabi,
    steady_coherences,
)
from .validate import ValidationReport, run_oracle_check

__version__ = "0.1.0"

__all__ = [
    "AsymmetricGrid",
    "CoherenceMagnitudeWarning",
    "CoherenceVector",
    "ConfigError",
    "DriveParams",
    "ExtremumReport",
    "FieldMap",
    "GridSpec",
    "HeatmapStyle",
    "IsotropyReport",
    "LocalFieldSingularity",
    "MediumParams",
    "MumapError",
    "NotSettled",
    "OutputSpec",
    "ParseError",
    "RateSet",
    "SettleReport",
    "SimulationConfig",
    "SingularSystem",
    "StandingWavePermeability",
    "SweepRow",
    "SystemMatrix",
    "Trajectory",
    "UnstableStep",
    "ValidationError",
    "ValidationReport",
    "build_system",
    "chi_prefactor",
    "compute_xi",
    "default_config",
    "default_grid",
    "evolve",
    "evolve_with_rho32",
    "find_extrema",
    "isotropy_profile",
    "linear_solve_steady",
    "load_config",
    "magnetic_susceptibility",
    "max_stable_dt",
    "mirror_map_x",
    "parse_config",
    "permeability_at_point",
    "permeability_at_points",
    "read_map_csv",
    "relative_permeability",
    "render_heatmap_ppm",
    "run_oracle_check",
    "scan_grid",
    "serialize_config",
    "settle",
    "standing_wave_rabi",
    "steady_coherences",
    "suggest_threshold",
    "sweep_detuning",
    "two_level_baseline",
    "write_map_csv",
    "write_map_json",
]

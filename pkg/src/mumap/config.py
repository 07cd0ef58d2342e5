"""JSON configuration: parsing, default filling, strict validation.

The document is a single JSON object with optional sections ``rates``,
``drive``, ``medium``, ``grid`` and ``output``; every physics field is
optional and falls back to the bundled defaults. Unknown keys are
rejected. The full schema lives in docs/config-schema.md.
"""

import json
from dataclasses import dataclass

from .errors import ParseError, ValidationError
from .params import DriveParams, GridSpec, MediumParams, RateSet

OUTPUT_FORMATS = ("csv", "json", "ppm")

_RATE_FIELDS = ("gamma1", "gamma2", "gamma3", "gamma_scale")
_DRIVE_FIELDS = ("delta_p", "delta_c", "omega_b", "omega_c0", "phi_x", "phi_y", "wavelength")
_MEDIUM_FIELDS = ("mu31", "density_n")
_GRID_FIELDS = ("x_min", "x_max", "y_min", "y_max", "nx", "ny")
_INT_FIELDS = ("nx", "ny")


@dataclass(frozen=True)
class OutputSpec:
    """Where and how map-producing commands write their result."""

    format: str = "csv"
    path: str | None = None

    def __post_init__(self):
        if self.format not in OUTPUT_FORMATS:
            raise ValueError(
                f"format must be one of {OUTPUT_FORMATS}, got {self.format!r}"
            )


@dataclass(frozen=True)
class SimulationConfig:
    """Fully resolved simulation settings."""

    rates: RateSet
    drive: DriveParams
    medium: MediumParams
    grid: GridSpec
    output: OutputSpec


def default_config() -> SimulationConfig:
    """Configuration with every field at its default."""
    drive = DriveParams()
    half = 0.5 * drive.wavelength
    return SimulationConfig(
        rates=RateSet(),
        drive=drive,
        medium=MediumParams(),
        grid=GridSpec(-half, half, -half, half, 201, 201),
        output=OutputSpec(),
    )


def parse_config(text: str) -> SimulationConfig:
    """Parse a JSON config document, filling defaults and validating.

    Raises ParseError for malformed JSON and ValidationError (naming the
    offending key) for unknown keys, wrong types or out-of-range values.
    """
    if text.strip() == "":
        return default_config()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed config document: {exc}") from None
    return config_from_dict(doc)


def config_from_dict(doc) -> SimulationConfig:
    if not isinstance(doc, dict):
        raise ValidationError("config document must be a JSON object")
    known_sections = ("rates", "drive", "medium", "grid", "output")
    for key in doc:
        if key not in known_sections:
            raise ValidationError(f"unknown config key {key!r}", key=key)

    rates = _build("rates", doc.get("rates", {}), _RATE_FIELDS, RateSet)
    drive = _build("drive", doc.get("drive", {}), _DRIVE_FIELDS, DriveParams)
    medium = _build("medium", doc.get("medium", {}), _MEDIUM_FIELDS, MediumParams)

    half = 0.5 * drive.wavelength
    grid_defaults = {
        "x_min": -half, "x_max": half, "y_min": -half, "y_max": half,
        "nx": 201, "ny": 201,
    }
    grid_section = doc.get("grid", {})
    _check_section("grid", grid_section, _GRID_FIELDS)
    grid_kwargs = dict(grid_defaults)
    for key, value in grid_section.items():
        grid_kwargs[key] = _coerce_number("grid", key, value, want_int=key in _INT_FIELDS)
    grid = _construct("grid", GridSpec, grid_kwargs)

    output_section = doc.get("output", {})
    if not isinstance(output_section, dict):
        raise ValidationError("section 'output' must be an object", key="output")
    for key in output_section:
        if key not in ("format", "path"):
            raise ValidationError(f"unknown config key 'output.{key}'", key=f"output.{key}")
    fmt = output_section.get("format", "csv")
    path = output_section.get("path", None)
    if not isinstance(fmt, str):
        raise ValidationError("'output.format' must be a string", key="output.format")
    if path is not None and not isinstance(path, str):
        raise ValidationError("'output.path' must be a string or null", key="output.path")
    output = _construct("output", OutputSpec, {"format": fmt, "path": path})

    return SimulationConfig(rates=rates, drive=drive, medium=medium, grid=grid, output=output)


def _check_section(name, section, fields):
    if not isinstance(section, dict):
        raise ValidationError(f"section {name!r} must be an object", key=name)
    for key in section:
        if key not in fields:
            raise ValidationError(f"unknown config key '{name}.{key}'", key=f"{name}.{key}")


def _coerce_number(section, key, value, want_int=False):
    full_key = f"{section}.{key}"
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"'{full_key}' must be a number", key=full_key)
    if want_int:
        if not isinstance(value, int):
            raise ValidationError(f"'{full_key}' must be an integer", key=full_key)
        return value
    return float(value)


def _build(name, section, fields, cls):
    _check_section(name, section, fields)
    kwargs = {
        key: _coerce_number(name, key, value, want_int=key in _INT_FIELDS)
        for key, value in section.items()
    }
    return _construct(name, cls, kwargs)


def _construct(name, cls, kwargs):
    try:
        return cls(**kwargs)
    except ValueError as exc:
        message = str(exc)
        field = message.split()[0] if message else name
        raise ValidationError(f"invalid config value: {message}", key=f"{name}.{field}") from None


def config_to_dict(config: SimulationConfig) -> dict:
    """Plain-dict form with fixed key order (stable serialization)."""
    return {
        "rates": {
            "gamma1": config.rates.gamma1,
            "gamma2": config.rates.gamma2,
            "gamma3": config.rates.gamma3,
            "gamma_scale": config.rates.gamma_scale,
        },
        "drive": {
            "delta_p": config.drive.delta_p,
            "delta_c": config.drive.delta_c,
            "omega_b": config.drive.omega_b,
            "omega_c0": config.drive.omega_c0,
            "phi_x": config.drive.phi_x,
            "phi_y": config.drive.phi_y,
            "wavelength": config.drive.wavelength,
        },
        "medium": {
            "mu31": config.medium.mu31,
            "density_n": config.medium.density_n,
        },
        "grid": {
            "x_min": config.grid.x_min,
            "x_max": config.grid.x_max,
            "y_min": config.grid.y_min,
            "y_max": config.grid.y_max,
            "nx": config.grid.nx,
            "ny": config.grid.ny,
        },
        "output": {
            "format": config.output.format,
            "path": config.output.path,
        },
    }


def serialize_config(config: SimulationConfig) -> str:
    """Deterministic JSON rendering; parse_config inverts it exactly."""
    return json.dumps(config_to_dict(config), indent=2) + "\n"


def load_config(path) -> SimulationConfig:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config(handle.read())

"""Deterministic serialization of field maps: CSV, JSON and binary PPM.

All writers produce byte-stable output for identical inputs: fixed key
order, fixed number formatting (scientific notation, 9 significant
digits in CSV), LF line endings, and a fully specified colormap formula
for the image writer.
"""

import json
from dataclasses import dataclass

import numpy as np

from .config import SimulationConfig, config_to_dict
from .errors import ParseError
from .fieldmap import FieldMap
from .params import GridSpec

CSV_HEADER = "x,y,re_mu,im_mu,flag"


@dataclass(frozen=True)
class HeatmapStyle:
    """Clamp range for the diverging blue-white-red heatmap."""

    vmin: float
    vmax: float

    def __post_init__(self):
        if not self.vmax > self.vmin:
            raise ValueError(f"vmax must be > vmin, got [{self.vmin}, {self.vmax}]")


def write_map_csv(field_map: FieldMap) -> str:
    """Render a map as CSV text, y outer ascending, x inner ascending."""
    lines = [CSV_HEADER]
    re = field_map.values.real
    im = field_map.values.imag
    for iy in range(field_map.grid.ny):
        y = field_map.ys[iy]
        for ix in range(field_map.grid.nx):
            flag = "singular" if field_map.flags[iy, ix] else "ok"
            lines.append(
                f"{field_map.xs[ix]:.8e},{y:.8e},{re[iy, ix]:.8e},{im[iy, ix]:.8e},{flag}"
            )
    return "\n".join(lines) + "\n"


def read_map_csv(text: str) -> FieldMap:
    """Parse CSV text produced by write_map_csv back into a FieldMap."""
    lines = text.splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ParseError(f"expected CSV header {CSV_HEADER!r}")
    xs, ys, res, ims, flags = [], [], [], [], []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 5:
            raise ParseError(f"line {lineno}: expected 5 fields, got {len(parts)}")
        try:
            xs.append(float(parts[0]))
            ys.append(float(parts[1]))
            res.append(float(parts[2]))
            ims.append(float(parts[3]))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        if parts[4] not in ("ok", "singular"):
            raise ParseError(f"line {lineno}: unknown flag {parts[4]!r}")
        flags.append(parts[4] == "singular")

    ys_arr = np.array(ys)
    nx = int(np.argmax(ys_arr != ys_arr[0])) if (ys_arr != ys_arr[0]).any() else len(ys)
    if nx == 0 or len(ys) % nx != 0:
        raise ParseError("rows do not form a rectangular grid")
    ny = len(ys) // nx
    x_axis = np.array(xs[:nx])
    y_axis = ys_arr[::nx]
    grid = GridSpec(
        x_min=float(x_axis[0]), x_max=float(x_axis[-1]),
        y_min=float(y_axis[0]), y_max=float(y_axis[-1]),
        nx=nx, ny=ny,
    )
    values = (np.array(res) + 1j * np.array(ims)).reshape(ny, nx)
    return FieldMap(
        grid=grid,
        xs=x_axis,
        ys=y_axis,
        values=values,
        flags=np.array(flags, dtype=bool).reshape(ny, nx),
    )


def write_map_json(field_map: FieldMap, config: SimulationConfig) -> str:
    """Render a map plus its config as one JSON object.

    Key order is fixed: config, grid, values, flags. Values are [re, im]
    pairs in row-major order with x varying fastest.
    """
    re = field_map.values.real
    im = field_map.values.imag
    values = []
    for iy in range(field_map.grid.ny):
        for ix in range(field_map.grid.nx):
            values.append([float(re[iy, ix]), float(im[iy, ix])])
    doc = {
        "config": config_to_dict(config),
        "grid": {
            "x_min": field_map.grid.x_min,
            "x_max": field_map.grid.x_max,
            "y_min": field_map.grid.y_min,
            "y_max": field_map.grid.y_max,
            "nx": field_map.grid.nx,
            "ny": field_map.grid.ny,
        },
        "values": values,
        "flags": [int(f) for f in field_map.flags.ravel()],
    }
    return json.dumps(doc, indent=2) + "\n"


def render_heatmap_ppm(field_map: FieldMap, style: HeatmapStyle) -> bytes:
    """Render Re mu_r as a binary PPM (P6) image, bit-exact per formula.

    Pixel row 0 corresponds to y_max. Each value is clamped to
    [vmin, vmax] and mapped through a diverging colormap: blue (0,0,255)
    to white below the midpoint, white to red (255,0,0) above it, with
    channels rounded half-up. Singular or NaN points render black.
    """
    re = field_map.values.real
    bad = field_map.flags | ~np.isfinite(re)

    with np.errstate(invalid="ignore"):
        t = (re - style.vmin) / (style.vmax - style.vmin)
    t = np.clip(np.where(bad, 0.0, t), 0.0, 1.0)

    low = t <= 0.5
    s_low = 2.0 * t
    s_high = 2.0 * t - 1.0

    r = np.where(low, 255.0 * s_low, 255.0)
    g = np.where(low, 255.0 * s_low, 255.0 * (1.0 - s_high))
    b = np.where(low, 255.0, 255.0 * (1.0 - s_high))

    rgb = np.stack([r, g, b], axis=-1)
    rgb = np.floor(rgb + 0.5).astype(np.uint8)
    rgb[bad] = 0

    # image rows run from y_max down
    rgb = rgb[::-1, :, :]
    header = f"P6\n{field_map.grid.nx} {field_map.grid.ny}\n255\n".encode("ascii")
    return header + rgb.tobytes()

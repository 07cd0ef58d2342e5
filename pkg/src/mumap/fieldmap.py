"""Spatial permeability maps: grid scans, feature detection, sweeps.

The scanner evaluates the same response kernels as the single-point API,
vectorized over the lattice, so grid values agree with point evaluation
to rounding and the output is independent of evaluation order.
"""

from dataclasses import dataclass, replace

import numpy as np
from scipy import ndimage

from .errors import AsymmetricGrid, LocalFieldSingularity, SingularSystem
from .params import DriveParams, GridSpec, MediumParams, RateSet
from .response import (
    DETERMINANT_GUARD,
    LOCAL_FIELD_GUARD,
    chi_prefactor,
    compute_xi,
    local_field_denominator,
    permeability_at_point,
    standing_wave_rabi,
)

_QUADRANT_ORDER = {"I": 0, "II": 1, "III": 2, "IV": 3, "axis": 4}

# A crater needs its center to sit above the rim floor by this fraction
# of the rim depth; below it the feature counts as a spike.
CRATER_CONTRAST = 0.05


@dataclass(frozen=True)
class FieldMap:
    """Complex permeability sampled on a rectangular lattice.

    values[iy, ix] corresponds to (xs[ix], ys[iy]); flags marks points
    where the response is singular (values there are NaN).
    """

    grid: GridSpec
    xs: np.ndarray
    ys: np.ndarray
    values: np.ndarray
    flags: np.ndarray


@dataclass(frozen=True)
class ExtremumReport:
    """One detected negative feature of the real permeability map."""

    position: tuple
    value: float
    kind: str
    crater_radius: float | None
    quadrant: str


@dataclass(frozen=True)
class IsotropyReport:
    """Spread statistics of Re mu_r sampled on a circle."""

    center: tuple
    radius: float
    samples: int
    mean: float
    min: float
    max: float
    spread: float
    relative_spread: float
    excluded: int


@dataclass(frozen=True)
class SweepRow:
    """Per-detuning summary emitted by sweep_detuning."""

    detuning: float
    min_re_mu: float
    kind: str | None
    quadrants: tuple


def permeability_at_points(x, y, drive: DriveParams, rates: RateSet, medium: MediumParams):
    """Vectorized permeability at arbitrary coordinates (meters).

    Returns (values, flags) with the same shape as the broadcast inputs;
    singular points are flagged and carry NaN. Uses the same arithmetic
    as the scalar pipeline.
    """
    omega_c = standing_wave_rabi(np.asarray(x, dtype=float), np.asarray(y, dtype=float), drive)

    xi = compute_xi(drive, rates)
    den = omega_c * np.conj(omega_c) + xi * (rates.optical_decay + 1j * drive.delta_p)
    singular = np.abs(den) <= DETERMINANT_GUARD

    with np.errstate(divide="ignore", invalid="ignore"):
        rho31 = 1j * drive.omega_b * xi / den
        chi = chi_prefactor(drive, rates, medium) * rho31
        nchi = medium.density_n * chi
        lf_den = local_field_denominator(nchi)
        singular = singular | (np.abs(lf_den) <= LOCAL_FIELD_GUARD)
        values = (1.0 + 2.0 * nchi / 3.0) / lf_den

    values = np.where(singular, complex(np.nan, np.nan), values)
    return values, singular


def scan_grid(
    grid: GridSpec, drive: DriveParams, rates: RateSet, medium: MediumParams
) -> FieldMap:
    """Evaluate the relative permeability on the full lattice.

    Singular points are flagged and carry NaN instead of aborting the
    scan. The evaluation is deterministic and row-order independent
    (every point is a pure function of its coordinates).
    """
    xs = grid.x_values()
    ys = grid.y_values()
    x2d, y2d = np.meshgrid(xs, ys)
    values, flags = permeability_at_points(x2d, y2d, drive, rates, medium)
    return FieldMap(grid=grid, xs=xs, ys=ys, values=values, flags=flags)


def two_level_baseline(drive: DriveParams, rates: RateSet, medium: MediumParams):
    """Re mu_r with the standing wave off (value on its node lines)."""
    zero_drive = replace(drive, omega_c0=0.0)
    try:
        return permeability_at_point(0.0, 0.0, zero_drive, rates, medium).real
    except (SingularSystem, LocalFieldSingularity):
        return None


def suggest_threshold(field_map: FieldMap, baseline) -> float:
    """Feature threshold halfway between the map minimum and the baseline.

    Masks produced with this threshold exclude the standing-wave node
    background, so each drive antinode contributes one connected region.
    """
    re = field_map.values.real
    finite = re[np.isfinite(re)]
    if finite.size == 0:
        return -1.0
    vmin = float(finite.min())
    if baseline is None or not baseline > vmin:
        return vmin - 1.0
    return 0.5 * (vmin + float(baseline))


def find_extrema(field_map: FieldMap, threshold: float):
    """Detect negative features of Re mu_r below `threshold`.

    Connected regions (8-neighborhood) of below-threshold points are
    analyzed one by one. A region whose minimum lies on a ring around an
    interior maximum (contrast above CRATER_CONTRAST of the rim depth) is
    a crater, reported at the ring center; otherwise it is a spike,
    reported at its minimum. Returns a list sorted deepest first; empty
    when nothing falls below the threshold.
    """
    if threshold >= 0:
        raise ValueError(f"threshold must be < 0, got {threshold}")
    re = field_map.values.real
    mask = np.isfinite(re) & (re < threshold)
    if not mask.any():
        return []

    labels, n_regions = ndimage.label(mask, structure=np.ones((3, 3), dtype=bool))
    strict_max = _strict_local_maxima(re)
    reports = []
    for region_id in range(1, n_regions + 1):
        region = labels == region_id
        reports.append(_analyze_region(field_map, re, region, strict_max))
    reports.sort(key=lambda r: (r.value, r.position[1], r.position[0]))
    return reports


def _analyze_region(field_map, re, region, strict_max):
    masked = np.where(region, re, np.inf)
    iy_min, ix_min = np.unravel_index(np.argmin(masked), masked.shape)
    vmin = float(re[iy_min, ix_min])

    center_idx = _crater_center(re, region, strict_max)
    kind = "spike"
    crater_radius = None
    position_idx = (iy_min, ix_min)
    if center_idx is not None:
        center_value = float(re[center_idx])
        if center_idx != (iy_min, ix_min) and center_value > vmin + CRATER_CONTRAST * abs(vmin):
            kind = "crater"
            position_idx = center_idx
            crater_radius = float(
                np.hypot(
                    field_map.xs[ix_min] - field_map.xs[center_idx[1]],
                    field_map.ys[iy_min] - field_map.ys[center_idx[0]],
                )
            )

    x = float(field_map.xs[position_idx[1]])
    y = float(field_map.ys[position_idx[0]])
    return ExtremumReport(
        position=(x, y),
        value=vmin,
        kind=kind,
        crater_radius=crater_radius,
        quadrant=_quadrant(x, y, field_map.grid),
    )


def _crater_center(re, region, strict_max):
    """Best interior-maximum candidate of a region, or None.

    Candidates are the enclosed holes of the region (their maximum) or,
    when the threshold swallowed the ring center, strict local maxima in
    the region interior.
    """
    filled = ndimage.binary_fill_holes(region)
    holes = filled & ~region
    candidates = None
    if holes.any():
        candidates = holes
    else:
        interior = ndimage.binary_erosion(filled)
        cand = strict_max & interior & region
        if cand.any():
            candidates = cand
    if candidates is None:
        return None
    masked = np.where(candidates, re, -np.inf)
    masked = np.where(np.isnan(masked), -np.inf, masked)
    iy, ix = np.unravel_index(np.argmax(masked), masked.shape)
    if not candidates[iy, ix]:
        return None
    return (int(iy), int(ix))


def _strict_local_maxima(re):
    """Mask of points strictly above all 8 neighbors (NaN never qualifies)."""
    padded = np.full((re.shape[0] + 2, re.shape[1] + 2), -np.inf)
    padded[1:-1, 1:-1] = re
    neighbor_max = np.full_like(re, -np.inf)
    for dy in (-1, 0, 1):
        for dx in (-1, 0, 1):
            if dy == 0 and dx == 0:
                continue
            shifted = padded[1 + dy : padded.shape[0] - 1 + dy,
                             1 + dx : padded.shape[1] - 1 + dx]
            neighbor_max = np.fmax(neighbor_max, shifted)
    return re > neighbor_max


def _quadrant(x, y, grid: GridSpec) -> str:
    if abs(x) < grid.dx or abs(y) < grid.dy:
        return "axis"
    if x > 0:
        return "I" if y > 0 else "IV"
    return "II" if y > 0 else "III"


def isotropy_profile(
    drive: DriveParams,
    rates: RateSet,
    medium: MediumParams,
    center,
    radius: float,
    samples: int = 64,
) -> IsotropyReport:
    """Spread of Re mu_r on a circle, from exact point evaluation.

    Singular sample points are excluded from the statistics and counted
    in the report.
    """
    if samples < 16:
        raise ValueError(f"samples must be >= 16, got {samples}")
    if radius <= 0:
        raise ValueError(f"radius must be > 0, got {radius}")
    cx, cy = center
    angles = np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False)
    values = []
    excluded = 0
    for theta in angles:
        x = cx + radius * np.cos(theta)
        y = cy + radius * np.sin(theta)
        try:
            values.append(permeability_at_point(x, y, drive, rates, medium).real)
        except (SingularSystem, LocalFieldSingularity):
            excluded += 1
    if not values:
        raise SingularSystem("all circle samples were singular", x=cx, y=cy)
    arr = np.array(values)
    mean = float(arr.mean())
    vmin = float(arr.min())
    vmax = float(arr.max())
    spread = vmax - vmin
    relative = spread / abs(mean) if mean != 0.0 else np.inf
    return IsotropyReport(
        center=(cx, cy),
        radius=radius,
        samples=samples,
        mean=mean,
        min=vmin,
        max=vmax,
        spread=spread,
        relative_spread=relative,
        excluded=excluded,
    )


def mirror_map_x(field_map: FieldMap) -> FieldMap:
    """Reflect a map about the x = 0 axis (values reindexed x -> -x).

    Requires a grid symmetric about zero with an odd number of columns so
    every column has a mirror partner.
    """
    grid = field_map.grid
    if grid.x_min != -grid.x_max or grid.nx % 2 == 0:
        raise AsymmetricGrid(
            "mirror requires x_min == -x_max and an odd number of x points, "
            f"got [{grid.x_min}, {grid.x_max}] with nx={grid.nx}"
        )
    return FieldMap(
        grid=grid,
        xs=field_map.xs,
        ys=field_map.ys,
        values=field_map.values[:, ::-1].copy(),
        flags=field_map.flags[:, ::-1].copy(),
    )


def sweep_detuning(
    axis: str,
    values,
    drive: DriveParams,
    rates: RateSet,
    medium: MediumParams,
    grid: GridSpec,
):
    """Scan maps for a list of probe or coupling detunings.

    Each row carries the global minimum of Re mu_r, the kind of the
    deepest detected feature and the quadrants of all features. Feature
    detection uses the midpoint threshold between map minimum and the
    standing-wave-off baseline.
    """
    if axis not in ("probe", "coupling"):
        raise ValueError(f"axis must be 'probe' or 'coupling', got {axis!r}")
    values = list(values)
    if not values:
        raise ValueError("values must be a non-empty list of detunings")

    rows = []
    for detuning in values:
        if axis == "probe":
            drv = replace(drive, delta_p=float(detuning))
        else:
            drv = replace(drive, delta_c=float(detuning))
        field_map = scan_grid(grid, drv, rates, medium)
        re = field_map.values.real
        finite = re[np.isfinite(re)]
        if finite.size == 0:
            rows.append(SweepRow(float(detuning), float("nan"), None, ()))
            continue
        baseline = two_level_baseline(drv, rates, medium)
        threshold = suggest_threshold(field_map, baseline)
        reports = find_extrema(field_map, threshold) if threshold < 0 else []
        quadrants = tuple(
            sorted({r.quadrant for r in reports}, key=_QUADRANT_ORDER.get)
        )
        rows.append(
            SweepRow(
                detuning=float(detuning),
                min_re_mu=float(finite.min()),
                kind=reports[0].kind if reports else None,
                quadrants=quadrants,
            )
        )
    return rows

"""Parameter value types for the three-level medium and the scan grid.

Rates, detunings and Rabi frequencies are dimensionless multiples of the
reference rate ``gamma_scale`` (an angular frequency in rad/s); only the
dipole moment, number density, wavelength and ``gamma_scale`` itself carry
SI units.
"""

from dataclasses import dataclass

import numpy as np
from scipy import constants

MU0 = constants.mu_0
HBAR = constants.hbar


def _require(cond, message):
    if not cond:
        raise ValueError(message)


@dataclass(frozen=True)
class RateSet:
    """Decay and dephasing rates of the three-level system.

    gamma1 is the collisional dephasing rate of the lower level pair,
    gamma2 and gamma3 are spontaneous decay rates; all three in units of
    gamma_scale.
    """

    gamma1: float = 0.5
    gamma2: float = 1.0
    gamma3: float = 1.5
    gamma_scale: float = 1e7

    def __post_init__(self):
        _require(self.gamma1 >= 0, f"gamma1 must be >= 0, got {self.gamma1}")
        _require(self.gamma2 > 0, f"gamma2 must be > 0, got {self.gamma2}")
        _require(self.gamma3 > 0, f"gamma3 must be > 0, got {self.gamma3}")
        _require(self.gamma_scale > 0,
                 f"gamma_scale must be > 0, got {self.gamma_scale}")

    @property
    def optical_decay(self):
        """Decay rate of the optical coherence, (gamma1 + gamma3) / 2."""
        return 0.5 * (self.gamma1 + self.gamma3)


@dataclass(frozen=True)
class DriveParams:
    """Probe and standing-wave drive settings.

    delta_p / delta_c are the probe and coupling detunings, omega_b the
    probe Rabi frequency and omega_c0 the standing-wave Rabi amplitude
    (all in gamma units); phi_x / phi_y are the standing-wave phases in
    radians and wavelength is the drive wavelength in meters.
    """

    delta_p: float = 0.0
    delta_c: float = 0.0
    omega_b: float = 0.1
    omega_c0: float = 5.0
    phi_x: float = 0.0
    phi_y: float = 0.0
    wavelength: float = 4e-6

    def __post_init__(self):
        _require(self.omega_b > 0, f"omega_b must be > 0, got {self.omega_b}")
        _require(self.omega_c0 >= 0,
                 f"omega_c0 must be >= 0, got {self.omega_c0}")
        _require(self.wavelength > 0,
                 f"wavelength must be > 0, got {self.wavelength}")

    @property
    def wavenumber(self):
        """Drive wave number 2*pi/wavelength in rad/m."""
        return 2.0 * np.pi / self.wavelength


@dataclass(frozen=True)
class MediumParams:
    """Bulk medium properties entering the susceptibility.

    mu31 is the transition magnetic dipole moment (A m^2) and density_n the
    atom number density (m^-3). mu0 and hbar default to CODATA values.
    """

    mu31: float = 6.6e-23
    density_n: float = 5e24
    mu0: float = MU0
    hbar: float = HBAR

    def __post_init__(self):
        _require(self.mu31 > 0, f"mu31 must be > 0, got {self.mu31}")
        # density_n = 0 is allowed: it is the vacuum limit (mu_r = 1).
        _require(self.density_n >= 0,
                 f"density_n must be >= 0, got {self.density_n}")
        _require(self.mu0 > 0, f"mu0 must be > 0, got {self.mu0}")
        _require(self.hbar > 0, f"hbar must be > 0, got {self.hbar}")


@dataclass(frozen=True)
class GridSpec:
    """Rectangular scan window and point counts (x fastest, y outer)."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int = 201
    ny: int = 201

    def __post_init__(self):
        _require(self.x_max > self.x_min,
                 f"x_max must be > x_min, got [{self.x_min}, {self.x_max}]")
        _require(self.y_max > self.y_min,
                 f"y_max must be > y_min, got [{self.y_min}, {self.y_max}]")
        _require(self.nx >= 2, f"nx must be >= 2, got {self.nx}")
        _require(self.ny >= 2, f"ny must be >= 2, got {self.ny}")

    @property
    def dx(self):
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def dy(self):
        return (self.y_max - self.y_min) / (self.ny - 1)

    def x_values(self):
        return np.linspace(self.x_min, self.x_max, self.nx)

    def y_values(self):
        return np.linspace(self.y_min, self.y_max, self.ny)


def default_grid(wavelength=4e-6, nx=201, ny=201):
    """One-wavelength window centered on the origin."""
    half = 0.5 * wavelength
    return GridSpec(-half, half, -half, half, nx, ny)


@dataclass(frozen=True)
class CoherenceVector:
    """Steady or instantaneous values of the two driven coherences."""

    rho31: complex
    rho21: complex

    def as_array(self):
        return np.array([self.rho31, self.rho21], dtype=complex)

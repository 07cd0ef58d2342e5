"""Steady-state linear response of the driven three-level medium at a point.

The probe couples the magnetic-dipole transition of the lower level pair
while an orthogonal pair of standing waves drives the second transition.
With the population pinned to the lowest level, the two driven coherences
obey a linear 2x2 system whose steady state has a closed form; the
magnetic susceptibility and the local-field-corrected relative
permeability follow from the optical coherence.

All functions here are pure and accept scalars; vectorized equivalents
used by the grid scanner live in :mod:`mumap.fieldmap` and share the same
kernels, so both paths agree to rounding.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import CoherenceMagnitudeWarning, LocalFieldSingularity, SingularSystem
from .params import CoherenceVector, DriveParams, MediumParams, RateSet

# Double-precision guard bands; the determinant is in gamma^2 units.
DETERMINANT_GUARD = 1e-12
LOCAL_FIELD_GUARD = 1e-9


@dataclass(frozen=True)
class SystemMatrix:
    """Coefficients of the linear coherence equation dR/dt = -m R + a."""

    m: np.ndarray
    a: np.ndarray


def compute_xi(drive: DriveParams, rates: RateSet) -> complex:
    """Complex decay-plus-detuning factor of the two-photon coherence."""
    return complex(0.5 * rates.gamma2, drive.delta_p - drive.delta_c)


def standing_wave_rabi(x, y, drive: DriveParams):
    """Local Rabi frequency of the superposed orthogonal standing waves.

    Returns omega_c0 * [sin(k x + phi_x) + sin(k y + phi_y)] in gamma
    units; the value is real and may be negative. Accepts scalars or
    arrays.
    """
    k = drive.wavenumber
    return drive.omega_c0 * (np.sin(k * x + drive.phi_x) + np.sin(k * y + drive.phi_y))


def build_system(omega_c, drive: DriveParams, rates: RateSet) -> SystemMatrix:
    """Assemble the 2x2 coefficient matrix and drive vector in gamma units."""
    oc = complex(omega_c)
    m = np.array(
        [
            [1j * drive.delta_p + rates.optical_decay, -1j * oc],
            [-1j * np.conj(oc), compute_xi(drive, rates)],
        ],
        dtype=complex,
    )
    a = np.array([1j * drive.omega_b, 0.0], dtype=complex)
    return SystemMatrix(m=m, a=a)


def _steady_denominator(omega_c, drive, rates):
    # Equals det(m) of build_system; shared by scalar and grid paths.
    xi = compute_xi(drive, rates)
    return omega_c * np.conj(omega_c) + xi * (rates.optical_decay + 1j * drive.delta_p)


def steady_coherences(omega_c, drive: DriveParams, rates: RateSet) -> CoherenceVector:
    """Closed-form steady state of the two driven coherences.

    rho31 = i omega_b xi / D and rho21 = -omega_b conj(omega_c) / D with
    D = |omega_c|^2 + xi * ((gamma1 + gamma3)/2 + i delta_p).

    Raises SingularSystem when |D| falls below the determinant guard.
    Warns when a coherence magnitude exceeds 1 (the inputs have left the
    weak-probe regime the closed form assumes).
    """
    den = _steady_denominator(omega_c, drive, rates)
    if abs(den) <= DETERMINANT_GUARD:
        raise SingularSystem(
            f"steady-state denominator magnitude {abs(den):.3e} below guard"
        )
    xi = compute_xi(drive, rates)
    rho31 = 1j * drive.omega_b * xi / den
    rho21 = -drive.omega_b * np.conj(omega_c) / den
    if abs(rho31) > 1.0 or abs(rho21) > 1.0:
        warnings.warn(
            "coherence magnitude exceeds 1; inputs are outside the "
            "weak-probe regime",
            CoherenceMagnitudeWarning,
            stacklevel=2,
        )
    return CoherenceVector(rho31=complex(rho31), rho21=complex(rho21))


def linear_solve_steady(sys: SystemMatrix) -> CoherenceVector:
    """Steady state from an explicit 2x2 Cramer solve of m R = a.

    Independent of the closed form above; used as a cross-check oracle.
    """
    m, a = sys.m, sys.a
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det) <= DETERMINANT_GUARD:
        raise SingularSystem(f"determinant magnitude {abs(det):.3e} below guard")
    rho31 = (a[0] * m[1, 1] - m[0, 1] * a[1]) / det
    rho21 = (m[0, 0] * a[1] - m[1, 0] * a[0]) / det
    return CoherenceVector(rho31=complex(rho31), rho21=complex(rho21))


def chi_prefactor(drive: DriveParams, rates: RateSet, medium: MediumParams) -> float:
    """Scale factor mapping rho31 to the per-atom susceptibility (m^3).

    The susceptibility is chi = 2 mu0 mu31 rho31 / B. The probe flux
    density B never needs a numeric value: the probe Rabi frequency is
    omega_b_abs = B mu31 / (2 hbar), so B = 2 hbar omega_b_abs / mu31 and

        chi = mu0 mu31^2 rho31 / (hbar omega_b_abs),

    with omega_b_abs = omega_b * gamma_scale in rad/s. Since rho31 is
    linear in omega_b, chi is independent of the probe strength.
    """
    omega_b_abs = drive.omega_b * rates.gamma_scale
    return medium.mu0 * medium.mu31**2 / (medium.hbar * omega_b_abs)


def magnetic_susceptibility(
    rho31, drive: DriveParams, rates: RateSet, medium: MediumParams
) -> complex:
    """Per-atom magnetic susceptibility induced by the probe (m^3)."""
    return chi_prefactor(drive, rates, medium) * rho31


def local_field_denominator(nchi):
    """Clausius-Mossotti denominator 1 - N chi / 3."""
    return 1.0 - nchi / 3.0


def relative_permeability(chi, medium: MediumParams) -> complex:
    """Relative permeability from the Clausius-Mossotti local-field relation.

    mu_r = (1 + 2 N chi / 3) / (1 - N chi / 3). Raises
    LocalFieldSingularity within the guard band of the N chi = 3 pole
    instead of returning an unbounded value silently.
    """
    nchi = medium.density_n * chi
    den = local_field_denominator(nchi)
    if abs(den) <= LOCAL_FIELD_GUARD:
        raise LocalFieldSingularity(
            f"local-field denominator magnitude {abs(den):.3e} below guard"
        )
    return complex((1.0 + 2.0 * nchi / 3.0) / den)


def permeability_at_point(
    x, y, drive: DriveParams, rates: RateSet, medium: MediumParams
) -> complex:
    """Relative permeability at one spatial point (meters).

    Deterministic pure composition: standing-wave amplitude, steady
    coherences, susceptibility, local-field correction. Singularities are
    re-raised tagged with the offending point.
    """
    omega_c = standing_wave_rabi(x, y, drive)
    try:
        coh = steady_coherences(omega_c, drive, rates)
        chi = magnetic_susceptibility(coh.rho31, drive, rates, medium)
        return relative_permeability(chi, medium)
    except SingularSystem as exc:
        raise SingularSystem(str(exc), x=x, y=y) from None
    except LocalFieldSingularity as exc:
        raise LocalFieldSingularity(str(exc), x=x, y=y) from None

"""Scikit-learn style interface to the point response.

The medium's response is a deterministic function of the sample
coordinates, so the estimator is a stateless transformer: ``fit``
validates the hyperparameters, ``transform`` maps an (n, 2) array of
(x, y) positions in meters to [Re mu_r, Im mu_r] feature columns, and
``predict`` returns the complex permeability directly.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .fieldmap import permeability_at_points
from .params import DriveParams, MediumParams, RateSet


class StandingWavePermeability(BaseEstimator, TransformerMixin):
    """Relative magnetic permeability under two orthogonal standing waves.

    Parameters
    ----------
    delta_p, delta_c : float
        Probe and coupling detunings in gamma units.
    omega_b, omega_c0 : float
        Probe Rabi frequency and standing-wave Rabi amplitude (gamma units).
    phi_x, phi_y : float
        Standing-wave phases in radians.
    wavelength : float
        Drive wavelength in meters.
    gamma1, gamma2, gamma3 : float
        Dephasing and decay rates in gamma units.
    gamma_scale : float
        Absolute value of gamma in rad/s.
    mu31 : float
        Transition magnetic dipole moment in A m^2.
    density_n : float
        Atom number density in m^-3.

    Samples at singular points transform to NaN rather than raising.
    """

    def __init__(
        self,
        delta_p=0.0,
        delta_c=0.0,
        omega_b=0.1,
        omega_c0=5.0,
        phi_x=0.0,
        phi_y=0.0,
        wavelength=4e-6,
        gamma1=0.5,
        gamma2=1.0,
        gamma3=1.5,
        gamma_scale=1e7,
        mu31=6.6e-23,
        density_n=5e24,
    ):
        self.delta_p = delta_p
        self.delta_c = delta_c
        self.omega_b = omega_b
        self.omega_c0 = omega_c0
        self.phi_x = phi_x
        self.phi_y = phi_y
        self.wavelength = wavelength
        self.gamma1 = gamma1
        self.gamma2 = gamma2
        self.gamma3 = gamma3
        self.gamma_scale = gamma_scale
        self.mu31 = mu31
        self.density_n = density_n

    def fit(self, X=None, y=None):
        """Validate hyperparameters; X is accepted for API compatibility."""
        self.rates_ = RateSet(
            gamma1=self.gamma1,
            gamma2=self.gamma2,
            gamma3=self.gamma3,
            gamma_scale=self.gamma_scale,
        )
        self.drive_ = DriveParams(
            delta_p=self.delta_p,
            delta_c=self.delta_c,
            omega_b=self.omega_b,
            omega_c0=self.omega_c0,
            phi_x=self.phi_x,
            phi_y=self.phi_y,
            wavelength=self.wavelength,
        )
        self.medium_ = MediumParams(mu31=self.mu31, density_n=self.density_n)
        self.n_features_in_ = 2
        if X is not None:
            self._coordinates(X)
        return self

    def predict(self, X):
        """Complex mu_r for each (x, y) row of X (meters)."""
        check_is_fitted(self, "drive_")
        points = self._coordinates(X)
        values, _ = permeability_at_points(
            points[:, 0], points[:, 1], self.drive_, self.rates_, self.medium_
        )
        return values

    def transform(self, X):
        """Feature columns [Re mu_r, Im mu_r] for each coordinate row."""
        values = self.predict(X)
        return np.column_stack([values.real, values.imag])

    def get_feature_names_out(self, input_features=None):
        return np.array(["re_mu", "im_mu"], dtype=object)

    def _coordinates(self, X):
        points = check_array(X, dtype=np.float64, ensure_all_finite=True)
        if points.shape[1] != 2:
            raise ValueError(
                f"X must have exactly 2 columns (x, y in meters), got {points.shape[1]}"
            )
        return points

"""Time integration of the coherence equations dR/dt = -m R + a.

This module is the independent dynamics oracle: classical fixed-step RK4
evolution of the linear coherence system, steady-state detection through
the algebraic residual ||a - m R||, and an optional third component for
the undriven upper coherence (one-way coupled, it never feeds back).

Times and steps are dimensionless (units of 1/gamma).
"""

from dataclasses import dataclass

import numpy as np

from .errors import NotSettled, UnstableStep
from .params import CoherenceVector, DriveParams, RateSet
from .response import SystemMatrix, build_system

# Diagnostic bound: no trajectory of a passive system gets near this.
_DIVERGENCE_NORM = 1e3

# Step-size safety factor against the infinity norm of the system matrix.
_STABILITY_FACTOR = 0.1


@dataclass(frozen=True)
class Trajectory:
    """Recorded states at strictly increasing times (one row per record)."""

    times: np.ndarray
    states: np.ndarray

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


@dataclass(frozen=True)
class SettleReport:
    """Outcome of integrating to the steady state."""

    final_state: CoherenceVector
    iterations: int
    residual: float


def max_stable_dt(sys: SystemMatrix) -> float:
    """Step bound 0.1 / ||m||_inf used by all integrators here."""
    row_sums = np.abs(sys.m).sum(axis=1)
    return _STABILITY_FACTOR / float(row_sums.max())


def steady_residual(sys: SystemMatrix, state: np.ndarray) -> float:
    """Euclidean norm of a - m R, zero exactly at the steady state."""
    return float(np.linalg.norm(sys.a - sys.m @ state))


def _rk4_step(m, a, state, dt):
    k1 = a - m @ state
    k2 = a - m @ (state + 0.5 * dt * k1)
    k3 = a - m @ (state + 0.5 * dt * k2)
    k4 = a - m @ (state + dt * k3)
    return state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _check_step(dt, t_end, sys):
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    bound = max_stable_dt(sys)
    if dt > bound * (1 + 1e-12):
        raise ValueError(f"dt={dt} exceeds stability bound {bound:.3e}")
    if t_end < dt:
        raise ValueError(f"t_end={t_end} must be >= dt={dt}")


def evolve(sys: SystemMatrix, r0, t_end: float, dt: float, stride: int = 1) -> Trajectory:
    """Fixed-step RK4 integration from r0, recording every `stride` steps.

    Raises UnstableStep if the state norm diverges (bad dt diagnostic).
    """
    _check_step(dt, t_end, sys)
    state = _as_state(r0, 2)
    n_steps = int(round(t_end / dt))
    times = [0.0]
    states = [state]
    for step in range(1, n_steps + 1):
        state = _rk4_step(sys.m, sys.a, state, dt)
        if np.linalg.norm(state) > _DIVERGENCE_NORM:
            raise UnstableStep(
                f"state norm exceeded {_DIVERGENCE_NORM:g} at t={step * dt:g}"
            )
        if step % stride == 0 or step == n_steps:
            times.append(step * dt)
            states.append(state)
    return Trajectory(times=np.array(times), states=np.array(states))


def settle(sys: SystemMatrix, tol: float, max_t: float, dt: float | None = None) -> SettleReport:
    """Integrate until ||a - m R|| < tol * ||a||, starting from R = 0.

    The stopping rule uses the residual of the algebraic steady-state
    equation, so it is independent of the integrator. Raises NotSettled
    (with the report attached) if max_t is reached first.
    """
    if tol <= 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    if dt is None:
        dt = max_stable_dt(sys)
    target = tol * float(np.linalg.norm(sys.a))
    state = np.zeros(2, dtype=complex)
    n_steps = int(np.ceil(max_t / dt))
    residual = steady_residual(sys, state)
    for step in range(1, n_steps + 1):
        state = _rk4_step(sys.m, sys.a, state, dt)
        if np.linalg.norm(state) > _DIVERGENCE_NORM:
            raise UnstableStep(
                f"state norm exceeded {_DIVERGENCE_NORM:g} at t={step * dt:g}"
            )
        residual = steady_residual(sys, state)
        if residual < target:
            return SettleReport(
                final_state=CoherenceVector(complex(state[0]), complex(state[1])),
                iterations=step,
                residual=residual,
            )
    report = SettleReport(
        final_state=CoherenceVector(complex(state[0]), complex(state[1])),
        iterations=n_steps,
        residual=residual,
    )
    raise NotSettled(
        f"residual {residual:.3e} above target {target:.3e} at t={max_t:g}",
        report=report,
    )


def evolve_with_rho32(
    omega_c,
    drive: DriveParams,
    rates: RateSet,
    r0=None,
    t_end: float = 30.0,
    dt: float = 1e-3,
    stride: int = 1,
) -> Trajectory:
    """RK4 evolution of (rho31, rho21, rho32) with one-way coupling.

    The upper coherence is sourced by the conjugate of rho21 through the
    probe; with populations pinned to the lowest level its drive by the
    standing wave vanishes, and it never feeds back into the 2x2 system.
    """
    sys = build_system(omega_c, drive, rates)
    _check_step(dt, t_end, sys)
    state = _as_state(r0, 3) if r0 is not None else np.zeros(3, dtype=complex)
    decay32 = 0.5 * (rates.gamma1 + rates.gamma2 + rates.gamma3) + 1j * drive.delta_c
    m, a = sys.m, sys.a

    def rhs(s):
        d12 = a - m @ s[:2]
        d32 = 1j * np.conj(s[1]) * drive.omega_b - s[2] * decay32
        return np.concatenate([d12, [d32]])

    n_steps = int(round(t_end / dt))
    times = [0.0]
    states = [state]
    for step in range(1, n_steps + 1):
        k1 = rhs(state)
        k2 = rhs(state + 0.5 * dt * k1)
        k3 = rhs(state + 0.5 * dt * k2)
        k4 = rhs(state + dt * k3)
        state = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if np.linalg.norm(state) > _DIVERGENCE_NORM:
            raise UnstableStep(
                f"state norm exceeded {_DIVERGENCE_NORM:g} at t={step * dt:g}"
            )
        if step % stride == 0 or step == n_steps:
            times.append(step * dt)
            states.append(state)
    return Trajectory(times=np.array(times), states=np.array(states))


def rk4_propagator(m: np.ndarray, a: np.ndarray, dt: float):
    """One-step affine map of RK4 on the linear system: R' = G R + h.

    For a constant-coefficient linear system the four RK4 stages compose
    into the degree-4 Taylor polynomial of the matrix exponential:
    G = sum_{j=0..4} (-dt m)^j / j! and h = dt * sum_{j=0..3}
    (-dt m)^j / (j+1)! applied to a. Powers of (G, h) therefore replay
    exact sequences of RK4 steps.
    """
    eye = np.eye(m.shape[0], dtype=complex)
    z = -dt * m
    g = eye.copy()
    term = eye.copy()
    h_sum = eye.copy()
    factorial = 1.0
    for j in range(1, 5):
        factorial *= j
        term = term @ z
        g = g + term / factorial
        if j < 4:
            h_sum = h_sum + term / (factorial * (j + 1))
    h = dt * (h_sum @ a)
    return g, h


def _as_state(r0, size):
    if isinstance(r0, CoherenceVector):
        state = r0.as_array()
    else:
        state = np.asarray(r0, dtype=complex)
    if state.shape != (size,):
        raise ValueError(f"initial state must have shape ({size},), got {state.shape}")
    return state.copy()

"""Truth and guidance dynamics.

Two models live here:

* the restricted two-body problem (the truth model), integrated with an
  adaptive embedded Runge-Kutta 5(4) scheme at tight tolerance, and
* the Clohessy-Wiltshire (CW) linearized relative motion about a circular
  chief, in both ODE form and closed-form state-transition-matrix form.

Impulses are never integrated: they are velocity discontinuities applied
by the campaign layer between propagation segments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .constants import MU_EARTH, R_EARTH
from .errors import SingularRadius, StepSizeUnderflow
from .frames import InertialState, RelativeState, eci_to_hill

_MIN_RADIUS = 1.0  # km; guards the 1/r^3 blow-up


@dataclass(frozen=True)
class TargetOrbit:
    """Circular chief orbit.

    The mean motion is always derived from (mu, radius), never stored, so
    the three quantities cannot drift out of consistency.
    """

    mu: float = MU_EARTH
    radius: float = R_EARTH + 500.0

    def __post_init__(self):
        if self.mu <= 0.0:
            raise ValueError(f"gravitational parameter must be positive, got {self.mu}")
        if self.radius <= R_EARTH:
            raise ValueError(f"orbit radius {self.radius} km is below the Earth surface")

    @classmethod
    def from_altitude(cls, altitude: float, mu: float = MU_EARTH) -> "TargetOrbit":
        return cls(mu=mu, radius=R_EARTH + altitude)

    @property
    def n(self) -> float:
        """Mean motion sqrt(mu / radius^3), rad/s."""
        return float(np.sqrt(self.mu / self.radius**3))

    @property
    def period(self) -> float:
        """Orbital period 2*pi/n, s."""
        return 2.0 * np.pi / self.n

    @property
    def circular_speed(self) -> float:
        return self.n * self.radius


def chief_state(orbit: TargetOrbit, t: float) -> InertialState:
    """Analytic chief state at time t.

    The chief's circular orbit is closed-form (uniform rotation in the
    equatorial plane), so the target carries no integration error and the
    relative-state readout isolates chaser-side effects.
    """
    theta = orbit.n * t
    c, s = np.cos(theta), np.sin(theta)
    r = orbit.radius
    v = orbit.circular_speed
    return InertialState(
        epoch=t,
        position=np.array([r * c, r * s, 0.0]),
        velocity=np.array([-v * s, v * c, 0.0]),
    )


def two_body_derivative(
    state: InertialState, mu: float, control_accel: Optional[np.ndarray] = None
):
    """Right-hand side of the two-body problem with optional control.

    Returns ``(velocity, acceleration)`` where
    ``acceleration = -(mu/|r|^3) r + u``.

    Raises
    ------
    SingularRadius
        If the position magnitude is below the 1 km guard radius.
    """
    r = state.position
    rn = np.linalg.norm(r)
    if rn < _MIN_RADIUS:
        raise SingularRadius(f"radius {rn} km inside guard radius")
    accel = -(mu / rn**3) * r
    if control_accel is not None:
        accel = accel + np.asarray(control_accel, dtype=float)
    return state.velocity.copy(), accel


def propagate_two_body(
    initial: InertialState,
    mu: float,
    duration: float,
    control_accel: Optional[np.ndarray] = None,
    sample_times: Optional[Sequence[float]] = None,
    rtol: float = 1e-12,
    atol: float = 1e-12,
):
    """Integrate the two-body problem for ``duration`` seconds.

    Parameters
    ----------
    initial : InertialState
        State at the start of the segment.
    mu : float
        Gravitational parameter, km^3/s^2.
    duration : float
        Segment length, s (>= 0).
    control_accel : ndarray or None
        Constant control acceleration over the segment, km/s^2.  Piecewise
        schedules are realized by chaining segments.
    sample_times : sequence of float or None
        Times (relative to the segment start) at which to report states.
        Defaults to the segment end only.

    Returns
    -------
    list of InertialState
        One state per requested sample time, epochs advanced accordingly.
    """
    if duration < 0:
        raise ValueError("duration must be non-negative")
    if sample_times is None:
        sample_times = [duration]
    sample_times = [float(t) for t in sample_times]
    if duration == 0.0:
        return [
            InertialState(initial.epoch, initial.position, initial.velocity)
            for _ in sample_times
        ]

    u = None if control_accel is None else np.asarray(control_accel, dtype=float)

    def rhs(t, y):
        r = y[:3]
        rn = np.linalg.norm(r)
        if rn < _MIN_RADIUS:
            raise SingularRadius(f"radius {rn} km inside guard radius at t={t}")
        a = -(mu / rn**3) * r
        if u is not None:
            a = a + u
        return np.hstack((y[3:], a))

    y0 = np.hstack((initial.position, initial.velocity))
    sol = solve_ivp(
        rhs, (0.0, duration), y0, method="RK45", rtol=rtol, atol=atol,
        t_eval=sample_times, dense_output=False,
    )
    if not sol.success:
        raise StepSizeUnderflow(sol.message)
    return [
        InertialState(epoch=initial.epoch + t, position=sol.y[:3, i], velocity=sol.y[3:, i])
        for i, t in enumerate(sol.t)
    ]


def specific_energy(state: InertialState, mu: float) -> float:
    """Specific orbital energy v^2/2 - mu/r, km^2/s^2."""
    return 0.5 * float(np.dot(state.velocity, state.velocity)) - mu / float(
        np.linalg.norm(state.position)
    )


def specific_angular_momentum(state: InertialState) -> float:
    """Magnitude of r x v, km^2/s."""
    return float(np.linalg.norm(np.cross(state.position, state.velocity)))


# ---------------------------------------------------------------------------
# Clohessy-Wiltshire model


def cw_system_matrix(n: float) -> np.ndarray:
    """6x6 CW system matrix A with state order (x, y, z, vx, vy, vz)."""
    A = np.zeros((6, 6))
    A[0:3, 3:6] = np.eye(3)
    A[3, 0] = 3.0 * n**2
    A[3, 4] = 2.0 * n
    A[4, 3] = -2.0 * n
    A[5, 2] = -(n**2)
    return A


def cw_derivative(
    rel: RelativeState, n: float, control_accel: Optional[np.ndarray] = None
) -> np.ndarray:
    """CW equations of relative motion.

        x'' - 3 n^2 x - 2 n y' = ux
        y'' + 2 n x'           = uy
        z'' + n^2 z            = uz

    Returns the 6-vector state derivative.
    """
    if n <= 0:
        raise ValueError("mean motion must be positive")
    ax = 3.0 * n**2 * rel.x + 2.0 * n * rel.vy
    ay = -2.0 * n * rel.vx
    az = -(n**2) * rel.z
    if control_accel is not None:
        u = np.asarray(control_accel, dtype=float)
        ax, ay, az = ax + u[0], ay + u[1], az + u[2]
    return np.array([rel.vx, rel.vy, rel.vz, ax, ay, az])


@dataclass(frozen=True)
class CwStm:
    """Closed-form CW state-transition matrix over an interval dt."""

    stm: np.ndarray
    dt: float
    n: float

    @property
    def pos_pos(self) -> np.ndarray:
        return self.stm[0:3, 0:3]

    @property
    def pos_vel(self) -> np.ndarray:
        return self.stm[0:3, 3:6]

    @property
    def vel_pos(self) -> np.ndarray:
        return self.stm[3:6, 0:3]

    @property
    def vel_vel(self) -> np.ndarray:
        return self.stm[3:6, 3:6]


def cw_stm(n: float, dt: float) -> CwStm:
    """Closed-form CW state-transition matrix.

    State order (x, y, z, vx, vy, vz).  The in-plane 4x4 couples (x, y)
    radial/along-track motion; the cross-track pair (z, vz) is an
    independent harmonic oscillator at the mean motion.
    """
    if n <= 0:
        raise ValueError("mean motion must be positive")
    nt = n * dt
    c, s = np.cos(nt), np.sin(nt)

    m = np.zeros((6, 6))
    # position rows
    m[0, 0] = 4.0 - 3.0 * c
    m[0, 3] = s / n
    m[0, 4] = 2.0 * (1.0 - c) / n
    m[1, 0] = 6.0 * (s - nt)
    m[1, 1] = 1.0
    m[1, 3] = 2.0 * (c - 1.0) / n
    m[1, 4] = (4.0 * s - 3.0 * nt) / n
    m[2, 2] = c
    m[2, 5] = s / n
    # velocity rows
    m[3, 0] = 3.0 * n * s
    m[3, 3] = c
    m[3, 4] = 2.0 * s
    m[4, 0] = 6.0 * n * (c - 1.0)
    m[4, 3] = -2.0 * s
    m[4, 4] = 4.0 * c - 3.0
    m[5, 2] = -n * s
    m[5, 5] = c
    return CwStm(stm=m, dt=dt, n=n)


def propagate_cw(rel: RelativeState, n: float, dt: float) -> RelativeState:
    """Uncontrolled CW propagation by the closed-form transition matrix."""
    return RelativeState.from_vector(cw_stm(n, dt).stm @ rel.vector)


@dataclass(frozen=True)
class TrajectorySample:
    """One time point of an executed trajectory (truth and relative views)."""

    t: float
    target: InertialState
    chaser: InertialState
    rel: RelativeState = field(repr=False, default=None)

    def __post_init__(self):
        if self.rel is None:
            object.__setattr__(self, "rel", eci_to_hill(self.target, self.chaser))

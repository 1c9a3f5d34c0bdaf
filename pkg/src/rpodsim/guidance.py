"""Impulsive guidance from the CW model.

Provides the natural-motion circumnavigation (NMC) insertion condition,
the in-plane two-point boundary-value impulse solve, and waypoint-plan
generators for the trajectory shapes the simulator compares: the closed
2:1 relative ellipse (unforced), a centered circle (forced), and a
straight line (forced intercept).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .dynamics import cw_stm
from .errors import InsufficientWaypoints, SingularTransferTime, ZeroOffset
from .frames import RelativeState

_DET_RTOL = 1e-12


@dataclass(frozen=True)
class Waypoint:
    """A targeted in-plane position at an absolute campaign time."""

    t: float
    x: float
    y: float
    z: float = 0.0

    @property
    def position(self) -> np.ndarray:
        return np.array([self.x, self.y])


@dataclass(frozen=True)
class ImpulseRecord:
    """A time-stamped instantaneous velocity change in Hill axes."""

    t: float
    dv: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "dv", np.asarray(self.dv, dtype=float))

    @property
    def magnitude(self) -> float:
        return float(np.linalg.norm(self.dv))


def nmc_initial_state(x0: float, n: float) -> RelativeState:
    """Relative state that seeds a closed 2:1 NMC ellipse.

    The along-track rate y' = -2 n x0 cancels the secular drift of the CW
    solution, leaving a closed relative orbit of radial semi-axis |x0| and
    along-track semi-axis 2|x0|.

    Raises
    ------
    ZeroOffset
        If x0 = 0 (the ellipse degenerates to the origin).
    """
    if x0 == 0.0:
        raise ZeroOffset("NMC offset x0 must be nonzero")
    if n <= 0:
        raise ValueError("mean motion must be positive")
    return RelativeState(x0, 0.0, 0.0, 0.0, -2.0 * n * x0, 0.0)


def drift_determinant(theta: float) -> float:
    """Dimensionless determinant of the in-plane targeting system.

    For a transfer angle theta = n*ts the position/velocity sub-matrix of
    the CW transition matrix has determinant (8(1-cos) - 3 theta sin)/n^2;
    this returns the dimensionless factor.  Zeros (whole revolutions at
    theta = 2 pi k, plus isolated interior roots) are transfer times for
    which the two-point problem is singular.
    """
    return 8.0 * (1.0 - np.cos(theta)) - 3.0 * theta * np.sin(theta)


def cw_target_impulse(
    rel_now: RelativeState, waypoint: Waypoint, ts: float, n: float
) -> Tuple[ImpulseRecord, Tuple[float, float]]:
    """Single-impulse transfer to an in-plane waypoint in time ts.

    Solves the 2x2 linear system  B v0+ = p_f - A p0  for the departure
    velocity v0+, where A and B are the in-plane position blocks of the
    CW transition matrix over ts.  The impulse is the in-plane velocity
    change v0+ - v0-; the cross-track channel is left untouched.

    Parameters
    ----------
    rel_now : RelativeState
        Current relative state (the impulse is applied here).
    waypoint : Waypoint
        Desired arrival position; ``waypoint.t - ts`` stamps the impulse.
    ts : float
        Transfer time, s.
    n : float
        Chief mean motion, rad/s.

    Returns
    -------
    (ImpulseRecord, (vx_plus, vy_plus))
        The impulse and the post-impulse in-plane velocity.

    Raises
    ------
    SingularTransferTime
        When n*ts sits on a zero of the targeting determinant.
    """
    if ts <= 0:
        raise ValueError("transfer time must be positive")
    theta = n * ts
    det = drift_determinant(theta)
    if abs(det) < _DET_RTOL * max(1.0, theta**2):
        raise SingularTransferTime(
            f"transfer angle n*ts = {theta:.6f} rad is a targeting singularity"
        )

    stm = cw_stm(n, ts).stm
    a = stm[np.ix_([0, 1], [0, 1])]
    b = stm[np.ix_([0, 1], [3, 4])]
    p0 = np.array([rel_now.x, rel_now.y])
    pf = waypoint.position
    v_plus = np.linalg.solve(b, pf - a @ p0)
    dv = np.array([v_plus[0] - rel_now.vx, v_plus[1] - rel_now.vy, 0.0])
    record = ImpulseRecord(t=waypoint.t - ts, dv=dv)
    return record, (float(v_plus[0]), float(v_plus[1]))


def _check_count(count: int, minimum: int) -> None:
    if count < minimum:
        raise InsufficientWaypoints(f"need at least {minimum} waypoints, got {count}")


def waypoints_circle(
    radius: float, count: int, period: float, start_time: float = 0.0
) -> Sequence[Waypoint]:
    """Waypoints on a target-centered circle, traversed clockwise.

    ``count`` points uniformly spaced in angle and in time over one
    traversal ``period``.  The clockwise (x toward -y) direction matches
    the rotation sense of an NMC with positive radial offset, keeping the
    forced and unforced shapes kinematically comparable.
    """
    _check_count(count, 3)
    if radius <= 0:
        raise ValueError("radius must be positive")
    if period <= 0:
        raise ValueError("period must be positive")
    step = period / count
    points = []
    for k in range(count):
        phi = -2.0 * np.pi * k / count
        points.append(
            Waypoint(t=start_time + k * step, x=radius * np.cos(phi), y=radius * np.sin(phi))
        )
    return points


def waypoints_nmc(
    x0: float, n: float, count: int, start_time: float = 0.0
) -> Sequence[Waypoint]:
    """Waypoints along one period of the closed CW NMC ellipse.

    ``count`` points at uniform time steps over 2 pi / n, starting from
    (x0, 0).  Positions follow the closed-form CW solution seeded by
    :func:`nmc_initial_state`: x = x0 cos(nt), y = -2 x0 sin(nt).
    """
    _check_count(count, 3)
    if x0 == 0.0:
        raise ZeroOffset("NMC offset x0 must be nonzero")
    period = 2.0 * np.pi / n
    step = period / count
    points = []
    for k in range(count):
        nt = 2.0 * np.pi * k / count
        points.append(
            Waypoint(t=start_time + k * step, x=x0 * np.cos(nt), y=-2.0 * x0 * np.sin(nt))
        )
    return points


def waypoints_line(
    start, end, count: int, duration: float, start_time: float = 0.0
) -> Sequence[Waypoint]:
    """Waypoints uniformly spaced along a segment, endpoints inclusive."""
    _check_count(count, 2)
    if duration <= 0:
        raise ValueError("duration must be positive")
    p0 = np.asarray(start, dtype=float)
    p1 = np.asarray(end, dtype=float)
    points = []
    for k in range(count):
        f = k / (count - 1)
        p = (1.0 - f) * p0 + f * p1
        points.append(Waypoint(t=start_time + f * duration, x=p[0], y=p[1]))
    return points

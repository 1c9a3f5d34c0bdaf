"""Hill (LVLH) frame construction and ECI <-> Hill state transforms.

The rotating relative frame is centered on the target satellite with axes

    i_r     radial (target position direction)
    i_theta along-track (completes the right-handed triad)
    i_h     cross-track (target angular-momentum direction)

Relative velocity is mapped with the transport theorem, so the transforms
are exact for any target state, not just circular orbits.  Units are km,
km/s, rad/s throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateOrbit, EpochMismatch

_EPOCH_TOL = 1e-9  # seconds


def _vec3(value) -> np.ndarray:
    out = np.asarray(value, dtype=float)
    if out.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {out.shape}")
    return out


@dataclass(frozen=True)
class InertialState:
    """Position and velocity of a satellite in the ECI frame.

    Attributes
    ----------
    epoch : float
        Seconds since campaign start.
    position : ndarray, shape (3,)
        ECI position, km.
    velocity : ndarray, shape (3,)
        ECI velocity, km/s.
    """

    epoch: float
    position: np.ndarray
    velocity: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "position", _vec3(self.position))
        object.__setattr__(self, "velocity", _vec3(self.velocity))
        if not (np.isfinite(self.position).all() and np.isfinite(self.velocity).all()):
            raise ValueError("state components must be finite")
        if np.linalg.norm(self.position) == 0.0:
            raise ValueError("position magnitude must be positive")


@dataclass(frozen=True)
class HillBasis:
    """Hill-frame orientation and rotation rates for one target state.

    ``rotation`` rows are (i_r, i_theta, i_h) expressed in ECI, so
    ``rotation @ u`` maps an ECI vector u into Hill components.
    ``angular_velocity`` and ``angular_acceleration`` are the frame rates
    expressed in Hill axes; for a two-body orbit both lie on the
    cross-track axis.
    """

    rotation: np.ndarray
    angular_velocity: np.ndarray
    angular_acceleration: np.ndarray


@dataclass(frozen=True)
class RelativeState:
    """Chaser state relative to the target, in Hill axes.

    Components are (x, y, z) position in km along (radial, along-track,
    cross-track) and (vx, vy, vz) Hill-frame relative velocity in km/s.
    The target sits at the origin.
    """

    x: float
    y: float
    z: float
    vx: float
    vy: float
    vz: float

    @property
    def position(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    @property
    def velocity(self) -> np.ndarray:
        return np.array([self.vx, self.vy, self.vz])

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z, self.vx, self.vy, self.vz])

    @classmethod
    def from_vector(cls, s) -> "RelativeState":
        s = np.asarray(s, dtype=float)
        return cls(*s.tolist())


def hill_basis(target: InertialState) -> HillBasis:
    """Construct the Hill frame from the target's inertial state.

    Parameters
    ----------
    target : InertialState
        Target (chief) state; must not be on a radial trajectory.

    Returns
    -------
    HillBasis
        Rotation matrix plus frame angular velocity/acceleration.

    Raises
    ------
    DegenerateOrbit
        If ``r x v`` vanishes and the frame is undefined.
    """
    r = target.position
    v = target.velocity
    rn = np.linalg.norm(r)
    h_vec = np.cross(r, v)
    hn = np.linalg.norm(h_vec)
    if hn <= 1e-12 * rn * max(np.linalg.norm(v), 1.0):
        raise DegenerateOrbit("r x v is zero: Hill frame undefined")

    i_r = r / rn
    i_h = h_vec / hn
    i_theta = np.cross(i_h, i_r)
    rotation = np.vstack((i_r, i_theta, i_h))

    # omega = h / r^2 along i_h; h is constant under two-body motion so
    # omega_dot follows from d/dt(1/r^2) alone.
    r_rate = float(np.dot(r, v)) / rn
    omega = np.array([0.0, 0.0, hn / rn**2])
    omega_dot = np.array([0.0, 0.0, -2.0 * hn * r_rate / rn**3])
    return HillBasis(rotation=rotation, angular_velocity=omega, angular_acceleration=omega_dot)


def eci_to_hill(target: InertialState, chaser: InertialState) -> RelativeState:
    """Express the chaser state relative to the target in Hill axes.

    The relative velocity uses the transport theorem,
    ``v_rel = R (v_c - v_t) - omega x rho``, where R rotates ECI vectors
    into the Hill frame.

    Raises
    ------
    EpochMismatch
        If the two states are not at the same epoch.
    DegenerateOrbit
        Propagated from :func:`hill_basis`.
    """
    if abs(target.epoch - chaser.epoch) > _EPOCH_TOL:
        raise EpochMismatch(
            f"target epoch {target.epoch} != chaser epoch {chaser.epoch}"
        )
    basis = hill_basis(target)
    rho = basis.rotation @ (chaser.position - target.position)
    rho_dot = basis.rotation @ (chaser.velocity - target.velocity)
    rho_dot -= np.cross(basis.angular_velocity, rho)
    return RelativeState(rho[0], rho[1], rho[2], rho_dot[0], rho_dot[1], rho_dot[2])


def hill_to_eci(target: InertialState, rel: RelativeState) -> InertialState:
    """Reconstruct the chaser's inertial state from a Hill-frame state.

    Exact algebraic inverse of :func:`eci_to_hill` at the target's epoch.
    """
    basis = hill_basis(target)
    rho = rel.position
    position = target.position + basis.rotation.T @ rho
    velocity = target.velocity + basis.rotation.T @ (
        rel.velocity + np.cross(basis.angular_velocity, rho)
    )
    return InertialState(epoch=target.epoch, position=position, velocity=velocity)

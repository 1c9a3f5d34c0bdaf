"""Closed-loop maneuver campaigns.

A campaign flies a waypoint plan against a truth model.  Guidance is
always the CW model: at each waypoint arrival the truth relative state is
read out through the frame transforms and a CW targeting impulse toward
the next waypoint is applied.  When the truth model is itself CW the
corrections vanish identically; when the truth is the two-body problem
the accumulated correction Δv measures the guidance-model mismatch.

Accounting conventions (circumnavigation kinds):

* The chaser is inserted at the first waypoint already carrying the
  plan's initial velocity (NMC velocity for the unforced ellipse, the
  first-leg targeting velocity for the forced circle).  The insertion
  Δv from a co-moving start is reported separately and excluded from
  the total unless ``count_insertion_dv`` is set.
* Correction burns fire at waypoint *arrivals*, one per leg including
  the lap-closure return, so ``impulse_count`` burns fire per lap and
  every lap runs the same schedule as the next (no special-cased first
  burn).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .constants import MU_EARTH
from .dynamics import (
    TargetOrbit,
    TrajectorySample,
    chief_state,
    propagate_cw,
    propagate_two_body,
)
from .frames import InertialState, RelativeState, eci_to_hill, hill_basis, hill_to_eci
from .guidance import (
    ImpulseRecord,
    Waypoint,
    cw_target_impulse,
    nmc_initial_state,
    waypoints_circle,
    waypoints_line,
    waypoints_nmc,
)

CIRCUMNAV_KINDS = ("nmc_unforced", "circle_forced")
INTERCEPT_KINDS = ("intercept_unforced", "intercept_forced")
MANEUVER_KINDS = CIRCUMNAV_KINDS + INTERCEPT_KINDS
TRUTH_MODELS = ("two_body", "cw")

_RTOL = 1e-12
_ATOL = 1e-12


@dataclass(frozen=True)
class CampaignConfig:
    """Full description of one campaign run (deterministic; no seeds)."""

    maneuver_kind: str
    chief_altitude: float
    size: float
    impulse_count: int
    duration: Optional[float] = None
    truth_model: str = "two_body"
    count_insertion_dv: bool = False
    laps: int = 1
    circle_period_factor: float = 1.0
    start_xy: Optional[Tuple[float, float]] = None
    rendezvous_xy: Tuple[float, float] = (0.0, 0.0)
    mu: float = MU_EARTH

    def __post_init__(self):
        if self.maneuver_kind not in MANEUVER_KINDS:
            raise ValueError(f"unknown maneuver kind {self.maneuver_kind!r}")
        if self.truth_model not in TRUTH_MODELS:
            raise ValueError(f"unknown truth model {self.truth_model!r}")
        if self.chief_altitude <= 0:
            raise ValueError("chief altitude must be positive")
        if self.size < 0:
            raise ValueError("size must be non-negative")
        # a zero offset is a legal (null) intercept but a degenerate shape
        # for circumnavigation plans
        if self.size == 0 and self.maneuver_kind in CIRCUMNAV_KINDS:
            raise ValueError("size must be positive for circumnavigation")
        minimum = 2 if self.maneuver_kind.endswith("_forced") else 1
        if self.impulse_count < minimum:
            raise ValueError(
                f"{self.maneuver_kind} needs impulse_count >= {minimum}"
            )
        if self.laps < 1:
            raise ValueError("laps must be >= 1")
        if self.circle_period_factor <= 0:
            raise ValueError("circle period factor must be positive")
        if self.mu <= 0:
            raise ValueError("mu must be positive")
        if self.maneuver_kind in INTERCEPT_KINDS:
            if self.duration is None or self.duration <= 0:
                raise ValueError("intercept kinds require a positive duration")
        elif self.duration is not None:
            raise ValueError("circumnavigation duration is derived; leave it unset")

    @property
    def start_point(self) -> Tuple[float, float]:
        if self.start_xy is not None:
            return self.start_xy
        return (self.size, 0.0)


@dataclass(frozen=True)
class CampaignResult:
    """Executed trajectory, impulse log, and Δv accounting for one run."""

    config: CampaignConfig
    samples: Tuple[TrajectorySample, ...]
    impulses: Tuple[ImpulseRecord, ...]
    total_dv: float
    insertion_dv: float
    max_waypoint_miss: float
    duration: float


class _TruthState:
    """Mutable truth-side state stepped between impulses."""

    def __init__(self, orbit: TargetOrbit, rel0: RelativeState, model: str):
        self.orbit = orbit
        self.model = model
        self.t = 0.0
        if model == "two_body":
            self.chaser = hill_to_eci(chief_state(orbit, 0.0), rel0)
        else:
            self.rel_state = rel0

    def advance_to(self, t: float) -> None:
        dt = t - self.t
        if dt < 0:
            raise ValueError("campaign time must not run backward")
        if self.model == "two_body":
            if dt > 0:
                final = propagate_two_body(
                    self.chaser, self.orbit.mu, dt, rtol=_RTOL, atol=_ATOL
                )[-1]
                # re-stamp the epoch exactly to keep target/chaser in sync
                self.chaser = InertialState(t, final.position, final.velocity)
        else:
            if dt > 0:
                self.rel_state = propagate_cw(self.rel_state, self.orbit.n, dt)
        self.t = t

    def rel(self) -> RelativeState:
        if self.model == "two_body":
            return eci_to_hill(chief_state(self.orbit, self.t), self.chaser)
        return self.rel_state

    def apply_dv(self, dv: np.ndarray) -> None:
        if self.model == "two_body":
            basis = hill_basis(chief_state(self.orbit, self.t))
            velocity = self.chaser.velocity + basis.rotation.T @ dv
            self.chaser = InertialState(self.t, self.chaser.position, velocity)
        else:
            r = self.rel_state
            self.rel_state = RelativeState(
                r.x, r.y, r.z, r.vx + dv[0], r.vy + dv[1], r.vz + dv[2]
            )

    def sample(self) -> TrajectorySample:
        target = chief_state(self.orbit, self.t)
        if self.model == "two_body":
            return TrajectorySample(t=self.t, target=target, chaser=self.chaser)
        chaser = hill_to_eci(target, self.rel_state)
        return TrajectorySample(t=self.t, target=target, chaser=chaser, rel=self.rel_state)


def _finish(config, samples, impulses, insertion_dv, max_miss, duration) -> CampaignResult:
    total = float(sum(rec.magnitude for rec in impulses))
    if config.count_insertion_dv:
        total += insertion_dv
    return CampaignResult(
        config=config,
        samples=tuple(samples),
        impulses=tuple(impulses),
        total_dv=total,
        insertion_dv=insertion_dv,
        max_waypoint_miss=max_miss,
        duration=duration,
    )


def _run_circumnavigation(config: CampaignConfig, orbit: TargetOrbit) -> CampaignResult:
    n = orbit.n
    m = config.impulse_count
    if config.maneuver_kind == "nmc_unforced":
        lap = orbit.period
        plan = waypoints_nmc(config.size, n, m)
        rel0 = nmc_initial_state(config.size, n)
    else:
        lap = config.circle_period_factor * orbit.period
        plan = waypoints_circle(config.size, m, lap)
        tau0 = lap / m
        at_start = RelativeState(plan[0].x, plan[0].y, 0.0, 0.0, 0.0, 0.0)
        _, v_plus = cw_target_impulse(
            at_start, replace(plan[1], t=tau0), tau0, n
        )
        rel0 = RelativeState(plan[0].x, plan[0].y, 0.0, v_plus[0], v_plus[1], 0.0)

    tau = lap / m
    insertion_dv = float(np.linalg.norm(rel0.velocity))
    truth = _TruthState(orbit, rel0, config.truth_model)
    samples = [truth.sample()]
    impulses: List[ImpulseRecord] = []
    max_miss = 0.0

    for k in range(1, config.laps * m + 1):
        t_arr = k * tau
        truth.advance_to(t_arr)
        rel = truth.rel()
        arrived = plan[k % m]
        max_miss = max(max_miss, float(np.hypot(rel.x - arrived.x, rel.y - arrived.y)))
        samples.append(truth.sample())
        nxt = plan[(k + 1) % m]
        record, _ = cw_target_impulse(
            rel, Waypoint(t=t_arr + tau, x=nxt.x, y=nxt.y), tau, n
        )
        truth.apply_dv(record.dv)
        impulses.append(record)

    return _finish(config, samples, impulses, insertion_dv, max_miss, config.laps * lap)


def _run_intercept(config: CampaignConfig, orbit: TargetOrbit) -> CampaignResult:
    n = orbit.n
    duration = float(config.duration)
    start = config.start_point
    rendezvous = config.rendezvous_xy
    rel0 = RelativeState(start[0], start[1], 0.0, 0.0, 0.0, 0.0)
    truth = _TruthState(orbit, rel0, config.truth_model)
    impulses: List[ImpulseRecord] = []

    if config.maneuver_kind == "intercept_unforced":
        # one targeting impulse at departure, then ballistic coast
        record, _ = cw_target_impulse(
            rel0, Waypoint(t=duration, x=rendezvous[0], y=rendezvous[1]), duration, n
        )
        truth.apply_dv(record.dv)
        impulses.append(record)
        samples = [truth.sample()]
        truth.advance_to(duration)
        samples.append(truth.sample())
        rel = truth.rel()
        miss = float(np.hypot(rel.x - rendezvous[0], rel.y - rendezvous[1]))
        return _finish(config, samples, impulses, 0.0, miss, duration)

    m = config.impulse_count
    plan = waypoints_line(start, rendezvous, m + 1, duration)
    tau = duration / m
    samples = [truth.sample()]
    max_miss = 0.0
    for k in range(m):
        rel = truth.rel()
        nxt = plan[k + 1]
        record, _ = cw_target_impulse(rel, nxt, tau, n)
        truth.apply_dv(record.dv)
        impulses.append(record)
        truth.advance_to((k + 1) * tau)
        rel_arr = truth.rel()
        max_miss = max(
            max_miss, float(np.hypot(rel_arr.x - nxt.x, rel_arr.y - nxt.y))
        )
        samples.append(truth.sample())
    return _finish(config, samples, impulses, 0.0, max_miss, duration)


def run_campaign(config: CampaignConfig) -> CampaignResult:
    """Execute one campaign and account its Δv.

    See the module docstring for the burn-scheduling and accounting
    conventions.  Raises SingularTransferTime or propagator errors from
    the underlying layers; everything else is deterministic arithmetic.
    """
    orbit = TargetOrbit.from_altitude(config.chief_altitude, config.mu)
    if config.maneuver_kind in CIRCUMNAV_KINDS:
        return _run_circumnavigation(config, orbit)
    return _run_intercept(config, orbit)


def sweep_circumnavigation(
    sizes: Sequence[float],
    impulse_counts: Sequence[int],
    chief_altitude: float,
    truth_model: str = "two_body",
    laps: int = 1,
    circle_period_factor: float = 1.0,
    count_insertion_dv: bool = False,
    mu: float = MU_EARTH,
) -> List[CampaignResult]:
    """Run forced and unforced circumnavigations over a (size, count) grid.

    Rows are ordered size-major, then impulse count, with the forced run
    preceding the unforced run in every cell; the order is deterministic
    and independent of execution strategy.
    """
    if not sizes or not impulse_counts:
        raise ValueError("sweep grids must be non-empty")
    results = []
    for size in sizes:
        for count in impulse_counts:
            for kind in ("circle_forced", "nmc_unforced"):
                results.append(
                    run_campaign(
                        CampaignConfig(
                            maneuver_kind=kind,
                            chief_altitude=chief_altitude,
                            size=float(size),
                            impulse_count=int(count),
                            truth_model=truth_model,
                            count_insertion_dv=count_insertion_dv,
                            laps=laps,
                            circle_period_factor=circle_period_factor,
                            mu=mu,
                        )
                    )
                )
    return results


def intercept_experiment(
    start_offset: Tuple[float, float],
    rendezvous_point: Tuple[float, float],
    duration: float,
    impulse_count: int,
    chief_altitude: float,
    truth_model: str = "two_body",
    mu: float = MU_EARTH,
) -> Tuple[CampaignResult, CampaignResult]:
    """Paired intercept comparison.

    The unforced arm fires a single CW targeting impulse at departure and
    coasts; the forced arm tracks a straight line with ``impulse_count``
    targeting burns.  Returns (unforced, forced).
    """
    size = float(np.hypot(*start_offset))
    common = dict(
        chief_altitude=chief_altitude,
        size=size,
        duration=float(duration),
        truth_model=truth_model,
        start_xy=(float(start_offset[0]), float(start_offset[1])),
        rendezvous_xy=(float(rendezvous_point[0]), float(rendezvous_point[1])),
        mu=mu,
    )
    unforced = run_campaign(
        CampaignConfig(maneuver_kind="intercept_unforced", impulse_count=1, **common)
    )
    forced = run_campaign(
        CampaignConfig(maneuver_kind="intercept_forced", impulse_count=impulse_count, **common)
    )
    return unforced, forced

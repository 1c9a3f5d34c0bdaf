"""Relative-motion RPOD simulator.

Quantifies the Δv cost of flying CW-guided impulsive maneuvers (natural
motion circumnavigation, forced circles, intercepts) against a two-body
truth model.
"""

from .campaign import (
    CampaignConfig,
    CampaignResult,
    intercept_experiment,
    run_campaign,
    sweep_circumnavigation,
)
from .constants import MU_EARTH, R_EARTH
from .dynamics import (
    CwStm,
    TargetOrbit,
    TrajectorySample,
    chief_state,
    cw_derivative,
    cw_stm,
    cw_system_matrix,
    propagate_cw,
    propagate_two_body,
    specific_angular_momentum,
    specific_energy,
    two_body_derivative,
)
from .errors import (
    DegenerateOrbit,
    EpochMismatch,
    InsufficientWaypoints,
    RpodError,
    SingularRadius,
    SingularTransferTime,
    StepSizeUnderflow,
    UsageError,
    ZeroOffset,
)
from .frames import (
    HillBasis,
    InertialState,
    RelativeState,
    eci_to_hill,
    hill_basis,
    hill_to_eci,
)
from .guidance import (
    ImpulseRecord,
    Waypoint,
    cw_target_impulse,
    drift_determinant,
    nmc_initial_state,
    waypoints_circle,
    waypoints_line,
    waypoints_nmc,
)

__version__ = "0.1.0"

__all__ = [
    "CampaignConfig",
    "CampaignResult",
    "CwStm",
    "DegenerateOrbit",
    "EpochMismatch",
    "HillBasis",
    "ImpulseRecord",
    "InertialState",
    "InsufficientWaypoints",
    "MU_EARTH",
    "R_EARTH",
    "RelativeState",
    "RpodError",
    "SingularRadius",
    "SingularTransferTime",
    "StepSizeUnderflow",
    "TargetOrbit",
    "TrajectorySample",
    "UsageError",
    "Waypoint",
    "ZeroOffset",
    "chief_state",
    "cw_derivative",
    "cw_stm",
    "cw_system_matrix",
    "cw_target_impulse",
    "drift_determinant",
    "eci_to_hill",
    "hill_basis",
    "hill_to_eci",
    "intercept_experiment",
    "nmc_initial_state",
    "propagate_cw",
    "propagate_two_body",
    "run_campaign",
    "specific_angular_momentum",
    "specific_energy",
    "sweep_circumnavigation",
    "two_body_derivative",
    "waypoints_circle",
    "waypoints_line",
    "waypoints_nmc",
]

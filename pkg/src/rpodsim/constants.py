"""Physical constants (km, s units)."""

MU_EARTH = 398600.4418
"""Earth gravitational parameter, km^3/s^2 (WGS-84)."""

R_EARTH = 6378.137
"""Earth equatorial radius, km."""

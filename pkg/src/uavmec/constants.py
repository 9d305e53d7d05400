"""Physical constants and dB helpers shared across the simulator."""

import math

SPEED_OF_LIGHT = 2.99792458e8   # m/s
PLANCK_H = 6.62607015e-34       # J*s
BOLTZMANN_K = 1.380649e-23      # J/K
GRAVITY = 9.81                  # m/s^2, default; overridable in PropulsionParams


def db_to_linear(x_db: float) -> float:
    """Convert a dB power ratio to linear."""
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    """Convert a linear power ratio to dB. x must be > 0."""
    return 10.0 * math.log10(x)


def dbm_to_watts(p_dbm: float) -> float:
    return 10.0 ** ((p_dbm - 30.0) / 10.0)


def watts_to_dbm(p_w: float) -> float:
    return 10.0 * math.log10(p_w) + 30.0

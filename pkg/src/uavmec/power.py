"""UAV platform power: rotary-wing propulsion, onboard compute, total.

Propulsion follows a motor electrical model: the rotor speed needed to
hold a given cruise velocity feeds a quartic polynomial in angular speed,
summed over the four motors. The polynomial constants are platform
specific and are config inputs (the shipped defaults are representative
of a ~3.5 kg quadrotor, not measurements of any particular airframe).

Compute power is the DVFS cubic eta * f_cpu^3 plus a constant I/O term.
Payload communication power is treated as negligible and contributes
zero to the total unless explicitly overridden.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import GRAVITY
from .errors import InvalidPropulsionParams, ValidationError


@dataclass(frozen=True)
class PropulsionParams:
    """Motor polynomial coefficients and airframe aerodynamic constants.

    c0..c4 are watts per (rad/s)^i for one motor; c_t maps rotor speed
    squared to thrust (N/(rad/s)^2); c_d lumps the airframe drag so that
    drag force is c_d * V^2 (N).
    """

    c0: float = 3.0
    c1: float = 3.0e-3
    c2: float = 1.0e-5
    c3: float = 1.3e-7
    c4: float = 1.0e-11
    c_t: float = 1.0e-5
    c_d: float = 0.03
    g: float = GRAVITY
    v_max_validated: float = 30.0  # monotonicity checked over [0, v_max] at load

    def __post_init__(self):
        if self.c_t <= 0:
            raise ValidationError("thrust coefficient c_t must be positive")
        if self.g <= 0:
            raise ValidationError("g must be positive")
        if self.c_d < 0:
            raise ValidationError("drag coefficient c_d must be >= 0")


@dataclass(frozen=True)
class MassBudget:
    m_0: float = 3.0     # airframe mass without the computer (kg)
    m_cp: float = 0.5    # onboard computer mass (kg)

    def __post_init__(self):
        if self.m_0 <= 0:
            raise ValidationError("airframe mass must be positive")
        if self.m_cp < 0:
            raise ValidationError("computer mass must be >= 0")

    @property
    def m_u(self) -> float:
        return self.m_0 + self.m_cp

    def without_computer(self) -> "MassBudget":
        return MassBudget(m_0=self.m_0, m_cp=0.0)


@dataclass(frozen=True)
class ComputeParams:
    f_cp: float = 4.0e9      # CPU clock (cycles/s)
    eta: float = 1.0e-28     # effective capacitance (W/(cycle/s)^3)
    p_io: float = 0.0        # constant I/O power (W)
    c_cp: float = 500.0      # cycles per bit

    def __post_init__(self):
        if min(self.f_cp, self.eta, self.p_io, self.c_cp) < 0:
            raise ValidationError("compute parameters must be >= 0")


def rotor_speed(v: float, mass: MassBudget, pp: PropulsionParams) -> float:
    """Motor angular speed (rad/s) holding level flight at velocity v.

    At v=0 this is the pure hover speed sqrt(m g / (4 c_t)); forward
    flight raises it through the drag term, so it is non-decreasing in v.
    """
    if v < 0:
        raise ValidationError("velocity must be >= 0")
    m_u = mass.m_u
    hover = math.sqrt(m_u * pp.g / (4.0 * pp.c_t))
    drag_term = (pp.c_d**2 / (m_u**2 * pp.g**2)) * v**4
    return hover * (1.0 + drag_term) ** 0.25


def propulsion_power(v: float, mass: MassBudget, pp: PropulsionParams) -> float:
    """Total propulsion power (W) of the four motors at velocity v."""
    w = rotor_speed(v, mass, pp)
    one_motor = pp.c4 * w**4 + pp.c3 * w**3 + pp.c2 * w**2 + pp.c1 * w + pp.c0
    return 4.0 * one_motor


def validate_propulsion(pp: PropulsionParams, mass: MassBudget, n_grid: int = 61) -> None:
    """Check P_pr(v) is positive and non-decreasing on [0, v_max].

    Run once when a configuration is loaded; raises InvalidPropulsionParams.
    """
    vs = [pp.v_max_validated * i / (n_grid - 1) for i in range(n_grid)]
    powers = [propulsion_power(v, mass, pp) for v in vs]
    if min(powers) <= 0:
        raise InvalidPropulsionParams("propulsion power must be positive over the velocity range")
    for a, b in zip(powers, powers[1:]):
        if b - a < -1e-9:
            raise InvalidPropulsionParams(
                "propulsion power decreases with velocity; check c0..c4/c_t/c_d"
            )


def compute_power(cp: ComputeParams, enabled: bool) -> float:
    """Onboard computation power (W): eta*f^3 + p_io when enabled, else 0."""
    if not enabled:
        return 0.0
    return cp.eta * cp.f_cp**3 + cp.p_io


def total_power(
    v: float,
    mass: MassBudget,
    pp: PropulsionParams,
    cp: ComputeParams,
    compute_enabled: bool,
    p_cm_override: float = 0.0,
) -> float:
    """Platform power draw (W) at velocity v.

    Communication power is negligible next to propulsion and defaults to
    zero; p_cm_override exists for sensitivity studies only.
    """
    return propulsion_power(v, mass, pp) + compute_power(cp, compute_enabled) + p_cm_override

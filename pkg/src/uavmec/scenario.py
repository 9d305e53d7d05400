"""Energy evaluation of the processing strategies.

Hovering strategies drain the Q-bit workload at a fixed combined rate
(onboard compute, offload link, or both in parallel) while burning hover
power. Move-and-return flies toward the nearest MEC base station at
constant speed while transmitting, hovers at the minimum standoff
distance if the outbound half of the data is not done by then, and flies
back symmetrically; its completion time solves an integral equation in
the time-varying rate.

The provisioned BS distance comes from the Poisson deployment: either
the analytic mean nearest-neighbor distance or seeded draws from the
nearest-neighbor law.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .channel import Geometry
from .errors import (
    InvalidComputeParams,
    NonMonotoneRateWarning,
    NoSolution,
    ValidationError,
    ZeroTotalRate,
)
from .link import Environment, RadioConfig, expected_throughput
from .power import (
    ComputeParams,
    MassBudget,
    PropulsionParams,
    compute_power,
    propulsion_power,
    total_power,
)


class Strategy(enum.Enum):
    HOVER_ONBOARD = "hover_onboard"      # process everything on the UAV
    HOVER_OFFLOAD = "hover_offload"      # ship everything to the MEC server
    HOVER_PARALLEL = "hover_parallel"    # both drains share the workload
    MR_OFFLOAD = "mr_offload"            # move-and-return, offload only
    MR_PARALLEL = "mr_parallel"          # move-and-return with onboard compute


MR_STRATEGIES = (Strategy.MR_OFFLOAD, Strategy.MR_PARALLEL)
ONBOARD_STRATEGIES = (Strategy.HOVER_ONBOARD, Strategy.HOVER_PARALLEL, Strategy.MR_PARALLEL)
LINK_STRATEGIES = (
    Strategy.HOVER_OFFLOAD,
    Strategy.HOVER_PARALLEL,
    Strategy.MR_OFFLOAD,
    Strategy.MR_PARALLEL,
)

# Relative residual allowed on the half-workload integral equation.
MR_RESIDUAL_REL_TOL = 1e-6


class R0Mode(enum.Enum):
    ANALYTIC_MEAN = "analytic_mean"
    SAMPLED_NEAREST = "sampled_nearest"


@dataclass(frozen=True)
class Deployment:
    lambda_c: float                     # BS density (1/m^2)
    p_a: float = 1.0                    # probability a BS offers MEC
    r0_mode: R0Mode = R0Mode.ANALYTIC_MEAN
    r_min: float = 10.0                 # closest allowed 2D distance (m)
    n_drops: int = 32                   # draws in sampled mode

    def __post_init__(self):
        if self.lambda_c <= 0:
            raise ValidationError("lambda_c must be positive")
        if not 0.0 < self.p_a <= 1.0:
            raise ValidationError("p_a must be in (0, 1]")
        if self.r_min <= 0:
            raise ValidationError("r_min must be positive")
        if self.n_drops < 1:
            raise ValidationError("n_drops must be >= 1")

    @property
    def lambda_m(self) -> float:
        return self.p_a * self.lambda_c


@dataclass(frozen=True)
class ScenarioSpec:
    strategy: Strategy
    q_bits: float
    v: float
    h_u: float
    h_bs: float
    mass: MassBudget
    propulsion: PropulsionParams
    compute: ComputeParams
    radio: RadioConfig
    env: Environment
    deployment: Deployment
    p_cm_w: float = 0.0  # payload communication power; negligible, kept at 0

    def __post_init__(self):
        if self.p_cm_w < 0:
            raise ValidationError("communication power must be >= 0")
        if self.q_bits <= 0:
            raise ValidationError("q_bits must be positive")
        if self.strategy in MR_STRATEGIES and self.v <= 0:
            raise ValidationError("move-and-return needs a positive velocity")
        if self.v < 0:
            raise ValidationError("velocity must be >= 0")
        if self.strategy in ONBOARD_STRATEGIES:
            if self.mass.m_cp <= 0:
                raise ValidationError(
                    f"{self.strategy.value} computes onboard and needs m_cp > 0"
                )
            if self.compute.c_cp <= 0:
                raise ValidationError(
                    f"{self.strategy.value} computes onboard and needs c_cp > 0"
                )

    @property
    def compute_enabled(self) -> bool:
        return self.strategy in ONBOARD_STRATEGIES

    @property
    def effective_mass(self) -> MassBudget:
        """Offload-only strategies leave the onboard computer on the ground."""
        return self.mass if self.compute_enabled else self.mass.without_computer()


@dataclass(frozen=True)
class EnergyReport:
    strategy: Strategy
    t_m: float
    t_h: float
    energy_j: float
    propulsion_j: float
    compute_j: float
    r0_m: float
    seed: int
    communication_j: float = 0.0
    energy_stderr_j: float | None = None
    rate_trace: tuple | None = None

    @property
    def t_total(self) -> float:
        return self.t_m + self.t_h


def r0_distance(dep: Deployment, rng_seed=None) -> float:
    """Provision the 2D distance to the nearest MEC-capable BS (m).

    Analytic mode returns the Poisson mean nearest-neighbor distance
    1/(2 sqrt(lambda_m)); sampled mode draws once from the Rayleigh
    nearest-neighbor law with that mean, deterministically per seed.
    """
    mean = 1.0 / (2.0 * math.sqrt(dep.lambda_m))
    if dep.r0_mode is R0Mode.ANALYTIC_MEAN:
        return mean
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    u = rng.random()
    # inverse CDF of P(R > r) = exp(-pi lambda r^2)
    return math.sqrt(-math.log1p(-u) / (math.pi * dep.lambda_m))


def compute_rate(cp: ComputeParams) -> float:
    """Onboard drain rate in bit/s: CPU clock over cycles-per-bit."""
    if cp.c_cp <= 0:
        raise InvalidComputeParams("c_cp (cycles per bit) must be positive")
    return cp.f_cp / cp.c_cp


def _link_rate_fn(spec: ScenarioSpec):
    """Throughput (bit/s) as a deterministic function of 2D distance r."""

    def rate(r: float) -> float:
        geom = Geometry(h_u=spec.h_u, h_bs=spec.h_bs, r=r)
        return expected_throughput(geom, spec.env, spec.radio).r_cm

    return rate


def _total_rate_fn(spec: ScenarioSpec):
    """Combined drain rate R_tot(r) for the strategy's active channels."""
    r_cp = compute_rate(spec.compute) if spec.compute_enabled else 0.0
    if spec.strategy in LINK_STRATEGIES:
        link_rate = _link_rate_fn(spec)
        return lambda r: link_rate(r) + r_cp
    return lambda r: r_cp


def hover_energy(spec: ScenarioSpec, r0: float | None = None) -> EnergyReport:
    """Energy of the hovering strategies: fixed rate, hover power.

    r0 defaults to the deployment's provisioned distance. The offload-only
    case carries no computer mass; the onboard-only case never touches the
    radio link.
    """
    if spec.strategy in MR_STRATEGIES:
        raise ValidationError("hover_energy expects a hovering strategy")
    if r0 is None:
        r0 = r0_distance(spec.deployment, spec.radio.rng_seed)
    r_tot = _total_rate_fn(spec)(r0)
    if r_tot <= 0:
        raise ZeroTotalRate(f"combined rate is zero for {spec.strategy.value}")
    t_h = spec.q_bits / r_tot
    mass = spec.effective_mass
    propulsion_j = propulsion_power(0.0, mass, spec.propulsion) * t_h
    compute_j = compute_power(spec.compute, spec.compute_enabled) * t_h
    communication_j = spec.p_cm_w * t_h
    return EnergyReport(
        strategy=spec.strategy,
        t_m=0.0,
        t_h=t_h,
        energy_j=propulsion_j + compute_j + communication_j,
        propulsion_j=propulsion_j,
        compute_j=compute_j,
        communication_j=communication_j,
        r0_m=r0,
        seed=spec.radio.rng_seed,
    )


def solve_mr_time_from_rate(
    rate_fn,
    r0: float,
    r_min: float,
    v: float,
    q_bits: float,
    *,
    check_monotone: bool = True,
) -> dict:
    """Solve the move-and-return timing from a rate-vs-distance function.

    The outbound half must deliver q_bits/2 while the distance shrinks as
    r(t) = max(r0 - v t, r_min); the return half is symmetric. Returns
    {"t_mr", "t_m", "t_h", "residual"} where residual is the remaining
    error of the half-workload integral (bits).
    """
    if v <= 0:
        raise ValidationError("v must be positive")
    half_q = q_bits / 2.0
    t_reach = max(0.0, (r0 - r_min) / v)

    def rate_at_time(t: float) -> float:
        return rate_fn(max(r0 - v * t, r_min))

    if check_monotone and t_reach > 0:
        grid = np.linspace(r_min, r0, 17)
        rates = np.array([rate_fn(float(r)) for r in grid])
        rises = np.diff(rates) > 1e-9 * np.maximum(rates[:-1], 1.0)
        if rises.any():
            warnings.warn(
                "throughput is not non-increasing in distance on the sampled grid",
                NonMonotoneRateWarning,
            )

    rate_min = rate_fn(r_min)  # r(t) bottoms out at r_min for any r0

    def bits_by(t_half: float) -> float:
        if t_half <= 0:
            return 0.0
        moving = min(t_half, t_reach)
        total = 0.0
        if moving > 0:
            total += quad(rate_at_time, 0.0, moving, epsabs=0.0, epsrel=1e-11, limit=400)[0]
        if t_half > t_reach:
            total += (t_half - t_reach) * rate_min
        return total

    bits_reach = bits_by(t_reach)
    if bits_reach >= half_q and t_reach > 0:
        f = lambda t: bits_by(t) - half_q
        t_half = brentq(f, 0.0, t_reach, xtol=1e-12 * max(t_reach, 1.0), rtol=8.9e-16)
    else:
        if rate_min <= 0:
            if bits_reach <= 0:
                raise NoSolution("combined rate is zero everywhere; workload never completes")
            raise NoSolution("rate vanishes at the standoff distance before the workload is done")
        t_half = t_reach + (half_q - bits_reach) / rate_min

    t_mr = 2.0 * t_half
    if r0 - v * t_mr / 2.0 > r_min:
        t_m = t_mr
    else:
        t_m = 2.0 * t_reach
    t_h = t_mr - t_m
    residual = bits_by(t_half) - half_q
    if abs(residual) > MR_RESIDUAL_REL_TOL * half_q:
        raise NoSolution(f"timing solve residual {residual:.3e} bits exceeds tolerance")
    return {"t_mr": t_mr, "t_m": t_m, "t_h": t_h, "residual": residual}


def solve_mr_time(spec: ScenarioSpec, r0: float | None = None) -> dict:
    """Move-and-return timing for a scenario; see solve_mr_time_from_rate."""
    if spec.strategy not in MR_STRATEGIES:
        raise ValidationError("solve_mr_time expects a move-and-return strategy")
    if r0 is None:
        r0 = r0_distance(spec.deployment, spec.radio.rng_seed)
    return solve_mr_time_from_rate(
        _total_rate_fn(spec), r0, spec.deployment.r_min, spec.v, spec.q_bits
    )


def mr_energy(spec: ScenarioSpec, r0: float | None = None, with_trace: bool = False) -> EnergyReport:
    """Energy of a move-and-return run: cruise power while moving, hover after.

    Onboard compute (parallel case) stays on for the whole mission, both
    legs and the hover interval.
    """
    if r0 is None:
        r0 = r0_distance(spec.deployment, spec.radio.rng_seed)
    timing = solve_mr_time(spec, r0=r0)
    mass = spec.effective_mass
    p_pr_v = propulsion_power(spec.v, mass, spec.propulsion)
    p_pr_0 = propulsion_power(0.0, mass, spec.propulsion)
    p_cp = compute_power(spec.compute, spec.compute_enabled)
    t_m, t_h = timing["t_m"], timing["t_h"]
    propulsion_j = p_pr_v * t_m + p_pr_0 * t_h
    compute_j = p_cp * (t_m + t_h)
    communication_j = spec.p_cm_w * (t_m + t_h)
    trace = None
    if with_trace:
        rate_fn = _total_rate_fn(spec)
        times = np.linspace(0.0, timing["t_mr"] / 2.0, 101)
        trace = tuple(
            (float(t), float(max(r0 - spec.v * t, spec.deployment.r_min)),
             float(rate_fn(max(r0 - spec.v * t, spec.deployment.r_min))))
            for t in times
        )
    return EnergyReport(
        strategy=spec.strategy,
        t_m=t_m,
        t_h=t_h,
        energy_j=propulsion_j + compute_j + communication_j,
        propulsion_j=propulsion_j,
        compute_j=compute_j,
        communication_j=communication_j,
        r0_m=r0,
        seed=spec.radio.rng_seed,
        rate_trace=trace,
    )


def _evaluate_at(spec: ScenarioSpec, r0: float, with_trace: bool) -> EnergyReport:
    if spec.strategy in MR_STRATEGIES:
        return mr_energy(spec, r0=r0, with_trace=with_trace)
    return hover_energy(spec, r0=r0)


def evaluate(spec: ScenarioSpec, with_trace: bool = False) -> EnergyReport:
    """Dispatch a scenario to its strategy's energy recipe.

    Analytic deployments evaluate once at the mean BS distance. Sampled
    deployments repeat over n_drops seeded nearest-neighbor draws and
    report the mean with a standard error on the energy.
    """
    dep = spec.deployment
    if dep.r0_mode is R0Mode.ANALYTIC_MEAN:
        return _evaluate_at(spec, r0_distance(dep), with_trace)

    reports = []
    for k in range(dep.n_drops):
        rng = np.random.default_rng([spec.radio.rng_seed, k])
        r0 = r0_distance(dep, rng)
        reports.append(_evaluate_at(spec, r0, with_trace=False))
    energies = np.array([rep.energy_j for rep in reports])
    stderr = float(energies.std(ddof=1) / math.sqrt(len(reports))) if len(reports) > 1 else 0.0
    return EnergyReport(
        strategy=spec.strategy,
        t_m=float(np.mean([rep.t_m for rep in reports])),
        t_h=float(np.mean([rep.t_h for rep in reports])),
        energy_j=float(energies.mean()),
        propulsion_j=float(np.mean([rep.propulsion_j for rep in reports])),
        compute_j=float(np.mean([rep.compute_j for rep in reports])),
        communication_j=float(np.mean([rep.communication_j for rep in reports])),
        r0_m=float(np.mean([rep.r0_m for rep in reports])),
        seed=spec.radio.rng_seed,
        energy_stderr_j=stderr,
    )

"""BS planar-array antenna model: element pattern, array factor, gains.

The element follows the familiar cellular panel pattern (65-degree 3 dB
widths, 30 dB floors) with its peak at theta=90, phi=0 in the local
frame (theta measured from zenith). The M x N array lies in the plane
orthogonal to that peak, elements along the local horizontal and
vertical axes, so an unsteered array points where the element does.
Progressive phase shifts steer the main lobe; a Gaussian mismatch angle
models imperfect beam pointing.

Array gain normalizes |AF|^2 by its integral over the full sphere,
evaluated with a midpoint rule plus one grid refinement as a convergence
check. The normalization integral of the unsteered pattern is cached per
array layout; steering moves the lobe without re-normalizing.

Angles at the API are degrees; phases are radians.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

from .errors import IntegrationNotConverged, ValidationError

THETA_3DB_DEG = 65.0
PHI_3DB_DEG = 65.0
SLA_V_DB = 30.0
A_M_DB = 30.0

BORESIGHT_THETA_DEG = 90.0
BORESIGHT_PHI_DEG = 0.0

# Midpoint-rule grid (theta x phi) for the pattern integral, and the
# relative change allowed when the grid is refined (halved step).
QUAD_GRID = (721, 1441)
QUAD_TOL_DB = 0.01


@dataclass(frozen=True)
class ArrayConfig:
    m_elems: int = 1            # elements along the local horizontal axis
    n_elems: int = 1            # elements along the local vertical axis
    d_h: float = 0.5            # spacing in wavelengths
    d_v: float = 0.5
    g_e_max: float = 8.0        # peak element gain (dBi)
    sigma_mismatch: float = 0.0  # pointing-error std dev (degrees)

    def __post_init__(self):
        if self.m_elems < 1 or self.n_elems < 1:
            raise ValidationError("element counts must be >= 1")
        if self.d_h <= 0 or self.d_v <= 0:
            raise ValidationError("element spacings must be positive")
        if self.sigma_mismatch < 0:
            raise ValidationError("sigma_mismatch must be >= 0")


@dataclass(frozen=True)
class SteeredGain:
    """Total BS gain toward the UAV for one mismatch draw."""

    gain_db: float
    theta_off: float  # sampled mismatch, degrees
    phi_off: float


def element_gain_scalar(theta_deg: float, phi_deg: float, g_e_max: float = 8.0) -> float:
    """Scalar fast path of element_gain (pure math, no array overhead)."""
    theta = min(max(theta_deg, 0.0), 180.0)
    phi = (phi_deg + 180.0) % 360.0 - 180.0
    a_v = -min(12.0 * ((theta - 90.0) / THETA_3DB_DEG) ** 2, SLA_V_DB)
    a_h = -min(12.0 * (phi / PHI_3DB_DEG) ** 2, A_M_DB)
    return g_e_max - min(-(a_v + a_h), A_M_DB)


def element_gain(theta_deg, phi_deg, g_e_max: float = 8.0):
    """Directional element gain in dBi; accepts scalars or arrays.

    Peak g_e_max at (90, 0); attenuation is quadratic in each angle with
    a 30 dB floor on the vertical, horizontal, and combined terms.
    """
    theta = np.clip(np.asarray(theta_deg, dtype=float), 0.0, 180.0)
    phi = (np.asarray(phi_deg, dtype=float) + 180.0) % 360.0 - 180.0
    a_v = -np.minimum(12.0 * ((theta - 90.0) / THETA_3DB_DEG) ** 2, SLA_V_DB)
    a_h = -np.minimum(12.0 * (phi / PHI_3DB_DEG) ** 2, A_M_DB)
    a_e = -np.minimum(-(a_v + a_h), A_M_DB)
    out = g_e_max + a_e
    return float(out) if out.ndim == 0 else out


def steering_phases(theta_deg: float, phi_deg: float, cfg: ArrayConfig) -> tuple[float, float]:
    """Progressive phase shifts (radians) pointing the main lobe at (theta, phi)."""
    theta = math.radians(theta_deg)
    phi = math.radians(phi_deg)
    beta_h = -2.0 * math.pi * cfg.d_h * math.sin(theta) * math.sin(phi)
    beta_v = -2.0 * math.pi * cfg.d_v * math.cos(theta)
    return beta_h, beta_v


def _af_axis(psi, k: int):
    """|sin(k psi/2) / (k sin(psi/2))| with the removable singularity -> 1."""
    if k == 1:
        return np.ones_like(psi)
    half = psi / 2.0
    den = k * np.sin(half)
    near = np.abs(den) < 1e-9
    num = np.sin(k * half)
    return np.where(near, 1.0, num / np.where(near, 1.0, den))


def array_factor(theta_deg, phi_deg, beta_h: float, beta_v: float, cfg: ArrayConfig):
    """Normalized array-factor magnitude |AF| in [0, 1]; scalars or arrays."""
    theta = np.radians(np.asarray(theta_deg, dtype=float))
    phi = np.radians(np.asarray(phi_deg, dtype=float))
    psi_h = 2.0 * math.pi * cfg.d_h * np.sin(theta) * np.sin(phi) + beta_h
    psi_v = 2.0 * math.pi * cfg.d_v * np.cos(theta) + beta_v
    af = np.abs(_af_axis(psi_h, cfg.m_elems) * _af_axis(psi_v, cfg.n_elems))
    return float(af) if af.ndim == 0 else af


def _pattern_mean(cfg: ArrayConfig, n_theta: int, n_phi: int) -> float:
    """Mean of |AF|^2 over the sphere for the unsteered array (midpoint rule)."""
    th = (np.arange(n_theta) + 0.5) * (180.0 / n_theta)
    ph = (np.arange(n_phi) + 0.5) * (360.0 / n_phi) - 180.0
    tt, pp = np.meshgrid(th, ph, indexing="ij")
    af2 = array_factor(tt, pp, 0.0, 0.0, cfg) ** 2
    w = np.sin(np.radians(tt))
    dth = math.pi / n_theta
    dph = 2.0 * math.pi / n_phi
    return float((af2 * w).sum() * dth * dph / (4.0 * math.pi))


_norm_cache: dict[tuple, float] = {}
_norm_lock = threading.Lock()


def pattern_normalization(cfg: ArrayConfig) -> float:
    """Mean of |AF|^2 over the sphere, cached per array layout.

    Raises IntegrationNotConverged if halving the grid step moves the
    implied peak gain by more than 0.01 dB.
    """
    key = (cfg.m_elems, cfg.n_elems, cfg.d_h, cfg.d_v)
    with _norm_lock:
        hit = _norm_cache.get(key)
    if hit is not None:
        return hit
    if cfg.m_elems == 1 and cfg.n_elems == 1:
        value = 1.0
    else:
        coarse = _pattern_mean(cfg, *QUAD_GRID)
        fine = _pattern_mean(cfg, 2 * QUAD_GRID[0], 2 * QUAD_GRID[1])
        drift_db = abs(10.0 * math.log10(coarse / fine))
        if drift_db > QUAD_TOL_DB:
            raise IntegrationNotConverged(
                f"pattern integral moved {drift_db:.4f} dB on refinement for {key}"
            )
        value = fine
    with _norm_lock:
        _norm_cache[key] = value
    return value


def array_gain(theta_deg, phi_deg, beta_h: float, beta_v: float, cfg: ArrayConfig):
    """Array gain pattern in dB: |AF|^2 normalized over the sphere.

    A 1x1 array has 0 dB gain everywhere. At the steered direction the
    gain equals the array's peak gain.
    """
    af = array_factor(theta_deg, phi_deg, beta_h, beta_v, cfg)
    norm = pattern_normalization(cfg)
    af2 = np.maximum(np.asarray(af, dtype=float) ** 2, 1e-300)
    out = 10.0 * np.log10(af2 / norm)
    return float(out) if out.ndim == 0 else out


def peak_array_gain_db(cfg: ArrayConfig) -> float:
    """Array gain at the steered direction (where |AF| = 1)."""
    return -10.0 * math.log10(pattern_normalization(cfg))


def total_gain(theta_deg, phi_deg, beta_h: float, beta_v: float, cfg: ArrayConfig):
    """Element plus array gain (dB) toward (theta, phi) for given steering."""
    return element_gain(theta_deg, phi_deg, cfg.g_e_max) + array_gain(
        theta_deg, phi_deg, beta_h, beta_v, cfg
    )


def steered_gain_sample(
    cfg: ArrayConfig, theta0_deg: float, phi0_deg: float, rng_seed
) -> SteeredGain:
    """Total BS gain toward (theta0, phi0) under one sampled pointing error.

    The beam is steered at the target; the draw offsets the evaluation
    direction, so the result never exceeds the perfectly-pointed gain.
    """
    th_off, ph_off = sample_mismatch(rng_seed, cfg.sigma_mismatch, 1)
    beta_h, beta_v = steering_phases(theta0_deg, phi0_deg, cfg)
    gain = total_gain(
        theta0_deg + float(th_off[0]), phi0_deg + float(ph_off[0]), beta_h, beta_v, cfg
    )
    return SteeredGain(gain_db=float(gain), theta_off=float(th_off[0]), phi_off=float(ph_off[0]))


def sample_mismatch(rng_seed, sigma_deg: float, n: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Draw n Gaussian pointing offsets (degrees); deterministic given seed.

    sigma_deg = 0 returns exact zeros. Accepts a seed or a Generator.
    """
    if sigma_deg < 0:
        raise ValidationError("sigma must be >= 0")
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    draws = rng.normal(0.0, sigma_deg, size=(2, n))
    return draws[0], draws[1]

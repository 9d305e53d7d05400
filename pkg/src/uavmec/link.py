"""Link budget: noise models, SNR, and expected achievable throughput.

The UAV is the transmitter (offloading is uplink); the BS receives with
the planar-array gain steered at the UAV's true direction, degraded by a
Gaussian pointing mismatch. Throughput mixes the LoS and NLoS spectral
efficiencies with the closed-form LoS probability; the expectation over
the mismatch angle is a seeded Monte Carlo average, so results are
bit-reproducible for a given seed regardless of how calls are scheduled.

Thermal noise uses the full Planck form, so its per-Hz density sags
above ~100 GHz. Molecular re-emission noise applies in the THz band
only, where absorption is non-negligible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .antenna import (
    ArrayConfig,
    element_gain_scalar,
    pattern_normalization,
    sample_mismatch,
    steering_phases,
    total_gain,
)
from .channel import (
    Atmosphere,
    Band,
    BandKind,
    Geometry,
    UrbanProfile,
    los_probability,
    path_loss_mmwave,
    path_loss_sub6,
    path_loss_thz,
)
from .constants import BOLTZMANN_K, PLANCK_H, db_to_linear
from .errors import ValidationError


@dataclass(frozen=True)
class Environment:
    """Static surroundings of the link: urban geometry and atmosphere."""

    urban: UrbanProfile = field(default_factory=lambda: UrbanProfile(10.0, 15.0))
    atmosphere: Atmosphere = field(default_factory=lambda: Atmosphere(300.0, 101325.0, 50.0))
    use_2d_distance: bool = False
    nlos_height_term_uses_uav: bool = False


@dataclass(frozen=True)
class RadioConfig:
    p_tx: float                  # transmit power (W)
    band: Band
    array: ArrayConfig = field(default_factory=ArrayConfig)
    uav_gain: float = 0.0        # isotropic UAV antenna gain (dBi)
    mc_samples: int = 256        # mismatch Monte Carlo draws
    rng_seed: int = 0

    def __post_init__(self):
        if self.p_tx <= 0:
            raise ValidationError("transmit power must be positive")
        if self.mc_samples < 1:
            raise ValidationError("mc_samples must be >= 1")


@dataclass(frozen=True)
class LinkBudget:
    snr_los: float      # linear, at perfect boresight
    snr_nlos: float
    n_jn: float         # thermal noise (W)
    n_m: float          # molecular noise at boresight (W)
    r_cm: float         # expected achievable throughput (bit/s)
    pr_los: float


def johnson_nyquist_noise(band: Band, t_kelvin: float) -> float:
    """Thermal noise power (W) over the band, full Planck form.

    For hf << kT this reduces to k*T*BW (about -174 dBm/Hz at 300 K);
    the per-Hz density decreases with carrier frequency beyond ~100 GHz.
    """
    x = PLANCK_H * band.f_c / (BOLTZMANN_K * t_kelvin)
    return band.bw * PLANCK_H * band.f_c / math.expm1(x)


def molecular_noise(p_tx: float, g_tot_linear, l_p_linear: float, l_a_linear) -> float:
    """Re-emission noise (W): absorbed fraction of the received LoS power.

    l_a_linear >= 1; with no absorption (l_a = 1) the noise is zero, and
    in the opaque limit it approaches the full pre-absorption power.
    """
    return (p_tx * g_tot_linear / l_p_linear) * (1.0 - 1.0 / np.asarray(l_a_linear, dtype=float))


def _path_losses_db(geom: Geometry, env: Environment, band: Band) -> dict:
    """LoS/NLoS path loss in dB for the configured band.

    THz has no usable NLoS component: nlos_db is +inf there, and the
    dict carries the LoS propagation/absorption split for the molecular
    noise term.
    """
    if band.kind is BandKind.SUB6:
        pl = path_loss_sub6(geom, band.f_c, use_2d_distance=env.use_2d_distance)
        return {**pl, "propagation_db": None, "absorption_db": None}
    if band.kind is BandKind.MMWAVE:
        pl = path_loss_mmwave(
            geom,
            env.urban,
            band.f_c,
            use_2d_distance=env.use_2d_distance,
            nlos_height_term_uses_uav=env.nlos_height_term_uses_uav,
        )
        return {**pl, "propagation_db": None, "absorption_db": None}
    pl = path_loss_thz(geom, env.atmosphere, band.f_c)
    return {
        "los_db": pl["los_db"],
        "nlos_db": math.inf,
        "propagation_db": pl["propagation_db"],
        "absorption_db": pl["absorption_db"],
    }


def _gain_samples_db(geom: Geometry, radio: RadioConfig, theta_off, phi_off):
    """Total UAV+BS antenna gain (dB) for mismatch offsets around boresight."""
    theta0 = 90.0 - geom.elevation_deg
    beta_h, beta_v = steering_phases(theta0, 0.0, radio.array)
    g_bs = total_gain(theta0 + theta_off, phi_off, beta_h, beta_v, radio.array)
    return g_bs + radio.uav_gain


def _boresight_gain_db(geom: Geometry, radio: RadioConfig) -> float:
    """Total gain with perfect pointing: |AF| = 1 at the steered direction."""
    theta0 = 90.0 - geom.elevation_deg
    g_array = -10.0 * math.log10(pattern_normalization(radio.array))
    return element_gain_scalar(theta0, 0.0, radio.array.g_e_max) + g_array + radio.uav_gain


def snr(
    geom: Geometry,
    env: Environment,
    radio: RadioConfig,
    condition: str,
    mismatch_sample: tuple[float, float] = (0.0, 0.0),
) -> float:
    """Linear SNR for one propagation condition and one mismatch draw.

    condition is "los" or "nlos". THz NLoS returns 0 (fully blocked).
    """
    condition = condition.lower()
    if condition not in ("los", "nlos"):
        raise ValidationError(f"condition must be 'los' or 'nlos', got {condition!r}")
    pl = _path_losses_db(geom, env, radio.band)
    if condition == "nlos" and radio.band.kind is BandKind.THZ:
        return 0.0
    g_db = _gain_samples_db(geom, radio, mismatch_sample[0], mismatch_sample[1])
    g_lin = db_to_linear(float(g_db))
    n_jn = johnson_nyquist_noise(radio.band, env.atmosphere.t_kelvin)
    n_m = 0.0
    if radio.band.kind is BandKind.THZ:
        n_m = float(
            molecular_noise(
                radio.p_tx,
                g_lin,
                db_to_linear(pl["propagation_db"]),
                db_to_linear(pl["absorption_db"]),
            )
        )
    pl_lin = db_to_linear(pl["los_db"] if condition == "los" else pl["nlos_db"])
    return (radio.p_tx * g_lin / pl_lin) / (n_jn + n_m)


_mismatch_cache: dict[tuple, tuple[np.ndarray, np.ndarray]] = {}


def _mismatch_draws(seed: int, sigma: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Memoized mismatch offsets; one evaluation reuses the same draws at
    every distance (common random numbers), so cache hits cannot change
    any result."""
    key = (seed, sigma, n)
    hit = _mismatch_cache.get(key)
    if hit is None:
        hit = sample_mismatch(seed, sigma, n)
        if len(_mismatch_cache) > 128:
            _mismatch_cache.clear()
        _mismatch_cache[key] = hit
    return hit


def expected_throughput(geom: Geometry, env: Environment, radio: RadioConfig) -> LinkBudget:
    """Expected achievable throughput (bit/s) and the budget behind it.

    Draws radio.mc_samples mismatch offsets from radio.rng_seed, averages
    the LoS/NLoS spectral efficiencies over them, and mixes by the LoS
    probability. With sigma = 0 every draw is the boresight, so the
    result equals the closed-form two-term sum.
    """
    band = radio.band
    pr = los_probability(geom.h_u, geom.r)
    pl = _path_losses_db(geom, env, band)
    n_jn = johnson_nyquist_noise(band, env.atmosphere.t_kelvin)

    g0_lin = db_to_linear(_boresight_gain_db(geom, radio))
    if radio.array.sigma_mismatch == 0.0:
        # every draw is the boresight; the average is the single sample
        g_lin = np.array([g0_lin])
    else:
        th_off, ph_off = _mismatch_draws(
            radio.rng_seed, radio.array.sigma_mismatch, radio.mc_samples
        )
        g_db = np.asarray(_gain_samples_db(geom, radio, th_off, ph_off), dtype=float)
        g_lin = 10.0 ** (g_db / 10.0)

    pl_los_lin = db_to_linear(pl["los_db"])
    if band.kind is BandKind.THZ:
        l_p = db_to_linear(pl["propagation_db"])
        l_a = db_to_linear(pl["absorption_db"])
        n_m_samples = molecular_noise(radio.p_tx, g_lin, l_p, l_a)
        n_m0 = float(molecular_noise(radio.p_tx, g0_lin, l_p, l_a))
        snr_los = radio.p_tx * g_lin / pl_los_lin / (n_jn + n_m_samples)
        snr_nlos = np.zeros_like(snr_los)
        snr_los0 = radio.p_tx * g0_lin / pl_los_lin / (n_jn + n_m0)
        snr_nlos0 = 0.0
    else:
        pl_nlos_lin = db_to_linear(pl["nlos_db"])
        n_m0 = 0.0
        snr_los = radio.p_tx * g_lin / pl_los_lin / n_jn
        snr_nlos = radio.p_tx * g_lin / pl_nlos_lin / n_jn
        snr_los0 = radio.p_tx * g0_lin / pl_los_lin / n_jn
        snr_nlos0 = radio.p_tx * g0_lin / pl_nlos_lin / n_jn

    se_los = float(np.mean(np.log2(1.0 + snr_los)))
    se_nlos = float(np.mean(np.log2(1.0 + snr_nlos)))
    r_cm = band.bw * (se_los * pr + se_nlos * (1.0 - pr))
    return LinkBudget(
        snr_los=float(snr_los0),
        snr_nlos=float(snr_nlos0),
        n_jn=n_jn,
        n_m=n_m0,
        r_cm=r_cm,
        pr_los=pr,
    )

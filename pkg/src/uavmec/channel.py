"""Large-scale propagation models for the UAV-BS link.

Three bands are covered: sub-6GHz and mmWave use 3GPP-style LoS/NLoS
path-loss expressions for aerial users; the THz band uses free-space
propagation plus Beer-Lambert molecular absorption with a water-vapor
line fit valid over 275-400 GHz. LoS/NLoS occurrence is governed by an
altitude-dependent probability. All functions are pure and stateless.

Units: distances in meters, frequencies in Hz at the API surface
(converted internally where a formula wants GHz), temperatures in
Kelvin, pressure in Pa, relative humidity in percent. Path losses are
returned in dB.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .constants import SPEED_OF_LIGHT
from .errors import AltitudeOutOfModelRange, FrequencyOutsideFitRange, ValidationError

SUB6_MIN_ALTITUDE_M = 22.5
SUB6_MAX_ALTITUDE_M = 300.0

# Element of the dB absorption term: 10*log10(e) rounded as commonly printed.
ABSORPTION_DB_PER_NEPER = 4.34


class BandKind(enum.Enum):
    SUB6 = "sub6"
    MMWAVE = "mmwave"
    THZ = "thz"


# Frequency windows the simulator accepts per band kind (Hz).
BAND_FREQ_LIMITS_HZ = {
    BandKind.SUB6: (1e8, 6e9),
    BandKind.MMWAVE: (24e9, 100e9),
    BandKind.THZ: (275e9, 400e9),
}


@dataclass(frozen=True)
class Geometry:
    """UAV-BS placement. d_3d is derived; a supplied value must agree."""

    h_u: float                 # UAV altitude (m)
    h_bs: float                # BS height (m)
    r: float                   # 2D horizontal distance (m)
    d_3d: float | None = None  # filled in from (r, h_u, h_bs)

    def __post_init__(self):
        if self.h_u <= 0 or self.h_bs <= 0:
            raise ValidationError("h_u and h_bs must be positive")
        if self.r < 0:
            raise ValidationError("horizontal distance r must be >= 0")
        derived = math.hypot(self.r, self.h_u - self.h_bs)
        if self.d_3d is None:
            object.__setattr__(self, "d_3d", derived)
        elif abs(self.d_3d - derived) > 1e-9 * max(derived, 1.0):
            raise ValidationError(
                f"d_3d={self.d_3d!r} inconsistent with (r, h_u, h_bs) -> {derived!r}"
            )

    @property
    def elevation_deg(self) -> float:
        """Elevation of the UAV seen from the BS, degrees above horizon."""
        return math.degrees(math.atan2(self.h_u - self.h_bs, self.r))


@dataclass(frozen=True)
class UrbanProfile:
    """Average built-environment descriptors for the mmWave model."""

    h_building: float   # average building height (m), valid 5-50
    street_width: float  # average street width (m), valid 5-50

    def __post_init__(self):
        if not 5.0 <= self.h_building <= 50.0:
            raise ValidationError(f"building height {self.h_building} m outside [5, 50]")
        if not 5.0 <= self.street_width <= 50.0:
            raise ValidationError(f"street width {self.street_width} m outside [5, 50]")


@dataclass(frozen=True)
class Atmosphere:
    t_kelvin: float
    p_pascal: float
    phi_humidity: float  # relative humidity, percent

    def __post_init__(self):
        if self.t_kelvin <= 0:
            raise ValidationError("temperature must be positive (Kelvin)")
        if self.p_pascal <= 0:
            raise ValidationError("pressure must be positive (Pa)")
        if not 0.0 <= self.phi_humidity <= 100.0:
            raise ValidationError("relative humidity must be within [0, 100] %")


@dataclass(frozen=True)
class Band:
    f_c: float   # carrier frequency (Hz)
    bw: float    # bandwidth (Hz)
    kind: BandKind

    def __post_init__(self):
        if self.f_c <= 0 or self.bw <= 0:
            raise ValidationError("f_c and bw must be positive")
        lo, hi = BAND_FREQ_LIMITS_HZ[self.kind]
        if not lo <= self.f_c <= hi:
            if self.kind is BandKind.THZ:
                raise FrequencyOutsideFitRange(
                    f"THz carrier {self.f_c / 1e9:.1f} GHz outside the 275-400 GHz fit window"
                )
            raise ValidationError(
                f"{self.kind.value} carrier {self.f_c / 1e9:.3f} GHz outside "
                f"[{lo / 1e9:g}, {hi / 1e9:g}] GHz"
            )


def _check_altitude(h_u: float) -> None:
    if not SUB6_MIN_ALTITUDE_M < h_u < SUB6_MAX_ALTITUDE_M:
        raise AltitudeOutOfModelRange(
            f"UAV altitude {h_u} m outside ({SUB6_MIN_ALTITUDE_M}, {SUB6_MAX_ALTITUDE_M}) m"
        )


def path_loss_sub6(geom: Geometry, f_c: float, *, use_2d_distance: bool = False) -> dict:
    """Sub-6GHz LoS/NLoS path loss in dB.

    The LoS distance exponent is 2.2; the NLoS slope shrinks with UAV
    altitude. `use_2d_distance` substitutes the 2D ground distance where
    the LoS expression is ambiguous about which distance it takes.

    Returns {"los_db", "nlos_db"}.
    """
    _check_altitude(geom.h_u)
    d = geom.r if use_2d_distance else geom.d_3d
    if d <= 0 or geom.d_3d <= 0:
        raise ValidationError("distance must be positive")
    f_ghz = f_c / 1e9
    los = 28.0 + 22.0 * math.log10(d) + 20.0 * math.log10(f_ghz)
    nlos = (
        -17.5
        + (46.0 - 7.0 * math.log10(geom.h_u)) * math.log10(geom.d_3d)
        + 20.0 * math.log10(40.0 * math.pi * f_ghz / 3.0)
    )
    return {"los_db": los, "nlos_db": nlos}


def path_loss_mmwave(
    geom: Geometry,
    urban: UrbanProfile,
    f_c: float,
    *,
    use_2d_distance: bool = False,
    nlos_height_term_uses_uav: bool = False,
) -> dict:
    """mmWave LoS/NLoS path loss in dB.

    NLoS applies the max-rule against LoS, so nlos_db >= los_db always.
    `nlos_height_term_uses_uav` switches the final antenna-height term of
    the NLoS expression from the BS height to the UAV height (sensitivity
    flag; default keeps the BS height).
    """
    _check_altitude(geom.h_u)
    if geom.d_3d <= 0:
        raise ValidationError("distance must be positive")
    f_ghz = f_c / 1e9
    hb = urban.h_building
    d3 = geom.d_3d
    los = (
        20.0 * math.log10(40.0 * math.pi * d3 * f_ghz / 3.0)
        + min(0.03 * hb ** 1.72, 10.0) * math.log10(d3)
        - min(0.044 * hb ** 1.72, 14.77)
        + 0.002 * math.log10(hb) * d3
    )
    d_nlos = geom.r if use_2d_distance else d3
    if d_nlos <= 0:
        raise ValidationError("NLoS distance must be positive")
    h_term = geom.h_u if nlos_height_term_uses_uav else geom.h_bs
    nlos_raw = (
        161.04
        - 7.1 * math.log10(urban.street_width)
        + 7.5 * math.log10(hb)
        - (24.37 - 3.7 * (hb / geom.h_u) ** 2) * math.log10(geom.h_u)
        + (43.42 - 3.1 * math.log10(geom.h_u)) * (math.log10(d_nlos) - 3.0)
        + 20.0 * math.log10(f_ghz)
        - (3.2 * math.log10(11.75 * h_term) ** 2 - 4.97)
    )
    return {"los_db": los, "nlos_db": max(los, nlos_raw)}


def saturated_vapor_pressure_hpa(t_kelvin: float, p_pascal: float) -> float:
    """Buck saturation pressure of water vapor, in hPa.

    The Buck fit takes temperature in Celsius and ambient pressure in hPa;
    conversion from the SI fields happens here.
    """
    t_c = t_kelvin - 273.15
    p_hpa = p_pascal / 100.0
    return 6.1121 * (1.0007 + 3.46e-6 * p_hpa) * math.exp(17.502 * t_c / (240.94 + t_c))


def water_vapor_mixing_ratio(atm: Atmosphere) -> float:
    """Volume mixing ratio of water vapor from relative humidity."""
    p_hpa = atm.p_pascal / 100.0
    return atm.phi_humidity * saturated_vapor_pressure_hpa(atm.t_kelvin, atm.p_pascal) / (100.0 * p_hpa)


def absorption_coefficient(f_c: float, atm: Atmosphere) -> float:
    """Medium absorption coefficient kappa (1/m) over 275-400 GHz.

    Two water-vapor resonance terms (line centers near 10.835 and
    12.664 1/cm) plus a cubic continuum fit. f_c is in Hz; the resonance
    denominators convert it to a wavenumber in 1/cm via f_c/(100 c).
    """
    lo, hi = BAND_FREQ_LIMITS_HZ[BandKind.THZ]
    if not lo <= f_c <= hi:
        raise FrequencyOutsideFitRange(
            f"absorption fit valid for 275-400 GHz, got {f_c / 1e9:.1f} GHz"
        )
    mu = water_vapor_mixing_ratio(atm)
    wavenumber = f_c / (100.0 * SPEED_OF_LIGHT)  # 1/cm
    k1 = (0.2205 * mu * (0.1303 * mu + 0.0294)) / (
        (0.4093 * mu + 0.0925) ** 2 + (wavenumber - 10.835) ** 2
    )
    k2 = (2.014 * mu * (0.1702 * mu + 0.0303)) / (
        (0.537 * mu + 0.0956) ** 2 + (wavenumber - 12.664) ** 2
    )
    k3 = 5.54e-37 * f_c**3 - 3.94e-25 * f_c**2 + 9.06e-14 * f_c - 6.36e-3
    kappa = k1 + k2 + k3
    if not math.isfinite(kappa) or kappa < 0:
        raise ValidationError(f"absorption coefficient came out non-physical: {kappa}")
    return kappa


def path_loss_thz(geom: Geometry, atm: Atmosphere, f_c: float) -> dict:
    """THz LoS path loss: free-space propagation plus molecular absorption.

    Returns {"los_db", "propagation_db", "absorption_db"} with
    los_db = propagation_db + absorption_db. NLoS is treated as fully
    blocked at these frequencies (the link layer assigns it zero rate).
    """
    if geom.d_3d <= 0:
        raise ValidationError("distance must be positive")
    kappa = absorption_coefficient(f_c, atm)
    propagation_db = 20.0 * math.log10(4.0 * math.pi * geom.d_3d * f_c / SPEED_OF_LIGHT)
    absorption_db = ABSORPTION_DB_PER_NEPER * kappa * geom.d_3d
    return {
        "los_db": propagation_db + absorption_db,
        "propagation_db": propagation_db,
        "absorption_db": absorption_db,
    }


def los_probability(h_u: float, r: float) -> float:
    """Probability of line of sight versus 2D distance r.

    Equals 1 for r below a threshold r1 that grows with altitude, then
    decays; altitudes of 100 m and above see LoS with probability 1.
    Valid for 22.5 m < h_u < 300 m.
    """
    _check_altitude(h_u)
    if r < 0:
        raise ValidationError("r must be >= 0")
    if h_u >= 100.0:
        return 1.0
    r1 = max(460.0 * math.log10(h_u) - 700.0, 18.0)
    if r <= r1:
        return 1.0
    r2 = 4300.0 * math.log10(h_u) - 3800.0
    return r1 / r + (1.0 - r1 / r) * math.exp(-r / r2)

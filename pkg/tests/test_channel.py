"""Path loss, absorption, and LoS probability checks.

Expected numbers are frozen from the independent evaluators in
oracles.py (direct formula transcriptions, term-by-term kappa).
"""

import math

import numpy as np
import pytest

import oracles
from uavmec.channel import (
    Atmosphere,
    Band,
    BandKind,
    Geometry,
    UrbanProfile,
    absorption_coefficient,
    los_probability,
    path_loss_mmwave,
    path_loss_sub6,
    path_loss_thz,
    water_vapor_mixing_ratio,
)
from uavmec.errors import (
    AltitudeOutOfModelRange,
    FrequencyOutsideFitRange,
    ValidationError,
)

ATM_DEFAULT = Atmosphere(300.0, 101325.0, 50.0)
URBAN_DEFAULT = UrbanProfile(10.0, 15.0)


def geom_from_d3(h_u, h_bs, d_3d):
    r = math.sqrt(d_3d**2 - (h_u - h_bs) ** 2)
    return Geometry(h_u=h_u, h_bs=h_bs, r=r)


class TestGeometry:
    def test_d3d_derived(self):
        g = Geometry(h_u=30.0, h_bs=25.0, r=12.0)
        assert g.d_3d == pytest.approx(13.0)

    def test_d3d_consistency_enforced(self):
        with pytest.raises(ValidationError):
            Geometry(h_u=30.0, h_bs=25.0, r=12.0, d_3d=14.0)

    def test_invalid_heights(self):
        with pytest.raises(ValidationError):
            Geometry(h_u=-1.0, h_bs=25.0, r=10.0)

    def test_urban_bounds(self):
        with pytest.raises(ValidationError):
            UrbanProfile(h_building=4.0, street_width=15.0)
        with pytest.raises(ValidationError):
            UrbanProfile(h_building=10.0, street_width=51.0)


class TestSub6:
    def test_los_reference_point(self):
        g = geom_from_d3(30.0, 25.0, 100.0)
        pl = path_loss_sub6(g, 2e9)
        assert pl["los_db"] == pytest.approx(78.02059991327963, rel=1e-12)

    def test_los_at_one_meter(self):
        # log10(1) = 0 leaves only the constant and frequency terms
        g = Geometry(h_u=30.0, h_bs=29.5, r=math.sqrt(1 - 0.25))
        pl = path_loss_sub6(g, 2e9)
        assert pl["los_db"] == pytest.approx(34.020599913279625, rel=1e-12)

    def test_nlos_reference_point(self):
        g = geom_from_d3(30.0, 25.0, 100.0)
        pl = path_loss_sub6(g, 2e9)
        assert pl["nlos_db"] == pytest.approx(92.28267453325302, rel=1e-12)

    def test_altitude_window_enforced(self):
        with pytest.raises(AltitudeOutOfModelRange):
            path_loss_sub6(Geometry(h_u=20.0, h_bs=25.0, r=100.0), 2e9)
        with pytest.raises(AltitudeOutOfModelRange):
            path_loss_sub6(Geometry(h_u=301.0, h_bs=25.0, r=100.0), 2e9)

    def test_monotone_in_distance(self):
        ds = np.linspace(5.1, 5000.0, 40)
        losses = [path_loss_sub6(geom_from_d3(30, 25, d), 2e9) for d in ds]
        los = [p["los_db"] for p in losses]
        nlos = [p["nlos_db"] for p in losses]
        assert all(b > a for a, b in zip(los, los[1:]))
        assert all(b > a for a, b in zip(nlos, nlos[1:]))


class TestMmWave:
    def test_los_reference_point(self):
        g = geom_from_d3(30.0, 25.0, 100.0)
        pl = path_loss_mmwave(g, URBAN_DEFAULT, 30e9)
        assert pl["los_db"] == pytest.approx(103.02388921684155, rel=1e-12)

    def test_nlos_reference_point(self):
        g = Geometry(h_u=30.0, h_bs=25.0, r=500.0)
        pl = path_loss_mmwave(g, URBAN_DEFAULT, 30e9)
        assert pl["nlos_db"] == pytest.approx(128.12962596192062, rel=1e-12)

    @pytest.mark.parametrize("d3", [10.0, 50.0, 200.0, 1000.0, 5000.0])
    @pytest.mark.parametrize("h_b", [5.0, 10.0, 30.0, 50.0])
    def test_max_rule(self, d3, h_b):
        g = geom_from_d3(30.0, 25.0, d3)
        pl = path_loss_mmwave(g, UrbanProfile(h_b, 15.0), 30e9)
        assert pl["nlos_db"] >= pl["los_db"]

    def test_monotone_in_distance(self):
        ds = np.linspace(6.0, 4000.0, 50)
        losses = [path_loss_mmwave(geom_from_d3(30, 25, d), URBAN_DEFAULT, 30e9) for d in ds]
        for key in ("los_db", "nlos_db"):
            vals = [p[key] for p in losses]
            assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_height_term_flag(self):
        g = Geometry(h_u=30.0, h_bs=25.0, r=500.0)
        default = path_loss_mmwave(g, URBAN_DEFAULT, 30e9)["nlos_db"]
        flipped = path_loss_mmwave(g, URBAN_DEFAULT, 30e9, nlos_height_term_uses_uav=True)["nlos_db"]
        expected = oracles.mmwave_nlos_candidate_db(30, 30, g.d_3d, 30.0, 10.0, 15.0)
        assert flipped == pytest.approx(expected, rel=1e-12)
        assert flipped != default


class TestAbsorption:
    def test_mixing_ratio_reference(self):
        mu = water_vapor_mixing_ratio(ATM_DEFAULT)
        assert mu == pytest.approx(0.017513948682994444, rel=1e-12)
        assert mu == pytest.approx(0.0175, abs=2e-4)

    def test_zero_humidity_leaves_continuum_only(self):
        dry = Atmosphere(300.0, 101325.0, 0.0)
        kappa = absorption_coefficient(350e9, dry)
        assert kappa == pytest.approx(0.0008377499999999991, rel=1e-14)

    def test_term_by_term_reference(self):
        kappa = absorption_coefficient(350e9, ATM_DEFAULT)
        assert kappa == pytest.approx(0.0021950359146707715, rel=1e-12)

    def test_fit_window_enforced(self):
        with pytest.raises(FrequencyOutsideFitRange):
            absorption_coefficient(200e9, ATM_DEFAULT)
        with pytest.raises(FrequencyOutsideFitRange):
            absorption_coefficient(450e9, ATM_DEFAULT)

    @pytest.mark.parametrize("f_ghz", [275, 300, 325, 350, 375, 400])
    @pytest.mark.parametrize("phi", [0.0, 25.0, 50.0, 100.0])
    def test_kappa_nonnegative(self, f_ghz, phi):
        kappa = absorption_coefficient(f_ghz * 1e9, Atmosphere(300.0, 101325.0, phi))
        assert kappa >= 0.0
        assert math.isfinite(kappa)


class TestThz:
    def test_reference_point(self):
        g = geom_from_d3(30.0, 25.0, 100.0)
        pl = path_loss_thz(g, ATM_DEFAULT, 350e9)
        assert pl["los_db"] == pytest.approx(124.28178969585599, rel=1e-12)

    def test_decomposition(self):
        g = geom_from_d3(30.0, 25.0, 250.0)
        pl = path_loss_thz(g, ATM_DEFAULT, 350e9)
        assert pl["los_db"] == pytest.approx(pl["propagation_db"] + pl["absorption_db"], rel=1e-15)

    def test_zero_absorption_is_free_space(self):
        dry = Atmosphere(300.0, 101325.0, 0.0)
        g = geom_from_d3(30.0, 25.0, 100.0)
        kappa = absorption_coefficient(350e9, dry)
        pl = path_loss_thz(g, dry, 350e9)
        assert pl["absorption_db"] == pytest.approx(4.34 * kappa * g.d_3d, rel=1e-15)

    def test_absorption_linear_in_distance(self):
        kappa = absorption_coefficient(350e9, ATM_DEFAULT)
        for d in (50.0, 400.0, 3200.0):
            g = geom_from_d3(30.0, 25.0, d)
            pl = path_loss_thz(g, ATM_DEFAULT, 350e9)
            assert pl["absorption_db"] == pytest.approx(4.34 * kappa * d, rel=1e-12)

    def test_monotone_in_distance(self):
        ds = np.linspace(6.0, 2000.0, 40)
        vals = [path_loss_thz(geom_from_d3(30, 25, d), ATM_DEFAULT, 350e9)["los_db"] for d in ds]
        assert all(b > a for a, b in zip(vals, vals[1:]))


class TestBand:
    def test_thz_band_outside_window(self):
        with pytest.raises(FrequencyOutsideFitRange):
            Band(f_c=200e9, bw=1e9, kind=BandKind.THZ)

    def test_mmwave_window(self):
        with pytest.raises(ValidationError):
            Band(f_c=5e9, bw=1e8, kind=BandKind.MMWAVE)

    def test_valid_bands(self):
        Band(2e9, 1e6, BandKind.SUB6)
        Band(30e9, 1e8, BandKind.MMWAVE)
        Band(350e9, 1e9, BandKind.THZ)


class TestLosProbability:
    def test_high_altitude_always_los(self):
        for r in (0.0, 10.0, 1e3, 1e6):
            assert los_probability(150.0, r) == 1.0

    def test_r1_floor_at_30m(self):
        # 460 log10(30) - 700 < 18, so the floor r1 = 18 applies
        assert 460.0 * math.log10(30.0) - 700.0 < 18.0
        assert los_probability(30.0, 10.0) == 1.0
        assert los_probability(30.0, 18.0) == 1.0

    def test_vanishes_at_infinity(self):
        assert los_probability(30.0, 1e9) < 1e-6

    def test_continuous_at_r1(self):
        eps = 1e-9
        assert los_probability(30.0, 18.0) == pytest.approx(
            los_probability(30.0, 18.0 + eps), abs=1e-6
        )

    @pytest.mark.parametrize("h_u", [23.0, 30.0, 60.0, 99.0, 150.0])
    def test_non_increasing_and_bounded(self, h_u):
        rs = np.linspace(0.0, 20000.0, 400)
        ps = [los_probability(h_u, r) for r in rs]
        assert all(0.0 <= p <= 1.0 for p in ps)
        assert all(b <= a + 1e-15 for a, b in zip(ps, ps[1:]))

    def test_altitude_window(self):
        with pytest.raises(AltitudeOutOfModelRange):
            los_probability(20.0, 100.0)

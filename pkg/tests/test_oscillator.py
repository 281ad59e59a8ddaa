"""Model oscillator integration: conservation, symmetry, and dual period routes."""

import math

import numpy as np
import pytest

from curlbreather import Sign, oscillator as osc, phase_plane as pp

PLUS, MINUS = Sign.PLUS, Sign.MINUS


class TestIntegration:
    def test_energy_drift_over_ten_periods(self):
        e = 1.5
        L = pp.period(PLUS, 3.0, e)
        traj = osc.integrate(PLUS, 3.0, math.sqrt(e), 10.0 * L)
        assert traj.energy_drift() < 1e-8

    def test_odd_symmetry(self):
        c = 0.9
        fwd = osc.integrate(PLUS, 3.0, c, 5.0)
        bwd = osc.integrate(PLUS, 3.0, c, -5.0)
        for t in (0.3, 1.7, 4.2):
            y1, v1 = fwd.state(t)
            y2, v2 = bwd.state(-t)
            assert y2 == pytest.approx(-y1, abs=1e-9)
            assert v2 == pytest.approx(v1, abs=1e-9)

    def test_half_period_reflection(self):
        e = 0.8
        c = math.sqrt(e)
        L = pp.period(PLUS, 3.0, e)
        traj = osc.integrate(PLUS, 3.0, c, L)
        y, v = traj.state(L / 2.0)
        assert y == pytest.approx(0.0, abs=1e-9)
        assert v == pytest.approx(-c, abs=1e-9)

    def test_linearized_limit(self):
        c = 1e-4
        traj = osc.integrate(PLUS, 3.0, c, 6.0)
        for t in (0.5, 2.0, 5.5):
            y, _ = traj.state(t)
            assert y == pytest.approx(c * math.sin(t), abs=1e-11)

    def test_minus_start_outside_separatrix_rejected(self):
        with pytest.raises(ValueError):
            osc.integrate(MINUS, 3.0, 1.0, 5.0)  # e = 1 > e* = 1/2


class TestReturnMap:
    @pytest.mark.parametrize("sign,e", [(PLUS, 0.3), (PLUS, 4.0), (MINUS, 0.2), (MINUS, 0.45)])
    def test_agrees_with_quadrature(self, sign, e):
        assert osc.return_map_period(sign, 3.0, e) == pytest.approx(
            pp.period(sign, 3.0, e), abs=1e-8
        )

    def test_zero_energy_linear_period(self):
        assert osc.return_map_period(PLUS, 3.0, 0.0) == 2.0 * math.pi

    def test_negative_energy_rejected(self):
        with pytest.raises(ValueError):
            osc.return_map_period(PLUS, 3.0, -0.1)


class TestPeriodicOrbit:
    def test_periodicity_of_phase_reduction(self):
        orb = osc.orbit(PLUS, 3.0, 1.1)
        for t in (0.0, 0.7, 3.0):
            y0, v0 = orb.eval(t)
            y1, v1 = orb.eval(t + orb.period)
            assert y1 == pytest.approx(y0, abs=1e-9)
            assert v1 == pytest.approx(v0, abs=1e-9)

    def test_initial_condition(self):
        e = 0.6
        orb = osc.orbit(PLUS, 3.0, e)
        y, v = orb.eval(0.0)
        assert y == 0.0
        assert v == pytest.approx(math.sqrt(e), abs=1e-12)

    def test_amplitude_attained_at_quarter_period(self):
        e = 0.3
        orb = osc.orbit(MINUS, 3.0, e)
        y, v = orb.eval(orb.period / 4.0)
        assert y == pytest.approx(pp.amplitude(MINUS, 3.0, e), abs=1e-9)
        assert v == pytest.approx(0.0, abs=1e-8)

    def test_orbit_cache_returns_same_object(self):
        a = osc.orbit(PLUS, 3.0, 0.25)
        b = osc.orbit(PLUS, 3.0, 0.25)
        assert a is b

    def test_samples_shape_and_energy_level(self):
        e = 0.9
        pts = osc.orbit_samples(PLUS, 3.0, e, n=100)
        assert pts.shape == (100, 2)
        levels = [pp.first_integral(PLUS, 3.0, y, v) for y, v in pts]
        assert max(abs(l - e) for l in levels) < 1e-8


class TestFamilyEval:
    def test_zero_velocity_gives_equilibrium(self):
        assert osc.family_eval(PLUS, 3.0, 0.0, 2.3) == (0.0, 0.0)

    def test_matches_direct_integration(self):
        c = 0.7
        traj = osc.integrate(PLUS, 3.0, c, 4.0)
        y_ref, v_ref = traj.state(3.5)
        y, v = osc.family_eval(PLUS, 3.0, c, 3.5)
        assert y == pytest.approx(y_ref, abs=1e-9)
        assert v == pytest.approx(v_ref, abs=1e-9)

    def test_negative_time_via_oddness(self):
        c = 0.7
        y_neg, v_neg = osc.family_eval(PLUS, 3.0, c, -1.2)
        y_pos, v_pos = osc.family_eval(PLUS, 3.0, c, 1.2)
        assert y_neg == pytest.approx(-y_pos, abs=1e-10)
        assert v_neg == pytest.approx(v_pos, abs=1e-10)


class TestLeapfrog:
    def test_long_run_energy_drift_bounded(self):
        e = 1.5
        ts, ys, vs = osc.leapfrog(PLUS, 3.0, 0.0, math.sqrt(e), 200.0, 200_000)
        levels = pp.first_integral(PLUS, 3.0, ys, vs)
        assert float(np.max(np.abs(levels - e))) < 1e-5

    def test_matches_adaptive_integrator(self):
        c = 0.8
        ts, ys, vs = osc.leapfrog(PLUS, 3.0, 0.0, c, 5.0, 50_000)
        traj = osc.integrate(PLUS, 3.0, c, 5.0)
        y_ref, _ = traj.state(float(ts[-1]))
        assert ys[-1] == pytest.approx(y_ref, abs=1e-6)

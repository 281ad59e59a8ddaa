"""Acceptance suite: one test per release criterion, pinned tolerances.

Each test prints a single ``[acceptance] criterion NN PASS|FAIL`` line before
asserting, so the verdict survives in captured output either way.
"""

import math
import time

import numpy as np
import pytest

import curlbreather as cb
from curlbreather import Sign, expansions, oscillator, phase_plane as pp, verifier
from curlbreather.breather import decay_rate
from curlbreather.coefficients import check_hypotheses, default_radius_grid

PLUS, MINUS = Sign.PLUS, Sign.MINUS
TWO_PI = 2.0 * math.pi
SIGNS = (PLUS, MINUS)


def _verdict(num: int, ok: bool, detail: str) -> None:
    print(f"[acceptance] criterion {num:02d} {'PASS' if ok else 'FAIL'}: {detail}")


@pytest.fixture(scope="module")
def sample_points(plus_spec):
    rng = np.random.default_rng(20260814)
    return verifier.random_spacetime_points(rng, 20, plus_spec.T)


def test_criterion_01_period_limit_at_zero_energy():
    """L(e) -> 2*pi as e -> 0: |L(1e-10) - 2*pi| <= 1e-6 for p in {1.5, 2, 3, 5}."""
    t0 = time.time()
    e = 1e-10
    devs = {
        (sign.value, p): abs(pp.period(sign, p, e) - TWO_PI)
        for sign in SIGNS
        for p in (1.5, 2.0, 3.0, 5.0)
    }
    elapsed = time.time() - t0
    worst = max(devs.values())
    offenders = {k: f"{v:.3e}" for k, v in devs.items() if v > 1e-6}
    ok = worst <= 1e-6 and elapsed < 1.0
    _verdict(1, ok, f"max |L(1e-10) - 2*pi| = {worst:.3e} (tol 1e-6), {elapsed:.2f}s")
    assert elapsed < 1.0
    assert worst <= 1e-6, (
        f"|L(1e-10) - 2*pi| exceeds 1e-6 for {offenders}; the deviation scales as "
        f"|F'(0)| * 2/(p+1) * e^((p-1)/2), so at e = 1e-10 it is above the "
        f"tolerance for every p < 2.6 regardless of quadrature accuracy"
    )


def test_criterion_02_alpha_constant_anchor():
    """alpha(p=3) equals 4/(3*pi) analytically; both signs agree."""
    t0 = time.time()
    cp = expansions.compute_constants(PLUS, 3.0)
    cm = expansions.compute_constants(MINUS, 3.0)
    dev_plus = abs(cp.alpha - 4.0 / (3.0 * math.pi))
    dev_cross = abs(cm.alpha - cp.alpha)
    elapsed = time.time() - t0
    ok = dev_plus <= 1e-8 and dev_cross <= 1e-9 and elapsed < 1.0
    _verdict(2, ok, f"|alpha - 4/(3pi)| = {dev_plus:.2e}, sign gap {dev_cross:.2e}, {elapsed:.2f}s")
    assert dev_plus <= 1e-8
    assert dev_cross <= 1e-9
    assert elapsed < 1.0


def test_criterion_03_expansion_fits():
    """Fitted exponent within 1% of 2/(p-1), prefactor within 2% of alpha."""
    t0 = time.time()
    reports = [
        expansions.validate_expansion(sign, p) for sign in SIGNS for p in (2.0, 3.0)
    ]
    elapsed = time.time() - t0
    ok = all(r.exponent_ok and r.prefactor_ok for r in reports) and elapsed < 10.0
    worst_exp = max(abs(r.fitted_exponent / r.expected_exponent - 1.0) for r in reports)
    worst_pre = max(abs(r.fitted_prefactor / r.alpha - 1.0) for r in reports)
    _verdict(3, ok, f"exponent dev {worst_exp:.2%} (<=1%), prefactor dev {worst_pre:.2%} "
                    f"(<=2%), {elapsed:.1f}s")
    for r in reports:
        assert r.exponent_ok, (r.sign, r.p, r.fitted_exponent, r.expected_exponent)
        assert r.prefactor_ok, (r.sign, r.p, r.fitted_prefactor, r.alpha)
    assert elapsed < 10.0


def test_criterion_04_dual_period_oracles():
    """Quadrature and return-map periods agree to 1e-6 on 20 energies per sign."""
    t0 = time.time()
    diffs = []
    for e in np.geomspace(1e-6, 20.0, 20):
        diffs.append(abs(pp.period(PLUS, 3.0, float(e)) - oscillator.return_map_period(PLUS, 3.0, float(e))))
    cap = pp.separatrix_energy(3.0)
    for e in np.geomspace(1e-6, 0.98 * cap, 20):
        diffs.append(abs(pp.period(MINUS, 3.0, float(e)) - oscillator.return_map_period(MINUS, 3.0, float(e))))
    elapsed = time.time() - t0
    worst = max(diffs)
    ok = worst <= 1e-6 and elapsed < 30.0
    _verdict(4, ok, f"max |L_quad - L_return| = {worst:.3e} (tol 1e-6), {elapsed:.1f}s")
    assert worst <= 1e-6
    assert elapsed < 30.0


def test_criterion_05_inversion_roundtrip():
    """|L(M(s)) - s| <= 1e-8 over 50 target periods per sign."""
    t0 = time.time()
    plus_targets = TWO_PI - np.geomspace(1e-8, TWO_PI - 0.3, 50)
    minus_targets = TWO_PI + np.geomspace(1e-8, 30.0, 50)
    worst = 0.0
    for s in plus_targets:
        worst = max(worst, abs(pp.period(PLUS, 3.0, pp.invert_period(PLUS, 3.0, float(s))) - float(s)))
    for s in minus_targets:
        worst = max(worst, abs(pp.period(MINUS, 3.0, pp.invert_period(MINUS, 3.0, float(s))) - float(s)))
    elapsed = time.time() - t0
    ok = worst <= 1e-8 and elapsed < 10.0
    _verdict(5, ok, f"max roundtrip error {worst:.3e} (tol 1e-8), {elapsed:.1f}s")
    assert worst <= 1e-8
    assert elapsed < 10.0


def test_criterion_06_end_to_end_residual_orders(plus_spec, minus_spec, sample_points):
    """Hypotheses pass and all FD residual orders sit in [1.8, 2.2], both signs."""
    t0 = time.time()
    hs = (0.04, 0.02, 0.01)
    rpts = [(float(np.linalg.norm(x)), t) for x, t in sample_points]
    lines = []
    all_ok = True
    for spec in (plus_spec, minus_spec):
        hyp = check_hypotheses(spec.profile, default_radius_grid(spec.profile))
        reduced = verifier.reduced_residual_sweep(spec, rpts, hs)
        full = verifier.full_residual_sweep(spec, sample_points, hs)
        cc = verifier.curl_curl_sweep(spec, sample_points, hs)
        ok = hyp.all_passed and reduced.passed and full.passed and cc.passed
        all_ok &= ok
        lines.append(
            f"{spec.sign.value}: hyp={'ok' if hyp.all_passed else 'FAIL'} "
            f"orders {reduced.order:.3f}/{full.order:.3f}/{cc.order:.3f}"
        )
        assert hyp.all_passed, hyp.failed()
        assert reduced.passed, reduced.order
        assert full.passed, full.order
        assert cc.passed, cc.order
    elapsed = time.time() - t0
    all_ok &= elapsed < 300.0
    _verdict(6, all_ok, "; ".join(lines) + f", {elapsed:.0f}s (< 300s)")
    assert elapsed < 300.0


def test_criterion_07_periodicity_and_axis_regularity(plus_spec, minus_spec):
    """T-periodicity to 1e-8, exact zero on the axis, vanishing second difference."""
    worst_period = 0.0
    for spec in (plus_spec, minus_spec):
        rs = np.linspace(0.2, 4.5, 10)
        ts = np.linspace(0.0, spec.T, 10)
        worst_period = max(
            worst_period,
            max(
                abs(spec.psi(float(r), float(t) + spec.T) - spec.psi(float(r), float(t)))
                for r in rs
                for t in ts
            ),
        )
    axis_exact = all(
        spec.psi(0.0, t) == 0.0 for spec in (plus_spec, minus_spec) for t in (0.0, 0.9, 4.4)
    )
    ladder_ok = True
    final_vals = []
    for spec in (plus_spec, minus_spec):
        for t in (0.7, 1.9, 3.6):
            vals = [
                abs(spec.psi(2.0 * h, t) - 2.0 * spec.psi(h, t)) / h**2
                for h in (0.2 * 0.5**j for j in range(9))
            ]
            ladder_ok &= all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))
            ladder_ok &= vals[-1] < 1e-3
            final_vals.append(vals[-1])
    ok = worst_period <= 1e-8 and axis_exact and ladder_ok
    _verdict(7, ok, f"periodicity {worst_period:.2e} (tol 1e-8), axis exact: {axis_exact}, "
                    f"second-difference ladder monotone to {max(final_vals):.1e} (< 1e-3)")
    assert worst_period <= 1e-8
    assert axis_exact
    assert ladder_ok


def test_criterion_08_certified_decay_rate(plus_spec, minus_spec):
    """Fitted tail decay rate reaches the profile's configured delta."""
    fits = {
        spec.sign.value: decay_rate(spec, np.linspace(2.0, 6.0, 25))
        for spec in (plus_spec, minus_spec)
    }
    ok = all(
        fit.rate >= spec.profile.delta
        for fit, spec in zip(fits.values(), (plus_spec, minus_spec))
    )
    detail = ", ".join(f"{k}: rate {f.rate:.3f} >= 1" for k, f in fits.items())
    _verdict(8, ok, detail)
    assert fits["plus"].rate >= plus_spec.profile.delta
    assert fits["minus"].rate >= minus_spec.profile.delta


def test_criterion_09_phase_shift_family(plus_spec, sample_points):
    """Three distinct radial phases keep every residual order in the window."""
    hs = (0.04, 0.02, 0.01)
    rpts = [(float(np.linalg.norm(x)), t) for x, t in sample_points]
    orders = {}
    ok = True
    for phase in ("0.8", "0.25*exp(-r**2)", "1.5/(1 + r**2)"):
        spec = plus_spec.shifted(phase)
        reduced = verifier.reduced_residual_sweep(spec, rpts, hs)
        full = verifier.full_residual_sweep(spec, sample_points, hs)
        cc = verifier.curl_curl_sweep(spec, sample_points, hs)
        orders[phase] = (reduced.order, full.order, cc.order)
        ok &= reduced.passed and full.passed and cc.passed
    detail = "; ".join(
        f"a={k}: {r:.2f}/{f:.2f}/{c:.2f}" for k, (r, f, c) in orders.items()
    )
    _verdict(9, ok, detail)
    for phase, (r, f, c) in orders.items():
        for order in (r, f, c):
            assert 1.8 <= order <= 2.2, (phase, order)


def test_criterion_10_monochromatic_family(plus_profile, minus_profile, sample_points):
    """Algebraic relation at roundoff on 100 radii; PDE residual order in window."""
    radii = np.linspace(0.1, 8.0, 100)
    alg = max(
        verifier.algebraic_residual(prof, float(r))
        for prof in (plus_profile, minus_profile)
        for r in radii
    )
    reports = [
        verifier.monochromatic_sweep(prof, sample_points, (0.04, 0.02, 0.01))
        for prof in (plus_profile, minus_profile)
    ]
    ok = alg <= 1e-13 and all(rep.passed for rep in reports)
    _verdict(10, ok, f"algebraic max rel {alg:.2e} (tol 1e-13), orders "
                     + "/".join(f"{rep.order:.3f}" for rep in reports))
    assert alg <= 1e-13
    for rep in reports:
        assert rep.passed, rep.order


def test_criterion_11_amplitude_bounds():
    """N(e) <= sqrt(e) (plus); N(e) <= sqrt((p+1)e/(p-1)) and N < 1 (minus)."""
    ok = True
    worst_plus = worst_minus = 0.0
    for p in (1.5, 2.0, 3.0, 5.0):
        for e in np.geomspace(1e-8, 100.0, 40):
            n = pp.amplitude(PLUS, p, float(e))
            worst_plus = max(worst_plus, n - math.sqrt(e))
            ok &= n <= math.sqrt(e)
        cap = pp.separatrix_energy(p)
        for e in np.geomspace(1e-8, cap * (1.0 - 1e-9), 40):
            n = pp.amplitude(MINUS, p, float(e))
            bound = math.sqrt((p + 1.0) * e / (p - 1.0))
            worst_minus = max(worst_minus, n - bound)
            ok &= n <= bound and n < 1.0
    _verdict(11, ok, f"max N - sqrt(e) = {worst_plus:.2e} (plus), "
                     f"max N - bound = {worst_minus:.2e} (minus), N < 1 throughout")
    assert ok

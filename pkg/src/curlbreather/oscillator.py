"""Time integration of the model oscillators and the return-map period.

The return-map period is an oracle for the phase-plane quadrature: it knows
nothing about the closed-form period integral and instead integrates the
flow from (0, sqrt(e)) until the trajectory crosses y = 0 downward, which
by the odd symmetry of the equation happens exactly at half the minimal
period.  Event localization (root solve on the dense output) pins the
crossing; doubling it gives the period.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .common import TWO_PI, Sign, check_exponent, odd_power
from . import phase_plane

RTOL = 1e-10
ATOL = 1e-12


def rhs(sign: Sign, p: float):
    sgn = sign.factor

    def f(t, state):
        y, v = state
        return (v, -y - sgn * odd_power(y, p))

    return f


@dataclass(frozen=True)
class Trajectory:
    """Dense solution of one oscillator run, with energy-drift diagnostics."""

    sign: Sign
    p: float
    energy: float
    t_span: tuple
    _sol: object

    def state(self, t: float) -> tuple:
        y, v = self._sol(t)
        return float(y), float(v)

    def states(self, ts: np.ndarray) -> np.ndarray:
        return np.asarray(self._sol(np.asarray(ts, dtype=float))).T

    def energy_drift(self, n: int = 200) -> float:
        ts = np.linspace(self.t_span[0], self.t_span[1], n)
        drift = 0.0
        for y, v in self.states(ts):
            a = phase_plane.first_integral(self.sign, self.p, y, v)
            drift = max(drift, abs(a - self.energy))
        return drift


def _check_minus_start(sign: Sign, p: float, e: float) -> None:
    if sign is Sign.MINUS and e >= phase_plane.separatrix_energy(p):
        raise ValueError(
            f"initial energy {e} is not inside the minus-sign separatrix "
            f"(e* = {phase_plane.separatrix_energy(p)})"
        )


def integrate(
    sign: Sign,
    p: float,
    c: float,
    t_end: float,
    *,
    rtol: float = RTOL,
    atol: float = ATOL,
) -> Trajectory:
    """Integrate from (y, y')(0) = (0, c) over [0, t_end] (t_end < 0 runs backward)."""
    p = check_exponent(p)
    e = c * c
    _check_minus_start(sign, p, e)
    sol = solve_ivp(
        rhs(sign, p),
        (0.0, t_end),
        (0.0, c),
        method="RK45",
        dense_output=True,
        rtol=rtol,
        atol=atol,
    )
    if not sol.success:
        raise RuntimeError(f"oscillator integration failed: {sol.message}")
    return Trajectory(sign=sign, p=p, energy=e, t_span=(0.0, t_end), _sol=sol.sol)


def return_map_period(
    sign: Sign,
    p: float,
    e: float,
    *,
    rtol: float = RTOL,
    atol: float = ATOL,
) -> float:
    """First return time of the orbit through (0, sqrt(e)) to its initial state.

    Starting at (0, sqrt(e)) the solution is positive until it crosses y = 0
    with negative slope at exactly half the period (the orbit is symmetric
    under (y, v) -> (-y, -v)), and the downward crossing is transversal, so
    the event solve is well conditioned; the upward crossing at t = 0 never
    enters.  At e = 0 the orbit degenerates to the equilibrium and the
    linearized return time 2*pi is returned.
    """
    p = check_exponent(p)
    if e < 0.0:
        raise ValueError(f"orbit energy must be >= 0, got {e}")
    if e == 0.0:
        return TWO_PI
    _check_minus_start(sign, p, e)
    c = math.sqrt(e)

    def crossing(t, state):
        return state[0]

    crossing.terminal = True
    crossing.direction = -1.0

    horizon = 3.0 * TWO_PI
    while horizon < 1e6:
        sol = solve_ivp(
            rhs(sign, p),
            (0.0, horizon),
            (0.0, c),
            method="RK45",
            dense_output=True,
            events=crossing,
            rtol=rtol,
            atol=atol,
        )
        if not sol.success:
            raise RuntimeError(f"oscillator integration failed: {sol.message}")
        if len(sol.t_events[0]) > 0:
            return 2.0 * float(sol.t_events[0][0])
        horizon *= 4.0
    raise RuntimeError(f"no return detected below t = {horizon}; orbit may be unbounded")


class PeriodicOrbit:
    """One orbit stored over a single period, evaluated by phase reduction.

    The period used for reduction is the quadrature value L(e), so composed
    objects built on this class stay comparable against the independent
    return-map oracle.
    """

    def __init__(
        self,
        sign: Sign,
        p: float,
        e: float,
        *,
        rtol: float = RTOL,
        atol: float = ATOL,
    ):
        self.sign = sign
        self.p = check_exponent(p)
        self.energy = float(e)
        if self.energy < 0.0:
            raise ValueError(f"orbit energy must be >= 0, got {e}")
        _check_minus_start(sign, p, self.energy)
        if self.energy == 0.0:
            self.period = TWO_PI
            self._sol = None
            return
        self.period = phase_plane.period(sign, p, self.energy)
        sol = solve_ivp(
            rhs(sign, p),
            (0.0, self.period),
            (0.0, math.sqrt(self.energy)),
            method="RK45",
            dense_output=True,
            rtol=rtol,
            atol=atol,
        )
        if not sol.success:
            raise RuntimeError(f"oscillator integration failed: {sol.message}")
        self._sol = sol.sol

    def eval(self, t: float) -> tuple:
        """(y, y')(t) with t reduced modulo the stored period."""
        if self._sol is None:
            return 0.0, 0.0
        t_red = t - self.period * math.floor(t / self.period)
        y, v = self._sol(t_red)
        return float(y), float(v)

    def samples(self, n: int) -> np.ndarray:
        """n phase-plane samples (y, y') over one closed loop."""
        if self._sol is None:
            return np.zeros((max(n, 1), 2))
        ts = np.linspace(0.0, self.period, n)
        return np.asarray(self._sol(ts)).T


@functools.lru_cache(maxsize=512)
def orbit(sign: Sign, p: float, e: float, *, rtol: float = RTOL, atol: float = ATOL) -> PeriodicOrbit:
    return PeriodicOrbit(sign, p, e, rtol=rtol, atol=atol)


def family_eval(sign: Sign, p: float, c: float, t: float) -> tuple:
    """(y, y')(t) for the orbit launched from (0, c); identically 0 at c = 0."""
    if c == 0.0:
        return 0.0, 0.0
    return orbit(sign, float(p), float(c) * float(c)).eval(t)


def orbit_samples(sign: Sign, p: float, e: float, n: int = 400) -> np.ndarray:
    """Point cloud tracing the closed orbit at energy e (single point at e = 0)."""
    return orbit(sign, float(p), float(e)).samples(n)


def leapfrog(
    sign: Sign,
    p: float,
    y0: float,
    v0: float,
    t_end: float,
    n_steps: int,
) -> tuple:
    """Fixed-step kick-drift-kick integrator for long-horizon drift checks."""
    p = check_exponent(p)
    sgn = sign.factor

    def accel(y):
        return -y - sgn * odd_power(y, p)

    dt = t_end / n_steps
    ts = np.linspace(0.0, t_end, n_steps + 1)
    ys = np.empty(n_steps + 1)
    vs = np.empty(n_steps + 1)
    ys[0], vs[0] = y0, v0
    y, v = y0, v0
    a = accel(y)
    for i in range(1, n_steps + 1):
        v_half = v + 0.5 * dt * a
        y = y + dt * v_half
        a = accel(y)
        v = v_half + 0.5 * dt * a
        ys[i], vs[i] = y, v
    return ts, ys, vs

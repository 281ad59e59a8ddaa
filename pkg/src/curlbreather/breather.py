"""Assembly of breather fields from coefficient profiles.

At each radius the profile fixes a scaling pair

    sigma(r) = sqrt(q(r)/s(r)),   tau(r) = (q(r)/V(r))^(1/(p-1)),

and the rescaled ODE at radius r is solved by tau(r) y(sigma(r) t) with y a
periodic orbit of the model oscillator.  The solution is T-periodic in time
exactly when the orbit period equals g(r) = sigma(r) T, so the orbit energy
is pinned by the inverse period map: e(r) = M(g(r)).  The resulting radial
amplitude

    psi(r, t) = tau(r) y(sigma(r) t; sqrt(e(r)))

feeds the vector field U(x, t) = psi(|x|, t) x/|x|, which is curl-free, so
it solves the full curl-curl problem wherever the reduced ODE holds.
Composing with any radial C^2 phase a(r) with a'(0) = 0 gives the continuum
U(x, t + a(|x|)) of further breathers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .common import TWO_PI, Sign, abs_power
from .coefficients import CoefficientProfile
from .errors import FitError, HypothesisViolation
from .oscillator import PeriodicOrbit
from .symbolic import RadialFunction
from . import phase_plane

# g(r) within this window of 2*pi short-circuits to the zero orbit instead
# of driving the inverse period map into its singular corner.
GAP_WINDOW = 1e-13


class _OrbitBank:
    """Shared per-profile caches: radius -> energy, energy -> periodic orbit."""

    def __init__(self, profile: CoefficientProfile):
        self.profile = profile
        self._energies: dict = {}
        self._orbits: dict = {}

    def energy(self, r: float) -> float:
        e = self._energies.get(r)
        if e is None:
            e = self._compute_energy(float(r))
            self._energies[r] = e
        return e

    def _compute_energy(self, r: float) -> float:
        profile = self.profile
        g = profile.g(r)
        if abs(g - TWO_PI) <= GAP_WINDOW:
            return 0.0
        if profile.sign is Sign.PLUS:
            if g > TWO_PI:
                raise HypothesisViolation(
                    "H1", f"g({r}) = {g} exceeds 2*pi; plus-sign matching needs g < 2*pi"
                )
        else:
            if g < TWO_PI:
                raise HypothesisViolation(
                    "H1'", f"g({r}) = {g} is below 2*pi; minus-sign matching needs g > 2*pi"
                )
        return phase_plane.invert_period(profile.sign, profile.p, g)

    def orbit(self, e: float) -> PeriodicOrbit:
        ob = self._orbits.get(e)
        if ob is None:
            ob = PeriodicOrbit(self.profile.sign, self.profile.p, e)
            self._orbits[e] = ob
        return ob


@dataclass(frozen=True)
class BreatherSpec:
    """A constructed breather: profile plus an optional radial phase shift."""

    profile: CoefficientProfile
    phase: RadialFunction | None = None
    _bank: _OrbitBank = field(repr=False, compare=False, default=None)

    @property
    def T(self) -> float:
        return self.profile.T

    @property
    def sign(self) -> Sign:
        return self.profile.sign

    @property
    def p(self) -> float:
        return self.profile.p

    def sigma(self, r: float) -> float:
        return math.sqrt(self.profile.q(r) / self.profile.s(r))

    def tau(self, r: float) -> float:
        return abs_power(self.profile.q(r) / self.profile.V(r), 1.0 / (self.p - 1.0))

    def g(self, r: float) -> float:
        return self.profile.g(r)

    def energy(self, r: float) -> float:
        """Orbit energy e(r) = M(g(r)); 0 inside the matching window at 2*pi."""
        return self._bank.energy(r)

    def c(self, r: float) -> float:
        """Initial orbit speed c(r) = sqrt(M(g(r)))."""
        return math.sqrt(self.energy(r))

    def psi(self, r: float, t: float) -> float:
        """Radial amplitude psi(r, t) = tau(r) y(sigma(r) (t + a(r)); c(r))."""
        e = self.energy(r)
        if e == 0.0:
            return 0.0
        if self.phase is not None:
            t = t + self.phase(r)
        y, _ = self._bank.orbit(e).eval(self.sigma(r) * t)
        return self.tau(r) * y

    def psi_grid(self, rs: np.ndarray, ts: np.ndarray) -> np.ndarray:
        out = np.empty((len(rs), len(ts)))
        for i, r in enumerate(rs):
            for j, t in enumerate(ts):
                out[i, j] = self.psi(float(r), float(t))
        return out

    def field(self, x: np.ndarray, t: float) -> np.ndarray:
        """U(x, t) = psi(|x|, t) x/|x|, extended by 0 at the origin."""
        x = np.asarray(x, dtype=float)
        r = float(np.linalg.norm(x))
        if r == 0.0:
            return np.zeros(3)
        return self.psi(r, t) * x / r

    def envelope(self, r: float) -> float:
        """sup over t of |psi(r, .)| = tau(r) N(e(r)), evaluated exactly."""
        e = self.energy(r)
        if e == 0.0:
            return 0.0
        return self.tau(r) * phase_plane.amplitude(self.sign, self.p, e)

    def shifted(self, a) -> "BreatherSpec":
        """Compose with a radial phase a(r) (C^2, a'(0) = 0); orbits are shared."""
        a = RadialFunction.from_expression(a)
        d10 = a.d1(0.0)
        if abs(d10) > 1e-10:
            raise ValueError(f"phase function must have a'(0) = 0, got {d10}")
        total = a if self.phase is None else self.phase + a
        return BreatherSpec(profile=self.profile, phase=total, _bank=self._bank)


def build_breather(profile: CoefficientProfile, phase=None) -> BreatherSpec:
    spec = BreatherSpec(profile=profile, phase=None, _bank=_OrbitBank(profile))
    if phase is not None:
        spec = spec.shifted(phase)
    return spec


def complex_amplitude(profile: CoefficientProfile, r: float) -> float:
    """Modulus phi(r) of the monochromatic breather e^(i 2*pi t/T) phi(r) x/|x|.

    phi solves the algebraic relation -(2*pi/T)^2 s + q +/- V phi^(p-1) = 0,
    so phi = [ +/- ((2*pi/T)^2 s/q - 1) q/V ]^(1/(p-1)); under H1 (plus) or
    H1' (minus) the bracket is nonnegative.
    """
    p = profile.p
    omega2 = (TWO_PI / profile.T) ** 2
    s, q, V = profile.s(r), profile.q(r), profile.V(r)
    bracket = profile.sign.factor * (omega2 * s / q - 1.0) * q / V
    if bracket < 0.0:
        name = "H1" if profile.sign is Sign.PLUS else "H1'"
        raise HypothesisViolation(
            name, f"monochromatic amplitude undefined at r = {r}: bracket = {bracket}"
        )
    return abs_power(bracket, 1.0 / (p - 1.0))


def monochromatic_field(profile: CoefficientProfile):
    """Complex field evaluator (x, t) -> e^(i omega t) phi(|x|) x/|x|."""
    omega = TWO_PI / profile.T

    def U(x: np.ndarray, t: float) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        r = float(np.linalg.norm(x))
        if r == 0.0:
            return np.zeros(3, dtype=complex)
        return complex_amplitude(profile, r) * np.exp(1j * omega * t) * x / r

    return U


@dataclass(frozen=True)
class DecayFit:
    rate: float
    slope: float
    intercept: float
    n_points: int

    def to_dict(self) -> dict:
        return {
            "rate": self.rate,
            "slope": self.slope,
            "intercept": self.intercept,
            "n_points": self.n_points,
        }


def decay_rate(spec: BreatherSpec, r_grid: np.ndarray) -> DecayFit:
    """Exponential decay rate of the amplitude envelope over a tail grid.

    Fits log sup_t |psi(r, .)| linearly in r and returns the rate -slope.
    Radii where the envelope underflows are dropped; an all-zero tail is a
    fit error.
    """
    r_grid = np.asarray(r_grid, dtype=float)
    envs = np.array([spec.envelope(float(r)) for r in r_grid])
    keep = envs > 1e-280
    if np.count_nonzero(keep) < 3:
        raise FitError("envelope is zero on the tail grid; no decay rate to fit")
    slope, intercept = np.polyfit(r_grid[keep], np.log(envs[keep]), 1)
    return DecayFit(
        rate=float(-slope),
        slope=float(slope),
        intercept=float(intercept),
        n_points=int(np.count_nonzero(keep)),
    )

"""Phase-plane analysis of the model oscillators ``y'' + y +/- |y|^(p-1) y = 0``.

Every bounded orbit of either oscillator is a level set of the first
integral

    A(xi, eta) = eta^2 + xi^2 +/- 2/(p+1) |xi|^(p+1),

and the minimal period of the orbit at energy e admits a closed quadrature
form.  Substituting z = y/N (N the orbit amplitude) and then z = sin(theta)
turns that quadrature into a smooth integral over [0, pi/2],

    L(e) = F(w) = 4 * int_0^(pi/2) dtheta / sqrt(1 +/- w * kappa(sin theta)),

with w = 2/(p+1) * N^(p-1) and kappa(z) = (1 - z^(p+1)) / (1 - z^2).  The
plus-sign period is strictly decreasing from 2*pi, the minus-sign period
strictly increasing from 2*pi, so both restrictions are invertible; the
inverse is computed here by a bracketed root solve in the w variable
followed by the algebraic energy map ``phi_map``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .common import TWO_PI, Sign, abs_power, check_exponent

# Default quadrature targets; all integrands below are smooth on [0, pi/2].
ABS_TOL = 1e-12
REL_TOL = 1e-10

# Minus-sign inversions stop this far below the separatrix energy.
SEPARATRIX_MARGIN = 1e-12

# |s - 2*pi| below this is treated as the period-map endpoint itself.
_ENDPOINT_EPS = 8.0 * np.finfo(float).eps * TWO_PI

_BRENTQ_RTOL = 4.0 * np.finfo(float).eps


def separatrix_energy(p: float) -> float:
    """Energy of the minus-sign separatrix through the equilibria (+/-1, 0)."""
    p = check_exponent(p)
    return (p - 1.0) / (p + 1.0)


def first_integral(sign: Sign, p: float, xi: float, eta: float) -> float:
    """Conserved energy A(xi, eta) of the sign-selected oscillator."""
    p = check_exponent(p)
    return eta * eta + xi * xi + sign.factor * 2.0 / (p + 1.0) * abs_power(xi, p + 1.0)


def _energy_range_check(sign: Sign, p: float, e: float) -> float:
    e = float(e)
    if not math.isfinite(e) or e < 0.0:
        raise ValueError(f"orbit energy must be finite and >= 0, got {e}")
    if sign is Sign.MINUS and e >= separatrix_energy(p):
        raise ValueError(
            f"minus-sign orbit energy {e} is not below the separatrix "
            f"energy (p-1)/(p+1) = {separatrix_energy(p)}"
        )
    return e


def amplitude(sign: Sign, p: float, e: float) -> float:
    """Orbit amplitude N(e): the positive root of N^2 +/- 2/(p+1) N^(p+1) = e.

    For the plus sign the root is unique on [0, sqrt(e)]; for the minus sign
    the relevant root is the one inside the separatrix, where the map is
    strictly increasing, and it obeys N <= sqrt((p+1) e / (p-1)) < 1.
    """
    p = check_exponent(p)
    e = _energy_range_check(sign, p, e)
    if e == 0.0:
        return 0.0
    two_over = 2.0 / (p + 1.0)
    if sign is Sign.PLUS:
        hi = math.sqrt(e)

        def f(n: float) -> float:
            return n * n + two_over * abs_power(n, p + 1.0) - e

    else:
        hi = math.sqrt((p + 1.0) * e / (p - 1.0))

        def f(n: float) -> float:
            return n * n - two_over * abs_power(n, p + 1.0) - e

    return brentq(f, 0.0, hi, xtol=1e-300, rtol=_BRENTQ_RTOL, maxiter=200)


def kappa(z: float, p: float) -> float:
    """(1 - z^(p+1)) / (1 - z^2) on [0, 1], with the limit (p+1)/2 at z = 1.

    Written through expm1/log so the ratio stays accurate as z -> 1, where
    both numerator and denominator vanish.
    """
    p = check_exponent(p)
    z = float(z)
    if not 0.0 <= z <= 1.0:
        raise ValueError(f"kappa is defined on [0, 1], got z = {z}")
    if z == 0.0:
        return 1.0
    if z == 1.0:
        return 0.5 * (p + 1.0)
    lz = math.log(z)
    return math.expm1((p + 1.0) * lz) / math.expm1(2.0 * lz)


def _quad(f, abs_tol: float, rel_tol: float) -> float:
    val, _ = quad(f, 0.0, 0.5 * math.pi, epsabs=abs_tol, epsrel=rel_tol, limit=200)
    return val


def f_value(
    sign: Sign, p: float, w: float, *, abs_tol: float = ABS_TOL, rel_tol: float = REL_TOL
) -> float:
    """Period as a function of w: F(w) = 4 int_0^(pi/2) (1 +/- w kappa)^(-1/2) dtheta."""
    p = check_exponent(p)
    w = _w_range_check(sign, p, w)
    sgn = sign.factor

    def integrand(theta: float) -> float:
        den = 1.0 + sgn * w * kappa(math.sin(theta), p)
        return 1.0 / math.sqrt(max(den, 1e-300))

    return 4.0 * _quad(integrand, 0.25 * abs_tol, rel_tol)


def f_prime(
    sign: Sign, p: float, w: float, *, abs_tol: float = ABS_TOL, rel_tol: float = REL_TOL
) -> float:
    """dF/dw: strictly negative for the plus sign, strictly positive for minus."""
    p = check_exponent(p)
    w = _w_range_check(sign, p, w)
    sgn = sign.factor

    def integrand(theta: float) -> float:
        k = kappa(math.sin(theta), p)
        den = 1.0 + sgn * w * k
        return k / max(den, 1e-300) ** 1.5

    return -sgn * 2.0 * _quad(integrand, 0.5 * abs_tol, rel_tol)


def f_second(
    sign: Sign, p: float, w: float, *, abs_tol: float = ABS_TOL, rel_tol: float = REL_TOL
) -> float:
    """d^2F/dw^2: strictly positive for both signs."""
    p = check_exponent(p)
    w = _w_range_check(sign, p, w)
    sgn = sign.factor

    def integrand(theta: float) -> float:
        k = kappa(math.sin(theta), p)
        den = 1.0 + sgn * w * k
        return k * k / max(den, 1e-300) ** 2.5

    return 3.0 * _quad(integrand, abs_tol / 3.0, rel_tol)


def _w_range_check(sign: Sign, p: float, w: float) -> float:
    w = float(w)
    if not math.isfinite(w) or w < 0.0:
        raise ValueError(f"w must be finite and >= 0, got {w}")
    if sign is Sign.MINUS and w >= 2.0 / (p + 1.0):
        raise ValueError(
            f"minus-sign quadrature is singular at w = 2/(p+1) = {2.0 / (p + 1.0)}; got w = {w}"
        )
    return w


def phi_map(sign: Sign, p: float, w: float) -> float:
    """Energy reached at parameter w: e = ((p+1)/2)^(2/(p-1)) (w^(2/(p-1)) +/- w^((p+1)/(p-1))).

    Composing with the inverse of F gives the inverse period map, since
    w = 2/(p+1) N(e)^(p-1) identifies phi_map(w) with the defining relation
    of the amplitude.
    """
    p = check_exponent(p)
    w = float(w)
    if not math.isfinite(w) or w < 0.0:
        raise ValueError(f"w must be finite and >= 0, got {w}")
    if sign is Sign.MINUS and w > 2.0 / (p + 1.0):
        raise ValueError(
            f"minus-sign energy map is defined for w <= 2/(p+1) = {2.0 / (p + 1.0)}; got w = {w}"
        )
    scale = (0.5 * (p + 1.0)) ** (2.0 / (p - 1.0))
    return scale * (
        abs_power(w, 2.0 / (p - 1.0)) + sign.factor * abs_power(w, (p + 1.0) / (p - 1.0))
    )


def _w_of_energy(sign: Sign, p: float, e: float) -> float:
    return 2.0 / (p + 1.0) * abs_power(amplitude(sign, p, e), p - 1.0)


def period(
    sign: Sign, p: float, e: float, *, abs_tol: float = ABS_TOL, rel_tol: float = REL_TOL
) -> float:
    """Minimal period L(e) of the orbit at energy e; L(0) = 2*pi."""
    p = check_exponent(p)
    e = _energy_range_check(sign, p, e)
    return f_value(sign, p, _w_of_energy(sign, p, e), abs_tol=abs_tol, rel_tol=rel_tol)


def invert_period(
    sign: Sign, p: float, s: float, *, abs_tol: float = ABS_TOL, rel_tol: float = REL_TOL
) -> float:
    """Inverse period map M(s): the energy whose orbit has minimal period s.

    Solves F(w) = s by a bracketed root find in w, then maps w to the energy
    through ``phi_map``.  Working in w keeps full relative accuracy near the
    s = 2*pi endpoint, where the energy vanishes like |s - 2*pi|^(2/(p-1)).
    M(2*pi) = 0 exactly.  Minus-sign inversion is capped at the energy
    separatrix_energy(p) - SEPARATRIX_MARGIN; periods beyond the cap raise a
    range error.
    """
    p = check_exponent(p)
    s = float(s)
    if not math.isfinite(s) or s <= 0.0:
        raise ValueError(f"period must be finite and > 0, got {s}")
    if abs(s - TWO_PI) <= _ENDPOINT_EPS:
        return 0.0

    def f(w: float) -> float:
        return f_value(sign, p, w, abs_tol=abs_tol, rel_tol=rel_tol) - s

    if sign is Sign.PLUS:
        if s > TWO_PI:
            raise ValueError(f"plus-sign periods lie in (0, 2*pi]; got s = {s}")
        # F decreases from 2*pi to 0: expand the bracket until F(w_hi) < s.
        w_hi = 1.0
        while f(w_hi) > 0.0:
            w_hi *= 4.0
            if w_hi > 1e30:
                raise RuntimeError(f"failed to bracket the period {s}")
    else:
        if s < TWO_PI:
            raise ValueError(f"minus-sign periods lie in [2*pi, inf); got s = {s}")
        e_cap = separatrix_energy(p) - SEPARATRIX_MARGIN
        w_hi = _w_of_energy(Sign.MINUS, p, e_cap)
        if f(w_hi) < 0.0:
            raise ValueError(
                f"period s = {s} exceeds the near-separatrix cap "
                f"L(e* - {SEPARATRIX_MARGIN}) = {f(w_hi) + s}"
            )
    w_star = brentq(f, 0.0, w_hi, xtol=1e-300, rtol=_BRENTQ_RTOL, maxiter=200)
    return phi_map(sign, p, w_star)


@dataclass(frozen=True)
class PeriodMap:
    """Bundled forward/inverse period map for one oscillator family.

    ``forward`` is e -> L(e); ``inverse`` is s -> M(s).  The valid period
    range is (0, 2*pi] for the plus sign and [2*pi, inf) for minus (the
    latter truncated just below the separatrix).
    """

    sign: Sign
    p: float
    abs_tol: float = ABS_TOL
    rel_tol: float = REL_TOL

    def forward(self, e: float) -> float:
        return period(self.sign, self.p, e, abs_tol=self.abs_tol, rel_tol=self.rel_tol)

    def inverse(self, s: float) -> float:
        return invert_period(self.sign, self.p, s, abs_tol=self.abs_tol, rel_tol=self.rel_tol)

    @property
    def energy_cap(self) -> float:
        if self.sign is Sign.MINUS:
            return separatrix_energy(self.p) - SEPARATRIX_MARGIN
        return math.inf

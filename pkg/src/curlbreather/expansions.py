"""Leading-order behavior of the inverse period map near s = 2*pi.

With alpha_tilde = 1/|F'(0)| and alpha = ((p+1)/2)^(2/(p-1)) *
alpha_tilde^(2/(p-1)), the inverse period map and its square root satisfy,
to leading order in x = |s - 2*pi|,

    M(s)        ~ alpha x^(2/(p-1))
    M'(s)       ~ -/+ 2 alpha / (p-1) x^((3-p)/(p-1))
    M''(s)      ~ 2 alpha (3-p) / (p-1)^2 x^((4-2p)/(p-1))
    sqrt(M)(s)  ~ sqrt(alpha) x^(1/(p-1))
    sqrt(M)'(s) ~ -/+ sqrt(alpha) / (p-1) x^((2-p)/(p-1))
    sqrt(M)''(s)~ sqrt(alpha) (2-p) / (p-1)^2 x^((3-2p)/(p-1))

where the upper sign of -/+ applies to the plus oscillator (s < 2*pi) and
the lower sign to minus (s > 2*pi).  alpha is the same constant for both
signs.  ``validate_expansion`` confirms the exponent and prefactor against
the numerically inverted period map on a near-endpoint grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .common import TWO_PI, Sign, check_exponent
from . import phase_plane


@dataclass(frozen=True)
class ExpansionCoefficients:
    sign: Sign
    p: float
    alpha: float
    alpha_tilde: float
    beta_tilde: float


def compute_constants(sign: Sign, p: float) -> ExpansionCoefficients:
    """Expansion constants from the w-derivatives of the period quadrature at 0."""
    p = check_exponent(p)
    fp0 = phase_plane.f_prime(sign, p, 0.0)
    alpha_tilde = 1.0 / abs(fp0)
    beta_tilde = phase_plane.f_second(sign, p, 0.0)
    alpha = (0.5 * (p + 1.0)) ** (2.0 / (p - 1.0)) * alpha_tilde ** (2.0 / (p - 1.0))
    return ExpansionCoefficients(sign=sign, p=p, alpha=alpha, alpha_tilde=alpha_tilde, beta_tilde=beta_tilde)


@dataclass(frozen=True)
class LeadingOrder:
    """Leading terms of M, sqrt(M) and their s-derivatives at one period s."""

    m: float
    m_prime: float
    m_second: float
    sqrt_m: float
    sqrt_m_prime: float
    sqrt_m_second: float


def _offset(sign: Sign, s: float) -> float:
    x = TWO_PI - s if sign is Sign.PLUS else s - TWO_PI
    if x <= 0.0:
        raise ValueError(
            f"period s = {s} is on the wrong side of 2*pi for the {sign.value} oscillator"
        )
    return x


def leading_order(sign: Sign, p: float, s: float, coeffs: ExpansionCoefficients | None = None) -> LeadingOrder:
    """Evaluate the six leading-order terms at period s near 2*pi."""
    p = check_exponent(p)
    if coeffs is None:
        coeffs = compute_constants(sign, p)
    x = _offset(sign, s)
    alpha = coeffs.alpha
    q = p - 1.0
    # d|s - 2*pi|/ds is -1 for plus (x = 2*pi - s) and +1 for minus.
    ds = -1.0 if sign is Sign.PLUS else 1.0
    return LeadingOrder(
        m=alpha * x ** (2.0 / q),
        m_prime=ds * 2.0 * alpha / q * x ** ((3.0 - p) / q),
        m_second=2.0 * alpha * (3.0 - p) / q**2 * x ** ((4.0 - 2.0 * p) / q),
        sqrt_m=math.sqrt(alpha) * x ** (1.0 / q),
        sqrt_m_prime=ds * math.sqrt(alpha) / q * x ** ((2.0 - p) / q),
        sqrt_m_second=math.sqrt(alpha) * (2.0 - p) / q**2 * x ** ((3.0 - 2.0 * p) / q),
    )


@dataclass(frozen=True)
class ExpansionFitReport:
    sign: Sign
    p: float
    alpha: float
    expected_exponent: float
    fitted_exponent: float
    fitted_prefactor: float
    max_rel_dev: float
    m_prime_max_rel_dev: float
    exponent_ok: bool
    prefactor_ok: bool
    n_points: int = 0
    offsets: tuple = field(default=(), repr=False)

    def to_dict(self) -> dict:
        return {
            "sign": self.sign.value,
            "p": self.p,
            "alpha": self.alpha,
            "expected_exponent": self.expected_exponent,
            "fitted_exponent": self.fitted_exponent,
            "fitted_prefactor": self.fitted_prefactor,
            "max_rel_dev": self.max_rel_dev,
            "m_prime_max_rel_dev": self.m_prime_max_rel_dev,
            "exponent_ok": self.exponent_ok,
            "prefactor_ok": self.prefactor_ok,
            "n_points": self.n_points,
        }


def default_s_grid(sign: Sign, n: int = 30, lo: float = 1e-6, hi: float = 1e-2) -> np.ndarray:
    """Geometrically spaced periods with |s - 2*pi| in [lo, hi]."""
    x = np.geomspace(lo, hi, n)
    return TWO_PI - x if sign is Sign.PLUS else TWO_PI + x


def validate_expansion(
    sign: Sign,
    p: float,
    s_grid: np.ndarray | None = None,
    *,
    exponent_rtol: float = 0.01,
    prefactor_rtol: float = 0.02,
) -> ExpansionFitReport:
    """Fit log M against log |s - 2*pi| and compare with the predicted law.

    Also differentiates the numerical M by small centered steps at the two
    largest offsets and compares with the leading-order M'.
    """
    p = check_exponent(p)
    coeffs = compute_constants(sign, p)
    if s_grid is None:
        s_grid = default_s_grid(sign)
    s_grid = np.asarray(s_grid, dtype=float)
    x = np.array([_offset(sign, s) for s in s_grid])
    m = np.array([phase_plane.invert_period(sign, p, s) for s in s_grid])
    if np.any(m <= 0.0):
        raise ValueError("expansion grid must exclude the endpoint s = 2*pi")
    slope, intercept = np.polyfit(np.log(x), np.log(m), 1)
    fitted_prefactor = math.exp(intercept)
    expected = 2.0 / (p - 1.0)
    lead = np.array([leading_order(sign, p, s, coeffs).m for s in s_grid])
    max_rel_dev = float(np.max(np.abs(m - lead) / lead))

    # Centered-difference check of M' at the coarse end of the grid, where
    # the finite-difference step is safely above rounding noise.
    mp_devs = []
    for s in np.sort(s_grid)[-3:] if sign is Sign.MINUS else np.sort(s_grid)[:3]:
        d = 0.02 * _offset(sign, s)
        fd = (
            phase_plane.invert_period(sign, p, s + d)
            - phase_plane.invert_period(sign, p, s - d)
        ) / (2.0 * d)
        pred = leading_order(sign, p, s, coeffs).m_prime
        mp_devs.append(abs(fd - pred) / abs(pred))
    m_prime_max_rel_dev = float(max(mp_devs))

    return ExpansionFitReport(
        sign=sign,
        p=p,
        alpha=coeffs.alpha,
        expected_exponent=expected,
        fitted_exponent=float(slope),
        fitted_prefactor=fitted_prefactor,
        max_rel_dev=max_rel_dev,
        m_prime_max_rel_dev=m_prime_max_rel_dev,
        exponent_ok=bool(abs(slope - expected) <= exponent_rtol * expected),
        prefactor_ok=bool(abs(fitted_prefactor - coeffs.alpha) <= prefactor_rtol * coeffs.alpha),
        n_points=len(s_grid),
        offsets=tuple(x),
    )

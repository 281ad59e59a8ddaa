"""Finite-difference verification of constructed breathers.

Everything here checks solutions through a route independent of how they
were built: centered second differences in time for the reduced ODE, a
full centered stencil for curl curl (through the identity curl curl U =
grad div U - Laplacian U, exact for C^2 fields), and log-log least-squares
fits of residual norms against step size.  A correct solution shows
residuals that are pure truncation error, i.e. fitted order close to 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .breather import BreatherSpec, complex_amplitude, monochromatic_field
from .coefficients import CoefficientProfile
from .common import TWO_PI, Sign, abs_power, odd_power
from .errors import FitError
from .symbolic import RadialFunction

ORDER_WINDOW = (1.8, 2.2)

_EYE = np.eye(3)


def _check_stencil(x: np.ndarray, h: float) -> None:
    if h < 1e-4:
        raise ValueError(f"finite-difference step {h} is below the rounding-noise floor 1e-4")
    if np.linalg.norm(x) <= 2.0 * h:
        raise ValueError(
            f"stencil of width 2h = {2 * h} around |x| = {np.linalg.norm(x)} touches the origin"
        )


def second_time_difference(field, x: np.ndarray, t: float, k: float) -> np.ndarray:
    return (field(x, t + k) - 2.0 * field(x, t) + field(x, t - k)) / (k * k)


def curl_fd(field, x: np.ndarray, t: float, h: float) -> np.ndarray:
    """Centered-difference curl of a vector field at (x, t)."""
    x = np.asarray(x, dtype=float)
    _check_stencil(x, h)
    d = [(field(x + h * _EYE[j], t) - field(x - h * _EYE[j], t)) / (2.0 * h) for j in range(3)]
    return np.array(
        [d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]]
    )


def curl_curl_fd(field, x: np.ndarray, t: float, h: float) -> np.ndarray:
    """Centered-difference curl curl via grad(div U) - Laplacian U.

    Second-order accurate; exact (up to rounding) for fields with quadratic
    components.  Works for real or complex valued fields.
    """
    x = np.asarray(x, dtype=float)
    _check_stencil(x, h)
    u0 = field(x, t)
    up = [field(x + h * _EYE[j], t) for j in range(3)]
    um = [field(x - h * _EYE[j], t) for j in range(3)]
    dd = [(up[j] - 2.0 * u0 + um[j]) / (h * h) for j in range(3)]
    mixed = {}
    for i in range(3):
        for j in range(i + 1, 3):
            upp = field(x + h * _EYE[i] + h * _EYE[j], t)
            upm = field(x + h * _EYE[i] - h * _EYE[j], t)
            ump = field(x - h * _EYE[i] + h * _EYE[j], t)
            umm = field(x - h * _EYE[i] - h * _EYE[j], t)
            mixed[(i, j)] = (upp - upm - ump + umm) / (4.0 * h * h)
    out = np.zeros_like(u0)
    for i in range(3):
        acc = out[i]
        for j in range(3):
            if j == i:
                continue
            pair = (i, j) if i < j else (j, i)
            acc = acc + mixed[pair][j] - dd[j][i]
        out[i] = acc
    return out


def reduced_residual(spec: BreatherSpec, r: float, t: float, k: float) -> float:
    """Residual of s psi_tt + q psi +/- V |psi|^(p-1) psi with FD time derivative."""
    if k < 1e-4:
        raise ValueError(f"time step {k} is below the rounding-noise floor 1e-4")
    profile = spec.profile
    psi0 = spec.psi(r, t)
    d2 = (spec.psi(r, t + k) - 2.0 * psi0 + spec.psi(r, t - k)) / (k * k)
    return (
        profile.s(r) * d2
        + profile.q(r) * psi0
        + profile.sign.factor * profile.V(r) * odd_power(psi0, profile.p)
    )


def full_pde_residual(
    spec: BreatherSpec, x: np.ndarray, t: float, h: float, k: float
) -> np.ndarray:
    """Residual vector of s U_tt + curl curl U + q U +/- V |U|^(p-1) U."""
    x = np.asarray(x, dtype=float)
    profile = spec.profile
    r = float(np.linalg.norm(x))
    u0 = spec.field(x, t)
    utt = second_time_difference(spec.field, x, t, k)
    cc = curl_curl_fd(spec.field, x, t, h)
    mag = float(np.linalg.norm(u0))
    return (
        profile.s(r) * utt
        + cc
        + profile.q(r) * u0
        + profile.sign.factor * profile.V(r) * abs_power(mag, profile.p - 1.0) * u0
    )


def monochromatic_residual(
    profile: CoefficientProfile, x: np.ndarray, t: float, h: float
) -> np.ndarray:
    """PDE residual of the complex monochromatic breather.

    The time derivative is analytic (a -(2*pi/T)^2 factor); only space is
    finite-differenced, so the residual is exactly the curl curl truncation
    error of a gradient field.
    """
    x = np.asarray(x, dtype=float)
    U = monochromatic_field(profile)
    r = float(np.linalg.norm(x))
    u0 = U(x, t)
    omega2 = (TWO_PI / profile.T) ** 2
    cc = curl_curl_fd(U, x, t, h)
    phi = complex_amplitude(profile, r)
    return (
        -omega2 * profile.s(r) * u0
        + cc
        + profile.q(r) * u0
        + profile.sign.factor * profile.V(r) * abs_power(phi, profile.p - 1.0) * u0
    )


def algebraic_residual(profile: CoefficientProfile, r: float) -> float:
    """Relative residual of -(2*pi/T)^2 s + q +/- V phi^(p-1) at radius r."""
    omega2 = (TWO_PI / profile.T) ** 2
    s, q, V = profile.s(r), profile.q(r), profile.V(r)
    phi = complex_amplitude(profile, r)
    res = -omega2 * s + q + profile.sign.factor * V * abs_power(phi, profile.p - 1.0)
    scale = omega2 * s + q + V * abs_power(phi, profile.p - 1.0)
    return abs(res) / scale


def convergence_order(steps, norms) -> float:
    """Least-squares slope of log(norm) against log(step)."""
    steps = np.asarray(steps, dtype=float)
    norms = np.asarray(norms, dtype=float)
    if len(steps) < 2:
        raise FitError("need at least two step sizes to fit a convergence order")
    if np.any(norms <= 0.0):
        raise FitError("residual norms must be positive to fit an order")
    return float(np.polyfit(np.log(steps), np.log(norms), 1)[0])


@dataclass(frozen=True)
class ResidualReport:
    kind: str
    steps: tuple
    max_norms: tuple
    l2_norms: tuple
    order: float
    n_points: int
    window: tuple = ORDER_WINDOW

    @property
    def passed(self) -> bool:
        return self.window[0] <= self.order <= self.window[1]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "steps": list(self.steps),
            "max_norms": list(self.max_norms),
            "l2_norms": list(self.l2_norms),
            "order": self.order,
            "order_window": list(self.window),
            "n_points": self.n_points,
            "passed": self.passed,
        }


def _norms(values: np.ndarray) -> tuple:
    flat = np.abs(np.asarray(values, dtype=float)).ravel()
    return float(np.max(flat)), float(math.sqrt(np.mean(flat**2)))


def _sweep(kind: str, steps, eval_at_step, n_points: int) -> ResidualReport:
    steps = tuple(float(s) for s in steps)
    maxs, l2s = [], []
    for s in steps:
        m, l2 = _norms(eval_at_step(s))
        maxs.append(m)
        l2s.append(l2)
    return ResidualReport(
        kind=kind,
        steps=steps,
        max_norms=tuple(maxs),
        l2_norms=tuple(l2s),
        order=convergence_order(steps, maxs),
        n_points=n_points,
    )


def reduced_residual_sweep(spec: BreatherSpec, points, ks) -> ResidualReport:
    """points: iterable of (r, t); ks: decreasing FD time steps."""
    pts = [(float(r), float(t)) for r, t in points]

    def at_step(k):
        return [reduced_residual(spec, r, t, k) for r, t in pts]

    return _sweep("reduced_ode", ks, at_step, len(pts))


def full_residual_sweep(spec: BreatherSpec, points, hs) -> ResidualReport:
    """points: iterable of (x, t); hs: decreasing steps used for both h and k."""
    pts = [(np.asarray(x, dtype=float), float(t)) for x, t in points]

    def at_step(h):
        return [full_pde_residual(spec, x, t, h, h) for x, t in pts]

    return _sweep("full_pde", hs, at_step, len(pts))


def curl_sweep(spec: BreatherSpec, points, hs) -> ResidualReport:
    """FD curl magnitude of the gradient-shaped field; converges to 0 at order 2."""
    pts = [(np.asarray(x, dtype=float), float(t)) for x, t in points]

    def at_step(h):
        return [curl_fd(spec.field, x, t, h) for x, t in pts]

    return _sweep("curl", hs, at_step, len(pts))


def curl_curl_sweep(spec: BreatherSpec, points, hs) -> ResidualReport:
    """FD curl curl of the field against its exact value 0."""
    pts = [(np.asarray(x, dtype=float), float(t)) for x, t in points]

    def at_step(h):
        return [curl_curl_fd(spec.field, x, t, h) for x, t in pts]

    return _sweep("curl_curl", hs, at_step, len(pts))


def monochromatic_sweep(profile: CoefficientProfile, points, hs) -> ResidualReport:
    pts = [(np.asarray(x, dtype=float), float(t)) for x, t in points]

    def at_step(h):
        return [np.abs(monochromatic_residual(profile, x, t, h)) for x, t in pts]

    return _sweep("monochromatic", hs, at_step, len(pts))


def random_spacetime_points(
    rng: np.random.Generator,
    n: int,
    t_max: float,
    r_range: tuple = (0.5, 2.5),
) -> list:
    """n points (x, t) with |x| in r_range and t in [0, t_max)."""
    pts = []
    for _ in range(n):
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        r = rng.uniform(*r_range)
        pts.append((r * v, rng.uniform(0.0, t_max)))
    return pts


# Explicit derivative formulas for W(x) = phi(|x|) x/|x|, validated against
# centered differences: the Jacobian is
#   dW_i/dx_j = (phi' - phi/r) x_i x_j / r^2 + (phi/r) delta_ij
# and the second derivatives are
#   d2W_i/dx_j dx_k = (phi'' - 3 (phi' r - phi)/r^2) x_i x_j x_k / r^3
#                   + ((phi' r - phi)/r^2) (delta_ik x_j + delta_jk x_i + delta_ij x_k) / r.
# As r -> 0 the coefficient (phi' r - phi)/r^2 tends to phi''(0)/2 and
# (phi'' - 3 (phi' r - phi)/r^2) tends to -phi''(0)/2, so W extends to a C^2
# field exactly when phi(0) = phi''(0) = 0.


def radial_vector_field(phi: RadialFunction):
    def W(x: np.ndarray, t: float = 0.0) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        r = float(np.linalg.norm(x))
        if r == 0.0:
            return np.zeros(3)
        return phi(r) * x / r

    return W


def radial_field_jacobian(phi: RadialFunction, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    r = float(np.linalg.norm(x))
    return (phi.d1(r) - phi(r) / r) * np.outer(x, x) / r**2 + phi(r) / r * _EYE


def radial_field_hessian(phi: RadialFunction, x: np.ndarray) -> np.ndarray:
    """H[i, j, k] = d^2 W_i / dx_j dx_k from the closed-form expressions."""
    x = np.asarray(x, dtype=float)
    r = float(np.linalg.norm(x))
    a = (phi.d1(r) * r - phi(r)) / r**2
    b = phi.d2(r) - 3.0 * a
    H = np.empty((3, 3, 3))
    for i in range(3):
        for j in range(3):
            for k in range(3):
                H[i, j, k] = (
                    b * x[i] * x[j] * x[k] / r**3
                    + a * (_EYE[i, k] * x[j] + _EYE[j, k] * x[i] + _EYE[i, j] * x[k]) / r
                )
    return H


def origin_coefficients(phi: RadialFunction, r: float) -> tuple:
    """The two bracketed coefficients ((phi' r - phi)/r^2, phi'' - 3(...)/r^2)."""
    a = (phi.d1(r) * r - phi(r)) / (r * r)
    return a, phi.d2(r) - 3.0 * a


@dataclass(frozen=True)
class DerivativeCheckReport:
    h: float
    jacobian_error: float
    second_error: float


def closed_form_derivative_check(phi: RadialFunction, x: np.ndarray, h: float) -> DerivativeCheckReport:
    """Max elementwise gap between the closed-form derivatives and FD stencils."""
    x = np.asarray(x, dtype=float)
    _check_stencil(x, h)
    W = radial_vector_field(phi)
    up = [W(x + h * _EYE[j]) for j in range(3)]
    um = [W(x - h * _EYE[j]) for j in range(3)]
    fd_jac = np.stack([(up[j] - um[j]) / (2.0 * h) for j in range(3)], axis=1)
    jac_err = float(np.max(np.abs(fd_jac - radial_field_jacobian(phi, x))))

    u0 = W(x)
    fd_H = np.empty((3, 3, 3))
    for j in range(3):
        fd_H[:, j, j] = (up[j] - 2.0 * u0 + um[j]) / (h * h)
    for j in range(3):
        for k in range(j + 1, 3):
            cross = (
                W(x + h * _EYE[j] + h * _EYE[k])
                - W(x + h * _EYE[j] - h * _EYE[k])
                - W(x - h * _EYE[j] + h * _EYE[k])
                + W(x - h * _EYE[j] - h * _EYE[k])
            ) / (4.0 * h * h)
            fd_H[:, j, k] = cross
            fd_H[:, k, j] = cross
    second_err = float(np.max(np.abs(fd_H - radial_field_hessian(phi, x))))
    return DerivativeCheckReport(h=float(h), jacobian_error=jac_err, second_error=second_err)

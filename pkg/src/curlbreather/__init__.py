"""Breather construction for semilinear curl-curl wave equations.

The package builds time-periodic, spatially localized vector fields
U(x, t) = psi(|x|, t) x/|x| solving

    s(x) U_tt + curl curl U + q(x) U +/- V(x) |U|^(p-1) U = 0

for radially symmetric coefficients: the gradient-field ansatz removes the
curl-curl term, the remaining ODE family is solved by rescaled periodic
orbits of the model oscillators y'' + y +/- |y|^(p-1) y = 0, and matching
the orbit period to the driving period fixes the amplitude at every radius.
"""

from .common import Sign
from .phase_plane import (
    PeriodMap,
    amplitude,
    f_prime,
    f_second,
    f_value,
    first_integral,
    invert_period,
    kappa,
    period,
    phi_map,
    separatrix_energy,
)
from .expansions import ExpansionCoefficients, compute_constants, leading_order, validate_expansion
from .oscillator import family_eval, integrate, leapfrog, orbit, orbit_samples, return_map_period
from .coefficients import (
    CoefficientProfile,
    HypothesisReport,
    builtin_profile,
    check_hypotheses,
    default_radius_grid,
    g_of_r,
    load_profile,
)
from .symbolic import RadialFunction
from .errors import FitError, HypothesisViolation, ProfileConfigError
from .breather import (
    BreatherSpec,
    build_breather,
    complex_amplitude,
    decay_rate,
    monochromatic_field,
)
from . import verifier

__version__ = "0.1.0"

__all__ = [
    "Sign",
    "PeriodMap",
    "amplitude",
    "f_value",
    "f_prime",
    "f_second",
    "first_integral",
    "invert_period",
    "kappa",
    "period",
    "phi_map",
    "separatrix_energy",
    "ExpansionCoefficients",
    "compute_constants",
    "leading_order",
    "validate_expansion",
    "family_eval",
    "integrate",
    "leapfrog",
    "orbit",
    "orbit_samples",
    "return_map_period",
    "CoefficientProfile",
    "HypothesisReport",
    "builtin_profile",
    "check_hypotheses",
    "default_radius_grid",
    "g_of_r",
    "load_profile",
    "RadialFunction",
    "FitError",
    "HypothesisViolation",
    "ProfileConfigError",
    "BreatherSpec",
    "build_breather",
    "complex_amplitude",
    "decay_rate",
    "monochromatic_field",
    "verifier",
]

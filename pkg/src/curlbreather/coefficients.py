"""Radial coefficient profiles and the structural hypotheses they must satisfy.

A profile consists of radial coefficients s, q, V (all positive, C^2, with
vanishing first derivative at 0), an exponent p > 1, a nonlinearity sign,
and a decay rate delta.  The driving period is T = 2*pi sqrt(s(0)/q(0)) and
the matching function is g(r) = T sqrt(q(r)/s(r)), so g(0) = 2*pi always.

The construction needs:

    H1  (plus)   g(r) < 2*pi for all r != 0
    H1' (minus)  g(r) > 2*pi for all r != 0
    H2           |2*pi - g(r)|^(1/(p-1)) -> 0 in the C^2 sense at r = 0
    H3           sup_r |2*pi - g(r)| e^(delta (p-1) r) < infinity
    H4           sup_r q(r)/V(r) < infinity

``check_hypotheses`` evaluates desk-scale renderings of these conditions on
a radius grid and reports failures as entries, never exceptions.

The builtin family keeps s = V = 1 and prescribes the period gap directly:
eps(r) = a r^(2m) exp(-beta r^2) / (1 + r^(2m)), g(r) = 2*pi -/+ eps(r),
q(r) = (g(r)/(2*pi))^2.  For m > p - 1 the gap vanishes fast enough at the
origin for H2; the Gaussian factor provides H3 at any delta over a bounded
window.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import sympy as sp

from .common import TWO_PI, Sign, abs_power, check_exponent
from .errors import ProfileConfigError
from .symbolic import RadialFunction, _R

# |2*pi - g| below this is numerically indistinguishable from zero.
MARGIN_FLOOR = 1e-13

H2_RADII = (1e-1, 1e-2, 1e-3, 1e-4)
H2_LIMIT = 1e-3

_PROFILE_KEYS = {"p", "sign", "family", "params", "delta"}
_BUILTIN_KEYS = {"a", "m", "beta", "branch"}
_CUSTOM_KEYS = {"s", "q", "V"}


@dataclass(frozen=True)
class CoefficientProfile:
    p: float
    sign: Sign
    s: RadialFunction
    q: RadialFunction
    V: RadialFunction
    delta: float
    family: str = "custom"
    params: dict = field(default_factory=dict, compare=False)

    @property
    def T(self) -> float:
        return TWO_PI * math.sqrt(self.s(0.0) / self.q(0.0))

    def g(self, r: float) -> float:
        return self.T * math.sqrt(self.q(r) / self.s(r))

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "sign": self.sign.value,
            "family": self.family,
            "params": dict(self.params),
            "delta": self.delta,
        }


def g_of_r(profile: CoefficientProfile, r: float) -> float:
    """Rescaled driving period g(r) = T sqrt(q(r)/s(r))."""
    return profile.g(r)


def builtin_profile(
    p: float,
    sign: Sign,
    a: float = 1.0,
    m: int = 3,
    beta: float = 1.0,
    delta: float = 1.0,
    branch: Sign | None = None,
) -> CoefficientProfile:
    """Built-in coefficient family with s = V = 1 and a prescribed period gap.

    ``branch`` selects which side of 2*pi the gap sits on and defaults to the
    nonlinearity sign; passing a mismatched branch builds a profile whose
    hypothesis check fails, which is useful for exercising failure paths.
    a = 0 is allowed and degenerates to g = 2*pi (caught by the H1 check),
    as is m <= p - 1 (caught by the H2 check).
    """
    p = check_exponent(p)
    a = float(a)
    beta = float(beta)
    delta = float(delta)
    if not 0.0 <= a < TWO_PI:
        raise ProfileConfigError(f"builtin amplitude must satisfy 0 <= a < 2*pi, got {a}")
    if int(m) != m or m < 1:
        raise ProfileConfigError(f"builtin exponent m must be an integer >= 1, got {m}")
    m = int(m)
    if beta <= 0.0:
        raise ProfileConfigError(f"builtin Gaussian rate beta must be > 0, got {beta}")
    if delta <= 0.0:
        raise ProfileConfigError(f"decay rate delta must be > 0, got {delta}")
    branch = sign if branch is None else branch

    eps = a * _R ** (2 * m) * sp.exp(-beta * _R**2) / (1 + _R ** (2 * m))
    g = 2 * sp.pi - eps if branch is Sign.PLUS else 2 * sp.pi + eps
    q = (g / (2 * sp.pi)) ** 2
    params = {"a": a, "m": m, "beta": beta}
    if branch is not sign:
        params["branch"] = branch.value
    return CoefficientProfile(
        p=p,
        sign=sign,
        s=RadialFunction.from_expression(sp.Integer(1)),
        q=RadialFunction.from_expression(q),
        V=RadialFunction.from_expression(sp.Integer(1)),
        delta=delta,
        family="builtin",
        params=params,
    )


def _custom_profile(p: float, sign: Sign, params: dict, delta: float) -> CoefficientProfile:
    missing = _CUSTOM_KEYS - set(params)
    if missing:
        raise ProfileConfigError(f"custom profile params missing {sorted(missing)}")
    unknown = set(params) - _CUSTOM_KEYS
    if unknown:
        raise ProfileConfigError(f"custom profile params has unknown keys {sorted(unknown)}")
    funcs = {name: RadialFunction.from_expression(params[name]) for name in ("s", "q", "V")}
    probe = np.concatenate([[0.0], np.geomspace(1e-3, 30.0, 40)])
    for name, fn in funcs.items():
        for r in probe:
            try:
                val = fn(float(r))
            except (ZeroDivisionError, ValueError, OverflowError) as exc:
                raise ProfileConfigError(f"coefficient {name} fails to evaluate at r = {r}: {exc}")
            if not math.isfinite(val) or val <= 0.0:
                raise ProfileConfigError(f"coefficient {name} must be positive; {name}({r}) = {val}")
        d10 = fn.d1(0.0)
        if abs(d10) > 1e-12 * max(1.0, abs(fn(0.0))):
            raise ProfileConfigError(
                f"coefficient {name} is not radially C^2: {name}'(0) = {d10} != 0"
            )
    return CoefficientProfile(
        p=check_exponent(p),
        sign=sign,
        s=funcs["s"],
        q=funcs["q"],
        V=funcs["V"],
        delta=float(delta),
        family="custom",
        params={k: str(params[k]) for k in ("s", "q", "V")},
    )


def load_profile(source) -> CoefficientProfile:
    """Build a profile from a JSON file path or an already-parsed dict.

    Schema: {"p": real, "sign": "plus"|"minus", "family": "builtin"|"custom",
    "params": {...}, "delta": real}.  Unknown fields are rejected.
    """
    if isinstance(source, (str, Path)):
        try:
            data = json.loads(Path(source).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ProfileConfigError(f"cannot read profile {source}: {exc}") from None
    elif isinstance(source, dict):
        data = source
    else:
        raise ProfileConfigError(f"profile source must be a path or dict, got {type(source)}")

    if not isinstance(data, dict):
        raise ProfileConfigError("profile JSON must be an object")
    unknown = set(data) - _PROFILE_KEYS
    if unknown:
        raise ProfileConfigError(f"profile has unknown fields {sorted(unknown)}")
    missing = _PROFILE_KEYS - set(data)
    if missing:
        raise ProfileConfigError(f"profile is missing fields {sorted(missing)}")
    try:
        p = float(data["p"])
        delta = float(data["delta"])
    except (TypeError, ValueError):
        raise ProfileConfigError("profile fields 'p' and 'delta' must be numbers") from None
    sign = Sign.from_str(str(data["sign"]))
    params = data["params"]
    if not isinstance(params, dict):
        raise ProfileConfigError("profile field 'params' must be an object")
    family = data["family"]
    if family == "builtin":
        unknown = set(params) - _BUILTIN_KEYS
        if unknown:
            raise ProfileConfigError(f"builtin params has unknown keys {sorted(unknown)}")
        branch = Sign.from_str(params["branch"]) if "branch" in params else None
        return builtin_profile(
            p,
            sign,
            a=params.get("a", 1.0),
            m=params.get("m", 3),
            beta=params.get("beta", 1.0),
            delta=delta,
            branch=branch,
        )
    if family == "custom":
        return _custom_profile(p, sign, params, delta)
    raise ProfileConfigError(f"profile family must be 'builtin' or 'custom', got {family!r}")


def default_radius_grid(profile: CoefficientProfile) -> np.ndarray:
    """Check grid covering [0, max(20/delta, 8)] with a refined origin region."""
    r_max = max(20.0 / profile.delta, 8.0)
    return np.unique(
        np.concatenate([[0.0], np.geomspace(1e-6, 1.0, 25), np.linspace(1.0, r_max, 96)])
    )


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    passed: bool
    detail: str
    witness_radius: float | None = None
    witness_value: float | None = None

    def __post_init__(self):
        # numpy scalars sneak in from grid comparisons; keep the record JSON-clean
        object.__setattr__(self, "passed", bool(self.passed))
        if self.witness_radius is not None:
            object.__setattr__(self, "witness_radius", float(self.witness_radius))
        if self.witness_value is not None:
            object.__setattr__(self, "witness_value", float(self.witness_value))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "witness_radius": self.witness_radius,
            "witness_value": self.witness_value,
        }


@dataclass(frozen=True)
class HypothesisReport:
    profile: dict
    checks: tuple

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list:
        return [c for c in self.checks if not c.passed]

    def check(self, name: str) -> HypothesisCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "profile": self.profile,
            "all_passed": self.all_passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def _signed_margin(profile: CoefficientProfile, r: float) -> float:
    """2*pi - g (plus) or g - 2*pi (minus): positive when H1/H1' holds at r."""
    gap = TWO_PI - profile.g(r)
    return gap if profile.sign is Sign.PLUS else -gap


def _monotone_vanishing(values: list, limit: float) -> tuple:
    """Strict decrease over nonzero entries, zeros only as a suffix, tail < limit."""
    seen_zero = False
    prev = None
    for v in values:
        if v == 0.0:
            seen_zero = True
            continue
        if seen_zero:
            return False, "nonzero finite difference after an underflowed one"
        if prev is not None and v >= prev:
            return False, "finite differences do not decrease toward the origin"
        prev = v
    if values and values[-1] >= limit:
        return False, f"final value {values[-1]:.3e} is not below {limit:.0e}"
    return True, "vanishes toward r = 0"


def check_hypotheses(
    profile: CoefficientProfile,
    r_grid: np.ndarray | None = None,
    *,
    h2_radii: tuple = H2_RADII,
    h2_limit: float = H2_LIMIT,
    floor: float = MARGIN_FLOOR,
) -> HypothesisReport:
    """Evaluate H1 (or H1'), H2, H3, H4 on a radius grid.

    Margins |2*pi - g| at or below ``floor`` cannot be distinguished from
    zero in double precision; such radii count as unresolved.  H1 requires a
    positive margin at every resolved radius, no wrong-sided margin anywhere,
    and unresolved radii only below the first resolved radius (the origin
    roll-off demanded by H2) or beyond the last one (decay below the floor).
    """
    if r_grid is None:
        r_grid = default_radius_grid(profile)
    r_grid = np.unique(np.asarray(r_grid, dtype=float))
    if r_grid[0] < 0.0:
        raise ValueError("radius grid must be nonnegative")
    p = profile.p
    checks = []

    pos = r_grid[r_grid > 0.0]
    margins = np.array([_signed_margin(profile, r) for r in pos])
    resolved = margins > floor
    wrong = margins < -floor
    name1 = "H1" if profile.sign is Sign.PLUS else "H1'"
    side = "below" if profile.sign is Sign.PLUS else "above"
    if np.any(wrong):
        i = int(np.argmin(margins))
        h1 = HypothesisCheck(
            name1,
            False,
            f"g(r) is on the wrong side of 2*pi (not {side})",
            witness_radius=float(pos[i]),
            witness_value=float(margins[i]),
        )
    elif not np.any(resolved):
        h1 = HypothesisCheck(
            name1,
            False,
            "g(r) is indistinguishable from 2*pi at every radius (gap degenerate)",
            witness_radius=float(pos[-1]),
            witness_value=0.0,
        )
    else:
        lo = pos[resolved].min()
        hi = pos[resolved].max()
        interior_ties = (~resolved) & (pos > lo) & (pos < hi)
        if np.any(interior_ties):
            i = int(np.nonzero(interior_ties)[0][0])
            h1 = HypothesisCheck(
                name1,
                False,
                "g(r) touches 2*pi strictly inside the resolved range",
                witness_radius=float(pos[i]),
                witness_value=float(margins[i]),
            )
        else:
            i = int(np.argmin(np.where(resolved, margins, np.inf)))
            h1 = HypothesisCheck(
                name1,
                True,
                f"g(r) stays strictly {side} 2*pi on the resolved grid "
                f"(r in [{lo:.3g}, {hi:.3g}])",
                witness_radius=float(pos[i]),
                witness_value=float(margins[i]),
            )
    checks.append(h1)

    # H2: w = |2*pi - g|^(1/(p-1)) and its first two centered differences
    # must sink toward 0 along radii shrinking to 1e-4.
    def w_of(r: float) -> float:
        mu = abs(_signed_margin(profile, r))
        if mu <= floor:
            mu = 0.0
        return abs_power(mu, 1.0 / (p - 1.0))

    w_seq, d1_seq, d2_seq = [], [], []
    for r in h2_radii:
        h = 0.5 * r
        wm, w0, wp = w_of(r - h), w_of(r), w_of(r + h)
        w_seq.append(w0)
        d1_seq.append(abs((wp - wm) / (2.0 * h)))
        d2_seq.append(abs((wp - 2.0 * w0 + wm) / (h * h)))
    h2_ok = True
    h2_details = []
    for label, seq in (("w", w_seq), ("w'", d1_seq), ("w''", d2_seq)):
        ok, why = _monotone_vanishing(seq, h2_limit)
        if not ok:
            h2_ok = False
            h2_details.append(f"{label}: {why}")
    checks.append(
        HypothesisCheck(
            "H2",
            h2_ok,
            "; ".join(h2_details) if h2_details else
            "|2*pi - g|^(1/(p-1)) vanishes to second order at the origin",
            witness_radius=h2_radii[-1],
            witness_value=d2_seq[-1] if h2_ok else max(d1_seq[-1], d2_seq[-1]),
        )
    )

    # H3: least-squares decay rate of log|2*pi - g| over the resolved tail.
    if np.any(resolved):
        hi = pos[resolved].max()
        tail = resolved & (pos >= max(1.0, 0.4 * hi))
    else:
        tail = resolved
    if np.count_nonzero(tail) >= 3:
        slope, _ = np.polyfit(pos[tail], np.log(margins[tail]), 1)
        rate = -slope / (p - 1.0)
        h3 = HypothesisCheck(
            "H3",
            rate >= profile.delta,
            f"fitted tail rate {rate:.4g} vs required delta = {profile.delta:.4g} "
            f"({np.count_nonzero(tail)} tail points)",
            witness_radius=float(pos[tail].max()),
            witness_value=float(rate),
        )
    else:
        h3 = HypothesisCheck(
            "H3",
            False,
            "too few resolved tail points to certify a decay rate",
            witness_radius=float(pos[-1]),
            witness_value=None,
        )
    checks.append(h3)

    ratios = np.array([profile.q(r) / profile.V(r) for r in r_grid])
    i = int(np.argmax(ratios))
    checks.append(
        HypothesisCheck(
            "H4",
            bool(np.all(np.isfinite(ratios))),
            f"sup q/V = {ratios[i]:.6g} on the grid",
            witness_radius=float(r_grid[i]),
            witness_value=float(ratios[i]),
        )
    )

    return HypothesisReport(profile=profile.to_dict(), checks=tuple(checks))

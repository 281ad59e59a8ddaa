"""Shared primitives: nonlinearity sign, odd powers, domain guards."""

from __future__ import annotations

import enum
import math

import numpy as np

TWO_PI = 2.0 * math.pi


class Sign(enum.Enum):
    """Sign of the superlinear term in ``y'' + y +/- |y|^(p-1) y = 0``."""

    PLUS = "plus"
    MINUS = "minus"

    @classmethod
    def from_str(cls, text: str) -> "Sign":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"sign must be 'plus' or 'minus', got {text!r}") from None

    @property
    def factor(self) -> float:
        return 1.0 if self is Sign.PLUS else -1.0


def check_exponent(p: float) -> float:
    p = float(p)
    if not math.isfinite(p) or p <= 1.0:
        raise ValueError(f"exponent p must be finite and > 1, got {p}")
    return p


def odd_power(y, p: float):
    """|y|^(p-1) y for real y or arrays, continuous through y = 0."""
    if np.ndim(y) == 0:
        y = float(y)
        if y == 0.0:
            return 0.0
        return math.copysign(abs(y) ** p, y)
    a = np.abs(y)
    return np.where(a == 0.0, 0.0, np.sign(y) * a**p)


def abs_power(y, q: float):
    """|y|^q with the 0^q = 0 convention for q > 0."""
    if np.ndim(y) == 0:
        y = float(y)
        if y == 0.0:
            return 0.0
        return abs(y) ** q
    a = np.abs(y)
    return np.where(a == 0.0, 0.0, a**q)

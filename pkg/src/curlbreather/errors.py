"""Exception types that the CLI maps onto exit codes."""

from __future__ import annotations


class ProfileConfigError(ValueError):
    """Malformed or out-of-bounds coefficient configuration."""


class HypothesisViolation(RuntimeError):
    """A structural hypothesis on the coefficient profile fails.

    ``hypothesis`` names the violated condition (e.g. "H1", "H2").
    """

    def __init__(self, hypothesis: str, message: str):
        super().__init__(f"({hypothesis}) {message}")
        self.hypothesis = hypothesis


class FitError(RuntimeError):
    """A regression (decay-rate or convergence-order fit) has no usable data."""

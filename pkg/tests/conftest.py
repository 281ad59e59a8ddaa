"""Shared fixtures.

Session scope keeps the per-profile orbit caches warm across test modules,
which matters for the finite-difference sweeps (each new radius costs an
ODE solve).
"""

import pytest

import curlbreather as cb
from curlbreather import Sign


@pytest.fixture(scope="session")
def plus_profile():
    return cb.builtin_profile(3.0, Sign.PLUS)


@pytest.fixture(scope="session")
def minus_profile():
    return cb.builtin_profile(3.0, Sign.MINUS)


@pytest.fixture(scope="session")
def plus_spec(plus_profile):
    return cb.build_breather(plus_profile)


@pytest.fixture(scope="session")
def minus_spec(minus_profile):
    return cb.build_breather(minus_profile)

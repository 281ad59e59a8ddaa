"""Declarative radial coefficient functions: parsing, derivatives, composition."""

import math

import pytest
import sympy as sp

from curlbreather.errors import ProfileConfigError
from curlbreather.symbolic import RadialFunction, constant


class TestParsing:
    def test_accepts_whitelisted_functions(self):
        f = RadialFunction.from_expression("exp(-r**2) * sin(r) + sqrt(1 + r**2)")
        assert math.isfinite(f(2.0))

    def test_rejects_unknown_function(self):
        with pytest.raises(ProfileConfigError, match="unsupported function"):
            RadialFunction.from_expression("bogus(r) + r")

    def test_rejects_unknown_symbol(self):
        with pytest.raises(ProfileConfigError, match="unknown symbols"):
            RadialFunction.from_expression("r + x")

    def test_rejects_malformed_expression(self):
        with pytest.raises(ProfileConfigError):
            RadialFunction.from_expression("r **")

    def test_accepts_numbers_and_passthrough(self):
        assert RadialFunction.from_expression(3)(10.0) == 3.0
        f = RadialFunction.from_expression("1 + r")
        assert RadialFunction.from_expression(f) is f

    def test_accepts_sympy_expression(self):
        r = sp.Symbol("r", nonnegative=True)
        f = RadialFunction.from_expression(sp.exp(-r))
        assert f(1.0) == pytest.approx(math.exp(-1.0), rel=1e-15)


class TestDerivatives:
    def test_first_and_second_derivative(self):
        f = RadialFunction.from_expression("exp(-r**2)")
        r = 0.7
        v = math.exp(-r * r)
        assert f(r) == pytest.approx(v, rel=1e-14)
        assert f.d1(r) == pytest.approx(-2.0 * r * v, rel=1e-14)
        assert f.d2(r) == pytest.approx((4.0 * r * r - 2.0) * v, rel=1e-14)

    def test_derivatives_match_finite_differences(self):
        f = RadialFunction.from_expression("tanh(r) / (1 + r**2)")
        r = 1.3
        h1 = 1e-6
        fd1 = (f(r + h1) - f(r - h1)) / (2 * h1)
        assert f.d1(r) == pytest.approx(fd1, rel=1e-8)
        h2 = 1e-4  # larger step: the second difference cancels badly at 1e-6
        fd2 = (f(r + h2) - 2 * f(r) + f(r - h2)) / h2**2
        assert f.d2(r) == pytest.approx(fd2, rel=1e-4)

    def test_constant(self):
        g = constant(2.5)
        assert g(0.0) == 2.5
        assert g.d1(5.0) == 0.0
        assert g.d2(5.0) == 0.0


class TestComposition:
    def test_sum_evaluates_pointwise(self):
        f = RadialFunction.from_expression("sin(r)")
        g = RadialFunction.from_expression("r**2")
        h = f + g
        assert h(1.2) == pytest.approx(math.sin(1.2) + 1.44, rel=1e-14)
        assert h.d1(1.2) == pytest.approx(math.cos(1.2) + 2.4, rel=1e-14)

    def test_sum_with_number(self):
        f = RadialFunction.from_expression("cos(r)")
        h = f + constant(1.0)
        assert h(0.0) == pytest.approx(2.0, abs=1e-15)

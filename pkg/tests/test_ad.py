import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from curvint import ad


def f(x, y, z):
    return ad.sin(x * y) / (1.0 + z * z) + ad.cosh(z) * y**3 - ad.sqrt(2.0 + x * x)


def f_float(v):
    x, y, z = v
    return math.sin(x * y) / (1 + z * z) + math.cosh(z) * y**3 - math.sqrt(2 + x * x)


def central_diff(fn, v, h=1e-6):
    g = np.zeros(len(v))
    for i in range(len(v)):
        e = np.zeros(len(v))
        e[i] = h
        g[i] = (fn(v + e) - fn(v - e)) / (2 * h)
    return g


pt = st.lists(st.floats(-1.5, 1.5), min_size=3, max_size=3).map(np.array)


@given(pt)
def test_gradient_matches_finite_differences(v):
    out = f(*ad.Dual.variables(v))
    assert ad.value(out) == pytest.approx(f_float(v))
    np.testing.assert_allclose(ad.gradient(out, 3), central_diff(f_float, v), rtol=1e-6, atol=1e-7)


@given(pt)
def test_hessian_matches_gradient_differences(v):
    out = f(*ad.Dual.variables(v, order=2))
    H = ad.hessian(out, 3)
    np.testing.assert_allclose(H, H.T, atol=1e-12)

    def grad(w):
        return ad.gradient(f(*ad.Dual.variables(w)), 3)

    fd = np.array([(grad(v + e) - grad(v - e)) / 2e-6 for e in np.eye(3) * 1e-6])
    np.testing.assert_allclose(H, fd, rtol=1e-5, atol=1e-6)


def test_plain_floats_pass_through():
    assert ad.value(f(0.1, 0.2, 0.3)) == pytest.approx(f_float([0.1, 0.2, 0.3]))
    assert ad.sin(0.5) == math.sin(0.5)


def test_integer_power_and_reciprocal():
    (x,) = ad.Dual.variables([2.0], order=2)
    y = x**-2
    assert ad.value(y) == 0.25
    assert ad.gradient(y, 1)[0] == pytest.approx(-0.25)
    assert ad.hessian(y, 1)[0, 0] == pytest.approx(6 / 16)
    with pytest.raises(ZeroDivisionError):
        ad.Dual.variables([0.0])[0].reciprocal()


def test_invalid_order():
    with pytest.raises(ValueError):
        ad.Dual.variables([1.0], order=3)

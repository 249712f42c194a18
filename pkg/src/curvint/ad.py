"""Forward-mode dual numbers carrying a full gradient and, optionally, a Hessian.

A ``Dual`` holds a value, its gradient with respect to ``n`` seeded inputs and
(when built with ``order=2``) the ``n x n`` Hessian.  Every kernel in the
package is written against the small math namespace at the bottom of this
module, so plain floats and duals flow through the same code.
"""

from __future__ import annotations

import math

import numpy as np


class Dual:
    __slots__ = ("val", "grad", "hess")

    def __init__(self, val, grad, hess=None):
        self.val = float(val)
        self.grad = grad
        self.hess = hess

    # construction -----------------------------------------------------------

    @classmethod
    def variables(cls, values, order=1):
        """Seed one dual per entry of ``values`` with unit tangent vectors."""
        values = [float(v) for v in values]
        n = len(values)
        eye = np.eye(n)
        if order == 1:
            return [cls(v, eye[i].copy()) for i, v in enumerate(values)]
        if order == 2:
            return [cls(v, eye[i].copy(), np.zeros((n, n))) for i, v in enumerate(values)]
        raise ValueError(f"order must be 1 or 2, got {order}")

    def _lift(self, c):
        c = float(c)
        n = self.grad.shape[0]
        return Dual(c, np.zeros(n), None if self.hess is None else np.zeros((n, n)))

    def __repr__(self):
        return f"Dual({self.val!r}, grad={self.grad!r})"

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Dual):
            hess = None if self.hess is None else self.hess + other.hess
            return Dual(self.val + other.val, self.grad + other.grad, hess)
        return Dual(self.val + other, self.grad, self.hess)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Dual):
            hess = None if self.hess is None else self.hess - other.hess
            return Dual(self.val - other.val, self.grad - other.grad, hess)
        return Dual(self.val - other, self.grad, self.hess)

    def __rsub__(self, other):
        return Dual(other - self.val, -self.grad, None if self.hess is None else -self.hess)

    def __neg__(self):
        return Dual(-self.val, -self.grad, None if self.hess is None else -self.hess)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Dual):
            a, b = self, other
            grad = a.grad * b.val + b.grad * a.val
            hess = None
            if a.hess is not None:
                outer = np.outer(a.grad, b.grad)
                hess = a.hess * b.val + b.hess * a.val + outer + outer.T
            return Dual(a.val * b.val, grad, hess)
        other = float(other)
        return Dual(self.val * other, self.grad * other, None if self.hess is None else self.hess * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual):
            return self * other.reciprocal()
        return self * (1.0 / other)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, n):
        if isinstance(n, int) and n >= 0:
            if n == 0:
                return self._lift(1.0)
            if n == 1:
                return self
            if n == 2:
                return self * self
            v = self.val
            return self._unary(v**n, n * v ** (n - 1), n * (n - 1) * v ** (n - 2))
        if isinstance(n, int):
            return (self ** (-n)).reciprocal()
        v = self.val
        return self._unary(v**n, n * v ** (n - 1), n * (n - 1) * v ** (n - 2))

    def reciprocal(self):
        v = self.val
        if v == 0.0:
            raise ZeroDivisionError("dual division by zero value part")
        inv = 1.0 / v
        return self._unary(inv, -inv * inv, 2.0 * inv * inv * inv)

    def _unary(self, f, df, d2f):
        grad = self.grad * df
        hess = None
        if self.hess is not None:
            hess = self.hess * df + np.outer(self.grad, self.grad) * d2f
        return Dual(f, grad, hess)

    # comparisons use the value part only ------------------------------------

    def __lt__(self, other):
        return self.val < value(other)

    def __le__(self, other):
        return self.val <= value(other)

    def __gt__(self, other):
        return self.val > value(other)

    def __ge__(self, other):
        return self.val >= value(other)

    def __abs__(self):
        return -self if self.val < 0 else self

    def __float__(self):
        return self.val


def value(x):
    """Value part of a dual, or the number itself."""
    return x.val if isinstance(x, Dual) else float(x)


def gradient(x, n):
    if isinstance(x, Dual):
        return x.grad
    return np.zeros(n)


def hessian(x, n):
    if isinstance(x, Dual) and x.hess is not None:
        return x.hess
    return np.zeros((n, n))


# math namespace -------------------------------------------------------------


def sin(x):
    if isinstance(x, Dual):
        s, c = math.sin(x.val), math.cos(x.val)
        return x._unary(s, c, -s)
    return math.sin(x)


def cos(x):
    if isinstance(x, Dual):
        s, c = math.sin(x.val), math.cos(x.val)
        return x._unary(c, -s, -c)
    return math.cos(x)


def sinh(x):
    if isinstance(x, Dual):
        s, c = math.sinh(x.val), math.cosh(x.val)
        return x._unary(s, c, s)
    return math.sinh(x)


def cosh(x):
    if isinstance(x, Dual):
        s, c = math.sinh(x.val), math.cosh(x.val)
        return x._unary(c, s, c)
    return math.cosh(x)


def sqrt(x):
    if isinstance(x, Dual):
        r = math.sqrt(x.val)
        return x._unary(r, 0.5 / r, -0.25 / (r * x.val))
    return math.sqrt(x)

"""Curvature-dependent cosine, sine and tangent.

``ck(kappa, x)`` and ``sk(kappa, x)`` interpolate between the circular
(kappa > 0), linear (kappa = 0) and hyperbolic (kappa < 0) cases.  The
branch is picked from the value part of ``x`` only, so dual numbers pass
through either branch unchanged.
"""

from __future__ import annotations

import math

from . import ad
from .errors import DivisionAtPole

SERIES_THRESHOLD = 1e-6
POLE_THRESHOLD = 1e-12


def _use_series(kappa, x):
    v = ad.value(x)
    return abs(kappa * v * v) < SERIES_THRESHOLD


def ck(kappa: float, x):
    """cos(sqrt(k) x), 1, or cosh(sqrt(-k) x) according to the sign of k."""
    kappa = float(kappa)
    if _use_series(kappa, x):
        u = kappa * x * x
        return 1.0 - u * (0.5 - u * (1.0 / 24.0 - u / 720.0))
    if kappa > 0:
        return ad.cos(math.sqrt(kappa) * x)
    return ad.cosh(math.sqrt(-kappa) * x)


def sk(kappa: float, x):
    """sin(sqrt(k) x)/sqrt(k), x, or sinh(sqrt(-k) x)/sqrt(-k)."""
    kappa = float(kappa)
    if _use_series(kappa, x):
        u = kappa * x * x
        return x * (1.0 - u * (1.0 / 6.0 - u * (1.0 / 120.0 - u / 5040.0)))
    if kappa > 0:
        s = math.sqrt(kappa)
        return ad.sin(s * x) * (1.0 / s)
    s = math.sqrt(-kappa)
    return ad.sinh(s * x) * (1.0 / s)


def tk(kappa: float, x):
    """sk/ck; raises DivisionAtPole where |ck| < 1e-12."""
    c = ck(kappa, x)
    if abs(ad.value(c)) < POLE_THRESHOLD:
        raise DivisionAtPole(f"Tk_{kappa}({ad.value(x)!r}) is at a pole")
    return sk(kappa, x) / c

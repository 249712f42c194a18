"""Canonical phase space in geodesic polar coordinates.

Holds the ``Observable`` wrapper (values, gradients and Hessians by dual-number
evaluation), the canonical Poisson bracket, the polar and ambient symplectic
realizations of the generators J_(mu nu), and the map from polar phase space to
ambient positions and momenta.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import ad
from .errors import ChartDegenerate, SingularEvaluation
from .geometry import (
    SpaceSpec,
    _ordered,
    generator_coefficient,
    metric_polar,
    polar_to_ambient,
    prod,
    sphere_direction,
)
from .kappa_trig import ck, sk

SINGULAR_THRESHOLD = 1e-12


def safe_inv(x, what="denominator"):
    """1/x, raising SingularEvaluation when |x| is below 1e-12."""
    if abs(ad.value(x)) < SINGULAR_THRESHOLD:
        raise SingularEvaluation(f"{what} vanishes ({ad.value(x)!r})")
    return 1.0 / x


@dataclass(frozen=True)
class PhasePoint:
    """Polar coordinates q = (r, theta, phi_3..phi_N) and conjugate momenta p."""

    q: tuple
    p: tuple

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(float(v) for v in self.q))
        object.__setattr__(self, "p", tuple(float(v) for v in self.p))
        if len(self.q) != len(self.p):
            raise ValueError("q and p must have the same length")

    @property
    def dim(self) -> int:
        return len(self.q)

    @property
    def state(self) -> np.ndarray:
        return np.array(self.q + self.p)

    @classmethod
    def from_state(cls, state) -> "PhasePoint":
        state = np.asarray(state, dtype=float)
        n = state.shape[0] // 2
        return cls(tuple(state[:n]), tuple(state[n:]))


@dataclass(frozen=True)
class AmbientPhasePoint:
    x: tuple
    p: tuple


class Observable:
    """A scalar phase-space function ``fn(q, p)`` written against the ``ad`` namespace."""

    __slots__ = ("fn", "name")

    def __init__(self, fn: Callable, name: str = ""):
        self.fn = fn
        self.name = name

    def __repr__(self):
        return f"Observable({self.name!r})"

    def __call__(self, s: PhasePoint) -> float:
        return ad.value(self.fn(list(s.q), list(s.p)))

    def value_and_gradient(self, s: PhasePoint):
        n = s.dim
        z = ad.Dual.variables(s.q + s.p)
        out = self.fn(z[:n], z[n:])
        return ad.value(out), np.array(ad.gradient(out, 2 * n), dtype=float)

    def gradient(self, s: PhasePoint) -> np.ndarray:
        """(dF/dq, dF/dp) stacked, length 2N."""
        return self.value_and_gradient(s)[1]

    def derivatives(self, s: PhasePoint):
        """Value, gradient and Hessian in one second-order pass."""
        n = s.dim
        z = ad.Dual.variables(s.q + s.p, order=2)
        out = self.fn(z[:n], z[n:])
        return (
            ad.value(out),
            np.array(ad.gradient(out, 2 * n), dtype=float),
            np.array(ad.hessian(out, 2 * n), dtype=float),
        )

    # algebra -----------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Observable):
            f, g = self.fn, other.fn
            return Observable(lambda q, p: f(q, p) + g(q, p), f"({self.name} + {other.name})")
        f, c = self.fn, other
        return Observable(lambda q, p: f(q, p) + c, f"({self.name} + {c})")

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-1.0) * other

    def __mul__(self, other):
        if isinstance(other, Observable):
            f, g = self.fn, other.fn
            return Observable(lambda q, p: f(q, p) * g(q, p), f"{self.name}*{other.name}")
        f, c = self.fn, float(other)
        return Observable(lambda q, p: c * f(q, p), f"{c}*{self.name}")

    __rmul__ = __mul__


def coordinate(i: int, n: int) -> Observable:
    """The i-th canonical coordinate (0-based) as an observable."""
    return Observable(lambda q, p: q[i], f"q{i}")


def momentum(i: int, n: int) -> Observable:
    return Observable(lambda q, p: p[i], f"p{i}")


def bracket_from_gradients(gf: np.ndarray, gg: np.ndarray) -> float:
    n = gf.shape[0] // 2
    return float(np.dot(gf[:n], gg[n:]) - np.dot(gg[:n], gf[n:]))


def poisson_bracket(f: Observable, g: Observable, s: PhasePoint) -> float:
    """Canonical bracket {f, g} = sum_i df/dq_i dg/dp_i - dg/dq_i df/dp_i."""
    return bracket_from_gradients(f.gradient(s), g.gradient(s))


# polar realization ------------------------------------------------------------


class _PolarFrame:
    """Shared trigonometric data for evaluating every generator at one point.

    With n = (Ck2(theta), Sk2(theta) u_2, ..., Sk2(theta) u_N) and the angular
    combinations w_j = sum_s (du_j/dphi_s) p_phi_s / prod_(m<s) sin^2 phi_m,
    the generators read

        J_01 = Ck2 p_r - Sk2 p_theta / Tk1
        J_0j = k2 Sk2 u_j p_r + (Ck2 u_j p_theta + w_j / Sk2) / Tk1
        J_1j = u_j p_theta + w_j / Tk2
        J_ij = u_i w_j - u_j w_i
    """

    def __init__(self, spec: SpaceSpec, q, p):
        n = spec.dim
        k1, k2 = spec.kappa1, spec.kappa2
        r, theta, phi = q[0], q[1], q[2:]
        self.n = n
        self.k2 = k2
        self.pr, self.pth, self.pphi = p[0], p[1], p[2:]
        self.c1 = ck(k1, r)
        self.s1 = sk(k1, r)
        self.c2 = ck(k2, theta)
        self.s2 = sk(k2, theta)
        self.u = sphere_direction(phi, n)
        self._inv_t1 = None
        self._inv_s2 = None
        self.w = self._angular(phi) if n > 2 else [0.0]

    @property
    def inv_t1(self):
        if self._inv_t1 is None:
            self._inv_t1 = self.c1 * safe_inv(self.s1, "Sk_k1(r)")
        return self._inv_t1

    @property
    def inv_s2(self):
        if self._inv_s2 is None:
            self._inv_s2 = safe_inv(self.s2, "Sk_k2(theta)")
        return self._inv_s2

    def _angular(self, phi):
        n = self.n
        sines = [ad.sin(f) for f in phi]
        cosines = [ad.cos(f) for f in phi]
        # 1 / prod_{m=3}^{s-1} sin^2 phi_m for s = 3..N
        inv_h2 = []
        acc = 1.0
        for s in range(3, n + 1):
            inv_h2.append(acc)
            acc = acc * safe_inv(sines[s - 3] * sines[s - 3], f"sin(phi_{s})")
        w = []
        for j in range(2, n + 1):
            total = 0.0
            # u_j = sin(phi_3)..sin(phi_j) cos(phi_(j+1)) for j < N, all sines for j = N
            base = sines[: j - 2] if j < n else sines
            for s in range(3, j + 1):
                factors = list(base)
                factors[s - 3] = cosines[s - 3]
                if j < n:
                    factors.append(cosines[j - 2])
                total = total + prod(factors) * self.pphi[s - 3] * inv_h2[s - 3]
            if j < n:
                d = -prod(base) * sines[j - 2]
                total = total + d * self.pphi[j - 2] * inv_h2[j - 2]
            w.append(total)
        return w

    def generator(self, mu: int, nu: int):
        if mu == 0 and nu == 1:
            return self.c2 * self.pr - self.s2 * self.pth * self.inv_t1
        if mu == 0:
            uj, wj = self.u[nu - 2], self.w[nu - 2]
            out = self.k2 * self.s2 * uj * self.pr
            inner = self.c2 * uj * self.pth
            if self.n > 2:
                inner = inner + wj * self.inv_s2
            return out + inner * self.inv_t1
        if mu == 1:
            uj = self.u[nu - 2]
            out = uj * self.pth
            if self.n > 2:
                out = out + self.c2 * self.inv_s2 * self.w[nu - 2]
            return out
        return self.u[mu - 2] * self.w[nu - 2] - self.u[nu - 2] * self.w[mu - 2]

    def signed(self, a: int, b: int):
        """J_(ab) with J_(ba) = -J_(ab)."""
        if a < b:
            return self.generator(a, b)
        return -self.generator(b, a)


def polar_frame(spec: SpaceSpec, q, p) -> _PolarFrame:
    return _PolarFrame(spec, q, p)


def generator_polar(spec: SpaceSpec, mu: int, nu: int) -> Observable:
    """J_(mu nu) realized on the polar phase space."""
    _ordered(mu, nu, spec.dim)
    return Observable(lambda q, p: _PolarFrame(spec, q, p).generator(mu, nu), f"J{mu}{nu}")


def generator_pairs(n: int):
    return [(mu, nu) for mu in range(n + 1) for nu in range(mu + 1, n + 1)]


def generator_ambient(spec: SpaceSpec, mu: int, nu: int) -> Callable:
    """J_(mu nu) = x_mu p_nu - c_(mu nu) x_nu p_mu as a function of an AmbientPhasePoint."""
    _ordered(mu, nu, spec.dim)
    c = generator_coefficient(mu, nu, spec.kappa1, spec.kappa2)

    def J(a: AmbientPhasePoint):
        return a.x[mu] * a.p[nu] - c * a.x[nu] * a.p[mu]

    return J


def phase_map(spec: SpaceSpec, s: PhasePoint) -> AmbientPhasePoint:
    """Ambient positions and momenta of a polar phase-space point.

    Velocities come from inverting the diagonal Legendre map; the ambient
    velocity is the directional derivative of the embedding along them.
    p_0 = xdot_0 / k1 is taken in its cancelled form -Sk_k1(r) rdot, which
    stays finite at k1 = 0.
    """
    n = spec.dim
    if len(s.q) != n:
        raise ValueError(f"phase point has dimension {len(s.q)}, space has {n}")
    g = metric_polar(spec, s.q)
    if abs(g[1]) < SINGULAR_THRESHOLD:
        raise ChartDegenerate("Sk_k1(r) = 0: polar chart degenerate at the origin")
    qdot = [s.p[0]]
    for i in range(1, n):
        if abs(g[i]) < SINGULAR_THRESHOLD:
            if s.p[i] != 0.0:
                raise ChartDegenerate(f"metric coefficient {i} vanishes with nonzero momentum")
            qdot.append(0.0)
        else:
            qdot.append(s.p[i] / g[i])
    tangent = [ad.Dual(v, np.array([d])) for v, d in zip(s.q, qdot)]
    xs = polar_to_ambient(spec, tangent)
    x = tuple(ad.value(v) for v in xs)
    xdot = [float(ad.gradient(v, 1)[0]) for v in xs]
    p0 = -sk(spec.kappa1, s.q[0]) * s.p[0]
    p = (p0, xdot[1]) + tuple(spec.kappa2 * v for v in xdot[2:])
    return AmbientPhasePoint(x, p)

"""The spaces S^N_[k1]k2: classification, Weierstrass embedding, polar metric and
the (N+1)-dimensional matrix representation of the isometry algebra."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from . import ad
from .errors import IndexOrder
from .kappa_trig import ck, sk


class SpaceLabel(str, enum.Enum):
    SPHERICAL = "Spherical"
    EUCLIDEAN = "Euclidean"
    HYPERBOLIC = "Hyperbolic"
    ANTI_DE_SITTER = "AntiDeSitter"
    MINKOWSKIAN = "Minkowskian"
    DE_SITTER = "DeSitter"


@dataclass(frozen=True)
class SpaceSpec:
    """Dimension and the two contraction parameters.

    ``kappa1`` is the constant sectional curvature; the metric signature is
    diag(+1, kappa2, ..., kappa2).  ``kappa2 == 0`` (degenerate metric) is
    rejected.
    """

    dim: int
    kappa1: float
    kappa2: float

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {self.dim}")
        if not (math.isfinite(self.kappa1) and math.isfinite(self.kappa2)):
            raise ValueError("contraction parameters must be finite")
        if self.kappa2 == 0:
            raise ValueError("kappa2 = 0 gives a degenerate metric and is not supported")

    @property
    def label(self) -> SpaceLabel:
        return classify(self)

    @property
    def ambient_metric(self) -> np.ndarray:
        """Diagonal of I_k = diag(1, k1, k1 k2, ..., k1 k2)."""
        k1, k2 = self.kappa1, self.kappa2
        return np.array([1.0, k1] + [k1 * k2] * (self.dim - 1))


#: the six representative spaces (kappa1, kappa2) in {+1, 0, -1} x {+1, -1}
SIX_SPACES = [(1.0, 1.0), (0.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (0.0, -1.0), (-1.0, -1.0)]


@dataclass(frozen=True)
class PolarCoords:
    r: float
    theta: float
    phi: tuple = ()

    def __iter__(self):
        yield self.r
        yield self.theta
        yield from self.phi

    def __len__(self):
        return 2 + len(self.phi)


def classify(spec: SpaceSpec) -> SpaceLabel:
    s1 = (spec.kappa1 > 0) - (spec.kappa1 < 0)
    riemannian = spec.kappa2 > 0
    table = {
        (1, True): SpaceLabel.SPHERICAL,
        (0, True): SpaceLabel.EUCLIDEAN,
        (-1, True): SpaceLabel.HYPERBOLIC,
        (1, False): SpaceLabel.ANTI_DE_SITTER,
        (0, False): SpaceLabel.MINKOWSKIAN,
        (-1, False): SpaceLabel.DE_SITTER,
    }
    return table[(s1, riemannian)]


def prod(factors, one=1.0):
    """Product with the empty-product convention (== 1)."""
    out = one
    for f in factors:
        out = out * f
    return out


def sphere_direction(phi: Sequence, n: int) -> list:
    """Components u_2..u_N of the unit vector on S^(N-2) spanned by phi_3..phi_N.

    u_i = sin(phi_3)...sin(phi_i) cos(phi_(i+1)) for i < N and
    u_N = sin(phi_3)...sin(phi_N).  Returned list index 0 holds u_2.
    """
    if len(phi) != n - 2:
        raise ValueError(f"expected {n - 2} polar angles, got {len(phi)}")
    sines = [ad.sin(f) for f in phi]
    cosines = [ad.cos(f) for f in phi]
    u = []
    for i in range(2, n):
        # phi_s lives at phi[s - 3]
        u.append(prod(sines[: i - 2]) * cosines[i - 2])
    u.append(prod(sines))
    return u


def polar_to_ambient(spec: SpaceSpec, q: Sequence) -> list:
    """Weierstrass coordinates (x_0, ..., x_N) of the polar point (r, theta, phi_3..phi_N)."""
    q = list(q)
    n = spec.dim
    if len(q) != n:
        raise ValueError(f"expected {n} polar coordinates, got {len(q)}")
    r, theta, phi = q[0], q[1], q[2:]
    rho = sk(spec.kappa1, r)
    s2 = sk(spec.kappa2, theta)
    x = [ck(spec.kappa1, r), rho * ck(spec.kappa2, theta)]
    x.extend(rho * s2 * u for u in sphere_direction(phi, n))
    return x


def constraint_residual(spec: SpaceSpec, x: Sequence) -> float:
    """Sigma - 1 with Sigma = x0^2 + k1 x1^2 + k1 k2 sum_{j>=2} xj^2."""
    x = np.asarray([ad.value(v) for v in x], dtype=float)
    return float(np.dot(spec.ambient_metric, x * x) - 1.0)


def metric_polar(spec: SpaceSpec, q: Sequence) -> list:
    """Diagonal coefficients (g_rr, g_thth, g_phi3phi3, ..., g_phiNphiN)."""
    q = list(q)
    n = spec.dim
    r, theta, phi = q[0], q[1], q[2:]
    a = spec.kappa2 * sk(spec.kappa1, r) ** 2
    g = [1.0, a]
    b = a * sk(spec.kappa2, theta) ** 2
    for i in range(3, n + 1):
        g.append(b * prod(ad.sin(phi[s - 3]) ** 2 for s in range(3, i)))
    return g


def _ordered(mu: int, nu: int, n: int):
    if not (0 <= mu < nu <= n):
        raise IndexOrder(f"generator indices must satisfy 0 <= mu < nu <= {n}, got ({mu}, {nu})")


def generator_coefficient(mu: int, nu: int, kappa1, kappa2):
    """The factor c_(mu nu) in J_(mu nu) = x_mu p_nu - c x_nu p_mu.

    k1 for (0,1), k1 k2 for (0,j), k2 for (1,j), 1 for (j,k) with j,k >= 2.
    """
    if mu == 0:
        return kappa1 if nu == 1 else kappa1 * kappa2
    if mu == 1:
        return kappa2
    return 1


def rep_matrix(spec: SpaceSpec, mu: int, nu: int) -> np.ndarray:
    """Vector representation J_(mu nu) = -c e_(mu nu) + e_(nu mu)."""
    n = spec.dim
    _ordered(mu, nu, n)
    m = np.zeros((n + 1, n + 1))
    m[mu, nu] = -generator_coefficient(mu, nu, spec.kappa1, spec.kappa2)
    m[nu, mu] = 1.0
    return m


def orbit_point(spec: SpaceSpec, q: Sequence) -> np.ndarray:
    """exp(phi_N J_(N-1,N)) ... exp(phi_3 J_23) exp(theta J_12) exp(r J_01) O by matrix exponentials."""
    q = [float(v) for v in q]
    n = spec.dim
    x = np.zeros(n + 1)
    x[0] = 1.0
    chain = [(q[0], 0, 1), (q[1], 1, 2)] + [(q[s - 1], s - 1, s) for s in range(3, n + 1)]
    for t, mu, nu in chain:
        x = scipy.linalg.expm(t * rep_matrix(spec, mu, nu)) @ x
    return x


def orbit_cross_check(spec: SpaceSpec, q: Sequence) -> float:
    """Max-abs deviation between the group-orbit point and the closed-form embedding."""
    closed = np.array([ad.value(v) for v in polar_to_ambient(spec, q)])
    return float(np.max(np.abs(orbit_point(spec, q) - closed)))

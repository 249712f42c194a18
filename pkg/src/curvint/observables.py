"""Hamiltonians and their integrals as phase-space observables.

Polar forms are the working versions (gradients, brackets, dynamics).  The
``ambient_*`` functions give the same integrals in Weierstrass coordinates and
momenta, evaluated on an ``AmbientPhasePoint``; they exist to cross-check the
polar forms through ``phase_map``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from . import ad
from .errors import BetaNotZero, IndexRange
from .generators import AmbientPhasePoint, Observable, _PolarFrame, generator_ambient, safe_inv
from .geometry import SpaceSpec, sphere_direction
from .kappa_trig import ck, sk, tk


@dataclass(frozen=True)
class Betas:
    """Potential parameters: oscillator strength, N barrier strengths, Kepler coupling."""

    beta0: float = 0.0
    beta: tuple = ()
    k: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "beta", tuple(float(b) for b in self.beta))

    @classmethod
    def zeros(cls, n: int, beta0: float = 0.0, k: float = 0.0) -> "Betas":
        return cls(beta0, (0.0,) * n, k)

    def b(self, i: int) -> float:
        """beta_i with 1-based index; missing entries count as zero."""
        return self.beta[i - 1] if 1 <= i <= len(self.beta) else 0.0

    def with_beta(self, i: int, value: float) -> "Betas":
        beta = list(self.beta)
        beta[i - 1] = value
        return Betas(self.beta0, tuple(beta), self.k)


@dataclass(frozen=True)
class SystemKind:
    """Free, Central(F), SW, GKC(i) or KC."""

    tag: str
    index: int | None = None
    radial: Callable | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.tag not in {"free", "central", "sw", "gkc", "kc"}:
            raise ValueError(f"unknown system {self.tag!r}")
        if self.tag == "gkc" and not self.index:
            raise ValueError("GKC system needs an index i >= 1")


def _check_dim(spec: SpaceSpec, b: Betas):
    if len(b.beta) not in (0, spec.dim):
        raise ValueError(f"expected {spec.dim} barrier strengths, got {len(b.beta)}")


# shared polar pieces --------------------------------------------------------------


def _direction(spec: SpaceSpec, q):
    """Unit direction n with x = (Ck1(r), Sk1(r) n): n_1 = Ck2(theta), n_j = Sk2(theta) u_j."""
    theta = q[1]
    c2, s2 = ck(spec.kappa2, theta), sk(spec.kappa2, theta)
    return [c2] + [s2 * u for u in sphere_direction(q[2:], spec.dim)]


def _barriers(spec: SpaceSpec, b: Betas, q, skip: int | None = None):
    """sum_l beta_l / n_l^2 over l != skip (without the 1/Sk1(r)^2 prefactor)."""
    n = _direction(spec, q)
    total = 0.0
    for l in range(1, spec.dim + 1):
        if l == skip or b.b(l) == 0.0:
            continue
        total = total + b.b(l) * safe_inv(n[l - 1] * n[l - 1], f"x_{l}")
    return total


def kinetic(spec: SpaceSpec) -> Observable:
    """Free Hamiltonian: half the inverse polar metric applied to p."""
    k1, k2, dim = spec.kappa1, spec.kappa2, spec.dim

    def T(q, p):
        inv_a = safe_inv(k2 * sk(k1, q[0]) ** 2, "Sk_k1(r)")
        out = p[0] * p[0] + p[1] * p[1] * inv_a
        if dim > 2:
            inv_b = inv_a * safe_inv(sk(k2, q[1]) ** 2, "Sk_k2(theta)")
            h2 = 1.0
            ang = 0.0
            for i in range(3, dim + 1):
                ang = ang + p[i - 1] * p[i - 1] * safe_inv(h2, f"sin(phi_{i - 1})")
                h2 = h2 * ad.sin(q[i - 1]) ** 2
            out = out + inv_b * ang
        return 0.5 * out

    return Observable(T, "T")


def casimir_polar(spec: SpaceSpec) -> Observable:
    """The quadratic Casimir built from the polar generators."""
    k1, k2, dim = spec.kappa1, spec.kappa2, spec.dim

    def C(q, p):
        f = _PolarFrame(spec, q, p)
        out = k2 * f.generator(0, 1) ** 2
        for j in range(2, dim + 1):
            out = out + f.generator(0, j) ** 2 + k1 * f.generator(1, j) ** 2
        for i in range(2, dim + 1):
            for j in range(i + 1, dim + 1):
                out = out + k1 * k2 * f.generator(i, j) ** 2
        return out

    return Observable(C, "C")


# potentials -----------------------------------------------------------------------


def potential_general(spec: SpaceSpec, F: Callable, b: Betas, skip: int | None = None) -> Observable:
    """F(r) plus the centrifugal barriers beta_l / x_l^2 (l != skip)."""
    _check_dim(spec, b)
    k1 = spec.kappa1

    def U(q, p):
        out = F(q[0])
        bar = _barriers(spec, b, q, skip)
        if not (isinstance(bar, float) and bar == 0.0):
            out = out + bar * safe_inv(sk(k1, q[0]) ** 2, "Sk_k1(r)")
        return out

    return Observable(U, "U")


def radial_sw(spec: SpaceSpec, beta0: float) -> Callable:
    k1 = spec.kappa1
    return lambda r: beta0 * tk(k1, r) ** 2


def radial_kc(spec: SpaceSpec, k: float) -> Callable:
    """-k / Tk_k1(r), written as -k Ck/Sk so the Tk pole is a regular zero."""
    k1 = spec.kappa1
    return lambda r: -k * ck(k1, r) * safe_inv(sk(k1, r), "Sk_k1(r)")


def potential_sw(spec: SpaceSpec, b: Betas) -> Observable:
    return potential_general(spec, radial_sw(spec, b.beta0), b)


def potential_gkc(spec: SpaceSpec, i: int, b: Betas) -> Observable:
    if not 1 <= i <= spec.dim:
        raise IndexRange(f"GKC index must lie in 1..{spec.dim}, got {i}")
    if b.b(i) != 0.0:
        raise BetaNotZero(f"GKC_{i} requires beta_{i} = 0, got {b.b(i)}")
    return potential_general(spec, radial_kc(spec, b.k), b, skip=i)


def hamiltonian(spec: SpaceSpec, system: SystemKind, b: Betas) -> Observable:
    T = kinetic(spec)
    if system.tag == "free":
        return T
    if system.tag == "central":
        H = T + potential_general(spec, system.radial, b)
    elif system.tag == "sw":
        H = T + potential_sw(spec, b)
    elif system.tag == "gkc":
        H = T + potential_gkc(spec, system.index, b)
    else:
        H = T + potential_gkc(spec, 1, Betas.zeros(spec.dim, k=b.k))
    H.name = "H"
    return H


# integrals ------------------------------------------------------------------------


def _chain_range(spec, which, l):
    if which not in ("upper", "lower"):
        raise ValueError("family must be 'upper' or 'lower'")
    if not 2 <= l <= spec.dim:
        raise IndexRange(f"chain index must lie in 2..{spec.dim}, got {l}")


def _chain(spec: SpaceSpec, which: str, l: int, rot: Callable):
    """Sum of rotation-sector terms rot(frame_data, a, b) over the chain's pairs."""
    dim, k2 = spec.dim, spec.kappa2
    terms = []
    if which == "upper" or l == dim:
        terms += [(1.0, 1, j) for j in range(2, l + 1)]
        terms += [(k2, i, j) for i in range(2, l + 1) for j in range(i + 1, l + 1)]
    else:
        lo = dim - l + 1
        terms += [(1.0, i, j) for i in range(lo, dim + 1) for j in range(i + 1, dim + 1)]
    return terms


def integral_J(spec: SpaceSpec, which: str, l: int) -> Observable:
    """J^(l) (upper) or J_(l) (lower): sums of squared rotation generators."""
    _chain_range(spec, which, l)
    terms = _chain(spec, which, l, None)

    def J(q, p):
        f = _PolarFrame(spec, q, p)
        out = 0.0
        for c, a, b in terms:
            out = out + c * f.generator(a, b) ** 2
        return out

    return Observable(J, f"J^({l})" if which == "upper" else f"J_({l})")


def _rot_barrier(spec: SpaceSpec, b: Betas, q, a: int, c: int):
    """Barrier part of I_(ac), 1 <= a < c, as ratios of direction components.

    I_1i: 2 b1 k2^2 x_i^2/x_1^2 + 2 b_i k2 x_1^2/x_i^2
    I_ij: 2 b_i k2 x_j^2/x_i^2 + 2 b_j k2 x_i^2/x_j^2
    """
    k2 = spec.kappa2
    n = _direction(spec, q)
    na, nc = n[a - 1] * n[a - 1], n[c - 1] * n[c - 1]
    ca = k2 * k2 if a == 1 else k2
    out = 0.0
    if b.b(a):
        out = out + 2.0 * b.b(a) * ca * nc * safe_inv(na, f"x_{a}")
    if b.b(c):
        out = out + 2.0 * b.b(c) * k2 * na * safe_inv(nc, f"x_{c}")
    return out


def integral_I(spec: SpaceSpec, b: Betas, pair: tuple) -> Observable:
    """Quadratic integrals I_(mu nu): generator squared plus barrier terms.

    Rotation sector 1 <= mu < nu serves every central potential; the
    translation sector I_(0 nu) belongs to the SW system (uses beta0).
    """
    _check_dim(spec, b)
    mu, nu = pair
    if not (0 <= mu < nu <= spec.dim):
        raise IndexRange(f"invalid pair {pair} for N = {spec.dim}")
    k1, k2 = spec.kappa1, spec.kappa2

    if mu >= 1:

        def I(q, p):
            J = _PolarFrame(spec, q, p).generator(mu, nu)
            return J * J + _rot_barrier(spec, b, q, mu, nu)

    else:

        def I(q, p):
            J = _PolarFrame(spec, q, p).generator(0, nu)
            n = _direction(spec, q)
            # (x_nu / x_0)^2 = Tk1(r)^2 n_nu^2
            ratio = tk(k1, q[0]) ** 2 * n[nu - 1] ** 2
            cf = 1.0 if nu == 1 else k2 * k2
            cb = 1.0 if nu == 1 else k2
            out = J * J
            if b.beta0:
                out = out + 2.0 * b.beta0 * cf * ratio
            if b.b(nu):
                out = out + 2.0 * b.b(nu) * cb * safe_inv(ratio, f"x_{nu}")
            return out

    return Observable(I, f"I{mu}{nu}")


def integral_Q(spec: SpaceSpec, b: Betas, which: str, l: int) -> Observable:
    """Q^(l) / Q_(l): the J-chains with every J_ab^2 replaced by I_ab."""
    _chain_range(spec, which, l)
    _check_dim(spec, b)
    terms = _chain(spec, which, l, None)

    def Q(q, p):
        f = _PolarFrame(spec, q, p)
        out = 0.0
        for c, a, d in terms:
            J = f.generator(a, d)
            out = out + c * (J * J + _rot_barrier(spec, b, q, a, d))
        return out

    return Observable(Q, f"Q^({l})" if which == "upper" else f"Q_({l})")


def q_chain(spec: SpaceSpec, b: Betas) -> list:
    """Q^(2), ..., Q^(N) = Q_(N), Q_(N-1), ..., Q_(2): 2N - 3 functions."""
    dim = spec.dim
    upper = [integral_Q(spec, b, "upper", l) for l in range(2, dim + 1)]
    lower = [integral_Q(spec, b, "lower", k) for k in range(dim - 1, 1, -1)]
    return upper + lower


def j_chain(spec: SpaceSpec) -> list:
    dim = spec.dim
    upper = [integral_J(spec, "upper", l) for l in range(2, dim + 1)]
    lower = [integral_J(spec, "lower", k) for k in range(dim - 1, 1, -1)]
    return upper + lower


def integral_L(spec: SpaceSpec, i: int, b: Betas) -> Observable:
    """The extra Kepler-type integral L_i of the GKC_i system (needs beta_i = 0)."""
    _check_dim(spec, b)
    dim = spec.dim
    if not 1 <= i <= dim:
        raise IndexRange(f"index must lie in 1..{dim}, got {i}")
    if b.b(i) != 0.0:
        raise BetaNotZero(f"L_{i} requires beta_{i} = 0, got {b.b(i)}")
    k1, k2, k = spec.kappa1, spec.kappa2, b.k

    def L(q, p):
        f = _PolarFrame(spec, q, p)
        out = 0.0
        for l in range(1, dim + 1):
            if l != i:
                out = out + f.generator(0, l) * f.signed(l, i)
        n = _direction(spec, q)
        out = out + k * k2 * n[i - 1]
        bar = _barriers(spec, b, q, skip=i)
        if not (isinstance(bar, float) and bar == 0.0):
            # x0 x_i / x_l^2 = n_i / (Tk1(r) n_l^2)
            inv_t1 = ck(k1, q[0]) * safe_inv(sk(k1, q[0]), "Sk_k1(r)")
            out = out - 2.0 * k2 * n[i - 1] * inv_t1 * bar
        return out

    return Observable(L, f"L{i}")


def lrl_vector(spec: SpaceSpec, k: float) -> list:
    """Components L_1..L_N of the Laplace-Runge-Lenz vector of the pure KC system."""
    b = Betas.zeros(spec.dim, k=k)
    return [integral_L(spec, i, b) for i in range(1, spec.dim + 1)]


# ambient forms --------------------------------------------------------------------


def _J(spec, a, mu, nu):
    if mu < nu:
        return generator_ambient(spec, mu, nu)(a)
    return -generator_ambient(spec, nu, mu)(a)


def ambient_I(spec: SpaceSpec, b: Betas, pair: tuple) -> Callable:
    mu, nu = pair
    k2 = spec.kappa2

    def I(a: AmbientPhasePoint):
        x = a.x
        J = _J(spec, a, mu, nu)
        if mu == 0 and nu == 1:
            return J * J + 2 * b.beta0 * x[1] ** 2 / x[0] ** 2 + 2 * b.b(1) * x[0] ** 2 / x[1] ** 2
        if mu == 0:
            return J * J + 2 * b.beta0 * k2**2 * x[nu] ** 2 / x[0] ** 2 + 2 * b.b(nu) * k2 * x[0] ** 2 / x[nu] ** 2
        if mu == 1:
            return J * J + 2 * b.b(1) * k2**2 * x[nu] ** 2 / x[1] ** 2 + 2 * b.b(nu) * k2 * x[1] ** 2 / x[nu] ** 2
        return J * J + 2 * b.b(mu) * k2 * x[nu] ** 2 / x[mu] ** 2 + 2 * b.b(nu) * k2 * x[mu] ** 2 / x[nu] ** 2

    return I


def ambient_L(spec: SpaceSpec, i: int, b: Betas) -> Callable:
    dim, k2 = spec.dim, spec.kappa2

    def L(a: AmbientPhasePoint):
        x = a.x
        out = sum(_J(spec, a, 0, l) * _J(spec, a, l, i) for l in range(1, dim + 1) if l != i)
        radius = math.sqrt(x[1] ** 2 + k2 * sum(v * v for v in x[2:]))
        out += b.k * k2 * x[i] / radius
        out -= 2 * k2 * sum(b.b(l) * x[0] * x[i] / x[l] ** 2 for l in range(1, dim + 1) if l != i)
        return out

    return L


def ambient_potential(spec: SpaceSpec, b: Betas, system: str) -> Callable:
    """The potentials written through the ambient coordinates (flat-limit checks)."""
    k2 = spec.kappa2

    def U(x):
        bar = sum(b.b(l) / x[l] ** 2 for l in range(1, spec.dim + 1) if b.b(l))
        rest = x[1] ** 2 + k2 * sum(v * v for v in x[2:])
        if system == "sw":
            return b.beta0 * rest / x[0] ** 2 + bar
        if system == "kc":
            return -b.k * x[0] / math.sqrt(rest) + bar
        raise ValueError(system)

    return U

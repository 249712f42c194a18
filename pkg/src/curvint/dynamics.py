"""Hamiltonian flow in polar phase space: implicit midpoint and RK4."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence

import numpy as np

from .errors import NewtonDivergence, SingularEvaluation, SingularityApproach
from .generators import Observable, PhasePoint
from .geometry import SpaceSpec
from .kappa_trig import ck, sk

log = logging.getLogger(__name__)

GUARD_DELTA = 1e-4


@dataclass(frozen=True)
class IntegratorConfig:
    method: str = "midpoint"
    dt: float = 1e-3
    steps: int = 1000
    stride: int = 1
    newton_tol: float = 1e-12
    newton_max_iter: int = 25

    def __post_init__(self):
        if self.method not in ("midpoint", "rk4"):
            raise ValueError(f"unknown method {self.method!r}")
        if not self.dt > 0 or self.steps <= 0 or self.stride <= 0:
            raise ValueError("dt, steps and stride must be positive")
        if self.newton_tol < 1e-14:
            raise ValueError("newton_tol must be >= 1e-14")


@dataclass
class Trajectory:
    times: List[float] = field(default_factory=list)
    points: List[PhasePoint] = field(default_factory=list)
    monitors: Dict[str, List[float]] = field(default_factory=dict)

    @property
    def samples(self):
        return list(zip(self.times, self.points))

    def drift(self, name: str) -> float:
        """max_t |I(t) - I(0)| / max(|I(0)|, 1e-300)."""
        v = np.asarray(self.monitors[name])
        return float(np.max(np.abs(v - v[0])) / max(abs(v[0]), 1e-300))


def hamiltonian_vector_field(H: Observable, s: PhasePoint) -> np.ndarray:
    """(dq/dt, dp/dt) = (dH/dp, -dH/dq)."""
    g = H.gradient(s)
    n = s.dim
    return np.concatenate([g[n:], -g[:n]])


def _field_and_jacobian(H: Observable, z: np.ndarray):
    n = z.shape[0] // 2
    _, g, h = H.derivatives(PhasePoint.from_state(z))
    f = np.concatenate([g[n:], -g[:n]])
    jac = np.vstack([h[n:, :], -h[:n, :]])
    return f, jac


def _field(H: Observable, z: np.ndarray) -> np.ndarray:
    return hamiltonian_vector_field(H, PhasePoint.from_state(z))


def midpoint_step(H: Observable, z0: np.ndarray, dt: float, tol: float, max_iter: int) -> np.ndarray:
    """Solve z1 = z0 + dt f((z0 + z1)/2) by Newton's method with the exact Jacobian."""
    eye = np.eye(z0.shape[0])
    z1 = z0 + dt * _field(H, z0)
    for _ in range(max_iter):
        m = 0.5 * (z0 + z1)
        f, jac = _field_and_jacobian(H, m)
        residual = z1 - z0 - dt * f
        delta = np.linalg.solve(eye - 0.5 * dt * jac, residual)
        z1 = z1 - delta
        if not np.all(np.isfinite(z1)):
            break
        if np.max(np.abs(delta)) <= tol * max(1.0, np.max(np.abs(z1))):
            return z1
    raise NewtonDivergence(f"midpoint Newton did not converge in {max_iter} iterations (dt={dt})")


def rk4_step(H: Observable, z0: np.ndarray, dt: float) -> np.ndarray:
    k1 = _field(H, z0)
    k2 = _field(H, z0 + 0.5 * dt * k1)
    k3 = _field(H, z0 + 0.5 * dt * k2)
    k4 = _field(H, z0 + dt * k3)
    return z0 + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)


def _guard_values(spec: SpaceSpec, z: np.ndarray) -> list:
    n = spec.dim
    r, theta, phi = z[0], z[1], z[2:n]
    vals = [("Sk_k1(r) = 0", sk(spec.kappa1, r)), ("Sk_k2(theta) = 0", sk(spec.kappa2, theta))]
    if spec.kappa2 > 0:
        vals.append(("Ck_k2(theta) = 0", ck(spec.kappa2, theta)))
    vals.extend((f"sin(phi_{s}) = 0", np.sin(f)) for s, f in enumerate(phi, start=3))
    return vals


def near_singularity(spec: SpaceSpec, z: np.ndarray, delta: float = GUARD_DELTA, previous=None) -> str | None:
    """Name of the chart singularity within ``delta`` of the state, if any.

    With ``previous`` given, a sign change of a guarded function across the
    step also counts, so large steps cannot jump over a singular locus.
    """
    now = _guard_values(spec, z)
    before = _guard_values(spec, previous) if previous is not None else [(None, None)] * len(now)
    for (name, v), (_, v0) in zip(now, before):
        if abs(v) < delta or (v0 is not None and v * v0 < 0):
            return name
    return None


def integrate(
    H: Observable,
    s0: PhasePoint,
    cfg: IntegratorConfig,
    monitors: Sequence[Observable] = (),
    spec: SpaceSpec | None = None,
) -> Trajectory:
    """Integrate Hamilton's equations, recording H and the monitors every ``stride`` steps.

    With ``spec`` given, steps landing within 1e-4 of a chart singularity abort
    with SingularityApproach carrying the partial trajectory.
    """
    traj = Trajectory()
    named = [(H.name or "H", H)] + [(m.name, m) for m in monitors]
    for name, _ in named:
        traj.monitors[name] = []

    def record(t, z):
        s = PhasePoint.from_state(z)
        traj.times.append(t)
        traj.points.append(s)
        for name, obs in named:
            traj.monitors[name].append(obs(s))

    z = s0.state
    record(0.0, z)
    for step in range(1, cfg.steps + 1):
        try:
            if cfg.method == "rk4":
                z_new = rk4_step(H, z, cfg.dt)
            else:
                try:
                    z_new = midpoint_step(H, z, cfg.dt, cfg.newton_tol, cfg.newton_max_iter)
                except NewtonDivergence:
                    log.debug("Newton failed at step %d, retrying with two half steps", step)
                    half = midpoint_step(H, z, cfg.dt / 2, cfg.newton_tol, cfg.newton_max_iter)
                    z_new = midpoint_step(H, half, cfg.dt / 2, cfg.newton_tol, cfg.newton_max_iter)
        except (SingularEvaluation, ArithmeticError, ValueError, np.linalg.LinAlgError) as exc:
            raise SingularityApproach(f"step {step}: {exc}", traj) from exc
        if spec is not None:
            where = near_singularity(spec, z_new, previous=z)
            if where:
                raise SingularityApproach(f"step {step}: approaching {where}", traj)
        z = z_new
        if step % cfg.stride == 0:
            record(step * cfg.dt, z)
    return traj

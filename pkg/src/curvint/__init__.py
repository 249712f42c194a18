"""Superintegrable Hamiltonians on the spaces S^N_[k1]k2: generators, integrals,
exact and numerical Poisson-bracket certificates, and symplectic integration."""

__version__ = "0.1.0"

from .geometry import SIX_SPACES, PolarCoords, SpaceSpec  # noqa: E402
from .generators import Observable, PhasePoint, generator_polar, phase_map, poisson_bracket  # noqa: E402
from .observables import Betas, SystemKind, hamiltonian  # noqa: E402

__all__ = [
    "SIX_SPACES",
    "Betas",
    "Observable",
    "PhasePoint",
    "PolarCoords",
    "SpaceSpec",
    "SystemKind",
    "generator_polar",
    "hamiltonian",
    "phase_map",
    "poisson_bracket",
]

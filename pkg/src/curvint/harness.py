"""Verification checks: commutation, involution, functional independence, and the
per-proposition runners that assemble them into reports."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, List, Sequence

import numpy as np

from . import __version__
from . import exact_poisson as ep
from .errors import SingularEvaluation
from .generators import (
    Observable,
    PhasePoint,
    bracket_from_gradients,
    generator_pairs,
    generator_polar,
    phase_map,
)
from .geometry import SpaceSpec
from .kappa_trig import ck, sk, tk
from .observables import (
    Betas,
    SystemKind,
    ambient_I,
    ambient_L,
    casimir_polar,
    hamiltonian,
    integral_I,
    integral_J,
    integral_L,
    j_chain,
    kinetic,
    lrl_vector,
    potential_gkc,
    potential_general,
    q_chain,
    radial_kc,
)

PRNG_ALGORITHM = "numpy.random.PCG64"
BRACKET_TOL = 1e-9
CROSS_FORM_TOL = 1e-10
SVD_TOL = 1e-8
MAX_SKIPPED_FRACTION = 0.10
RANK_MAJORITY = 0.90


@dataclass(frozen=True)
class SampleConfig:
    count: int = 20
    seed: int = 0
    delta: float = 1e-3
    r_max: float = 2.0
    theta_max: float = 2.0
    momentum: float = 1.0

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if not self.delta > 0:
            raise ValueError("delta must be positive")


@dataclass
class VerificationReport:
    id: str
    proposition: str
    paper_ref: str
    points: int
    skipped: int
    max_normalized_residual: float
    rank: dict | None
    passed: bool
    seed: int
    reason: str | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        if d["reason"] is None:
            del d["reason"]
        return d


# sampling -------------------------------------------------------------------------


def sample_box(spec: SpaceSpec, cfg: SampleConfig):
    """Coordinate intervals: (r, theta, phi_3, ..., phi_N)."""
    d = cfg.delta
    r_hi = cfg.r_max
    if spec.kappa1 > 0:
        r_hi = min(r_hi, math.pi / (2 * math.sqrt(spec.kappa1)) - d)
    th_hi = cfg.theta_max
    if spec.kappa2 > 0:
        th_hi = math.pi / (2 * math.sqrt(spec.kappa2)) - d
    box = [(d, r_hi), (d, th_hi)]
    for s in range(3, spec.dim + 1):
        box.append((d, (2 * math.pi if s == spec.dim else math.pi) - d))
    return box


def singular_distance(spec: SpaceSpec, q: Sequence[float]) -> float:
    """Smallest distance (in the coordinate itself) to a singular locus of the chart.

    Loci: Sk1(r) = 0, Ck1(r) = 0 (k1 > 0), Sk2(theta) = 0, Ck2(theta) = 0
    (k2 > 0), and every zero of sin and cos of each phi.
    """
    r, theta, phi = q[0], q[1], q[2:]
    dist = [abs(r)]
    if spec.kappa1 > 0:
        period = math.pi / math.sqrt(spec.kappa1)
        dist.append(_lattice_distance(r, period / 2))
    dist.append(abs(theta))
    if spec.kappa2 > 0:
        period = math.pi / math.sqrt(spec.kappa2)
        dist.append(_lattice_distance(theta, period / 2))
    for f in phi:
        dist.append(_lattice_distance(f, math.pi / 2))
    return min(dist)


def _lattice_distance(x: float, step: float) -> float:
    return abs(x - step * round(x / step))


def sample_points(spec: SpaceSpec, cfg: SampleConfig) -> List[PhasePoint]:
    """Seeded uniform samples in the box, rejecting points within delta of a singular locus."""
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    box = sample_box(spec, cfg)
    lo = np.array([b[0] for b in box])
    hi = np.array([b[1] for b in box])
    out = []
    while len(out) < cfg.count:
        q = lo + (hi - lo) * rng.random(spec.dim)
        p = cfg.momentum * (2 * rng.random(spec.dim) - 1)
        if singular_distance(spec, q) < cfg.delta:
            continue
        out.append(PhasePoint(tuple(q), tuple(p)))
    return out


def default_betas(spec: SpaceSpec, seed: int) -> Betas:
    """Seeded nonzero parameters with beta_j in [0.2, 1] and beta0, k in [0.5, 1.5]."""
    rng = np.random.Generator(np.random.PCG64(seed + 7919))
    beta = tuple(0.2 + 0.8 * rng.random(spec.dim))
    return Betas(0.5 + rng.random(), beta, 0.5 + rng.random())


# checks ---------------------------------------------------------------------------


def _evaluate(observables, s):
    vals, grads = [], []
    for obs in observables:
        v, g = obs.value_and_gradient(s)
        if not (math.isfinite(v) and np.all(np.isfinite(g))):
            raise SingularEvaluation(f"{obs.name} is not finite")
        vals.append(v)
        grads.append(g)
    return vals, grads


def _skip_failure(points, skipped):
    if points == 0 or skipped > MAX_SKIPPED_FRACTION * points:
        return "insufficient valid samples"
    return None


def normalized(value: float, gf: np.ndarray, gg: np.ndarray) -> float:
    return abs(value) / max(1.0, float(np.linalg.norm(gf) * np.linalg.norm(gg)))


def check_commutes(
    H: Observable,
    F: Observable,
    pts: Sequence[PhasePoint],
    tol: float = BRACKET_TOL,
    id: str = "commutes",
    proposition: str = "",
    paper_ref: str = "",
    seed: int = 0,
) -> VerificationReport:
    """max over points of |{F, H}| / max(1, |grad F| |grad H|)."""
    worst, skipped = 0.0, 0
    for s in pts:
        try:
            _, (gf, gh) = _evaluate([F, H], s)
        except (SingularEvaluation, ArithmeticError):
            skipped += 1
            continue
        worst = max(worst, normalized(bracket_from_gradients(gf, gh), gf, gh))
    reason = _skip_failure(len(pts), skipped)
    return VerificationReport(id, proposition, paper_ref, len(pts), skipped, worst, None, reason is None and worst < tol, seed, reason)


def check_involution(
    observables: Sequence[Observable],
    pts: Sequence[PhasePoint],
    tol: float = BRACKET_TOL,
    id: str = "involution",
    proposition: str = "",
    paper_ref: str = "",
    seed: int = 0,
) -> VerificationReport:
    """Largest normalized bracket over all pairs of the set and all points."""
    worst, skipped = 0.0, 0
    for s in pts:
        try:
            _, grads = _evaluate(observables, s)
        except (SingularEvaluation, ArithmeticError):
            skipped += 1
            continue
        for a in range(len(grads)):
            for b in range(a + 1, len(grads)):
                worst = max(worst, normalized(bracket_from_gradients(grads[a], grads[b]), grads[a], grads[b]))
    reason = _skip_failure(len(pts), skipped)
    return VerificationReport(id, proposition, paper_ref, len(pts), skipped, worst, None, reason is None and worst < tol, seed, reason)


def equilibrate(m: np.ndarray, sweeps: int = 20) -> np.ndarray:
    """Alternate row and column max-norm scaling (Ruiz).

    Diagonal scalings on either side leave the exact rank unchanged.  Column
    scaling is a rescaling of the phase-space coordinates, which undoes the
    spread in gradient magnitudes near the centrifugal barriers.
    """
    m = np.array(m, dtype=float)
    for _ in range(sweeps):
        rows = np.sqrt(np.max(np.abs(m), axis=1))
        cols = np.sqrt(np.max(np.abs(m), axis=0))
        m = m / np.where(rows > 0, rows, 1.0)[:, None]
        m = m / np.where(cols > 0, cols, 1.0)[None, :]
    return m


def numerical_rank(grads: Sequence[np.ndarray], svd_tol: float = SVD_TOL) -> int:
    """#{sigma > svd_tol * sigma_max} of the equilibrated gradient matrix."""
    m = np.array(grads, dtype=float)
    m = m[np.any(m != 0, axis=1)]
    if m.size == 0:
        return 0
    sv = np.linalg.svd(equilibrate(m), compute_uv=False)
    return int(np.sum(sv > svd_tol * sv[0]))


def check_independence(
    observables: Sequence[Observable],
    pts: Sequence[PhasePoint],
    svd_tol: float = SVD_TOL,
    expected: int | None = None,
    id: str = "independence",
    proposition: str = "",
    paper_ref: str = "",
    seed: int = 0,
) -> VerificationReport:
    """Full rank at >= 90% of the valid points and at the best point."""
    expected = len(observables) if expected is None else expected
    if pts and len(observables) > 2 * pts[0].dim:
        raise ValueError("more functions than phase-space dimensions")
    ranks, skipped = [], 0
    for s in pts:
        try:
            _, grads = _evaluate(observables, s)
        except (SingularEvaluation, ArithmeticError):
            skipped += 1
            continue
        ranks.append(numerical_rank(grads, svd_tol))
    reason = _skip_failure(len(pts), skipped)
    observed = max(set(ranks), key=ranks.count) if ranks else 0
    full = sum(r == len(observables) for r in ranks)
    ok = (
        reason is None
        and bool(ranks)
        and full >= RANK_MAJORITY * len(ranks)
        and max(ranks) == len(observables)
        and len(observables) == expected
    )
    return VerificationReport(
        id, proposition, paper_ref, len(pts), skipped, 0.0, {"expected": expected, "observed": observed}, ok, seed, reason
    )


def check_bracket_relations(spec: SpaceSpec, pts, tol=BRACKET_TOL, seed=0, generators=None) -> VerificationReport:
    """{J_a, J_b} minus the structure-constant right-hand side, for every pair of polar generators."""
    k1, k2 = spec.kappa1, spec.kappa2
    pairs = generator_pairs(spec.dim)
    gens = generators or {pair: generator_polar(spec, *pair) for pair in pairs}
    worst, skipped = 0.0, 0
    for s in pts:
        try:
            vals, grads = _evaluate([gens[p] for p in pairs], s)
        except (SingularEvaluation, ArithmeticError):
            skipped += 1
            continue
        val = dict(zip(pairs, vals))
        grad = dict(zip(pairs, grads))
        for ia, a in enumerate(pairs):
            for b in pairs[ia + 1 :]:
                rhs = ep.expected_bracket(a, b)
                target = 0.0
                if rhs is not None:
                    sign, e1, e2, res = rhs
                    target = sign * k1**e1 * k2**e2 * val[res]
                lhs = bracket_from_gradients(grad[a], grad[b])
                worst = max(worst, normalized(lhs - target, grad[a], grad[b]))
    reason = _skip_failure(len(pts), skipped)
    return VerificationReport(
        "polar-brackets", "1(i)", "generator brackets reproduce the structure constants", len(pts), skipped, worst, None,
        reason is None and worst < tol, seed, reason,
    )


def check_cross_form(
    spec: SpaceSpec,
    polar: Observable,
    ambient: Callable,
    pts,
    tol: float = CROSS_FORM_TOL,
    id: str = "cross-form",
    proposition: str = "",
    paper_ref: str = "",
    seed: int = 0,
) -> VerificationReport:
    """|polar(s) - ambient(phase_map(s))| / max(1, |polar(s)|)."""
    worst, skipped = 0.0, 0
    for s in pts:
        try:
            a = polar(s)
            b = ambient(phase_map(spec, s))
        except (SingularEvaluation, ArithmeticError):
            skipped += 1
            continue
        worst = max(worst, abs(a - b) / max(1.0, abs(a)))
    reason = _skip_failure(len(pts), skipped)
    return VerificationReport(id, proposition, paper_ref, len(pts), skipped, worst, None, reason is None and worst < tol, seed, reason)


def check_identity(lhs: Observable, rhs: Observable, pts, tol=BRACKET_TOL, id="identity", proposition="", paper_ref="", seed=0):
    """|lhs - rhs| / max(1, |lhs|, |rhs|) pointwise."""
    worst, skipped = 0.0, 0
    for s in pts:
        try:
            a, b = lhs(s), rhs(s)
        except (SingularEvaluation, ArithmeticError):
            skipped += 1
            continue
        worst = max(worst, abs(a - b) / max(1.0, abs(a), abs(b)))
    reason = _skip_failure(len(pts), skipped)
    return VerificationReport(id, proposition, paper_ref, len(pts), skipped, worst, None, reason is None and worst < tol, seed, reason)


def exact_report(report: ep.BracketReport, id: str, proposition: str, paper_ref: str) -> VerificationReport:
    return VerificationReport(
        id, proposition, paper_ref, report.pairs_checked, 0, 0.0 if report.passed else 1.0, None, report.passed, 0,
        None if report.passed else f"{len(report.failures)} nonzero residual polynomials",
    )


# propositions ---------------------------------------------------------------------


def central_radial(spec: SpaceSpec, seed: int) -> Callable:
    """F(r) = c1 Tk1(r) + c2 Ck1(r) with seeded coefficients."""
    rng = np.random.Generator(np.random.PCG64(seed + 104729))
    c1, c2 = 0.5 + rng.random(), 0.5 + rng.random()
    k1 = spec.kappa1
    return lambda r: c1 * tk(k1, r) + c2 * ck(k1, r)


def _prop1(spec, b, pts, seed, tol=BRACKET_TOL, **_):
    n = spec.dim
    T = kinetic(spec)
    gens = {pair: generator_polar(spec, *pair) for pair in generator_pairs(n)}
    out = [
        exact_report(ep.verify_structure_constants(n), "exact-brackets", "1(i)", "ambient generator brackets, identically in k1, k2"),
        exact_report(ep.verify_casimir(n), "exact-casimir", "1(i)", "Casimir is central, identically in k1, k2"),
        exact_report(ep.verify_vector_rep(n), "exact-vector-rep", "1(i)", "matrix representation preserves I_k and closes"),
        check_bracket_relations(spec, pts, tol=tol, seed=seed, generators=gens),
        check_identity(2 * spec.kappa2 * T, casimir_polar(spec), pts, tol=tol, id="casimir-kinetic", proposition="1(ii)",
                       paper_ref="2 k2 T equals the Casimir", seed=seed),
    ]
    subs = [
        check_commutes(T, J, pts, tol=tol, proposition="1(ii)", paper_ref="generators commute with T", seed=seed)
        for J in gens.values()
    ]
    failing = [r for r in subs if not r.passed]
    worst = failing[0] if failing else max(subs, key=lambda r: r.max_normalized_residual)
    worst.id = "generators-T"
    out.append(worst)
    return out


def _prop2(spec, b, pts, seed, tol=BRACKET_TOL, **_):
    n = spec.dim
    T = kinetic(spec)
    upper = [integral_J(spec, "upper", l) for l in range(2, n + 1)]
    lower = [integral_J(spec, "lower", k) for k in range(n, 1, -1)]
    out = [
        check_involution(upper + [T], pts, tol=tol, id="upper-J-chain", proposition="2(i)", paper_ref="upper J-chain and T in involution", seed=seed),
        check_involution(lower + [T], pts, tol=tol, id="lower-J-chain", proposition="2(i)", paper_ref="lower J-chain and T in involution", seed=seed),
    ]
    chain = j_chain(spec)
    for j in range(1, n + 1):
        out.append(check_independence(chain + [generator_polar(spec, 0, j), T], pts, expected=2 * n - 1,
                                      id=f"rank-J0{j}", proposition="2(ii)", paper_ref="J-chain, J_0j and T independent", seed=seed))
    return out


def _prop3(spec, b, pts, seed, tol=BRACKET_TOL, **_):
    n = spec.dim
    F = central_radial(spec, seed)
    H = kinetic(spec) + potential_general(spec, F, b)
    upper = _q_family(spec, b, "upper")
    lower = _q_family(spec, b, "lower")
    out = [
        check_involution(upper + [H], pts, tol=tol, id="upper-Q-chain", proposition="3(i)", paper_ref="upper Q-chain and H in involution", seed=seed),
        check_involution(lower + [H], pts, tol=tol, id="lower-Q-chain", proposition="3(i)", paper_ref="lower Q-chain and H in involution", seed=seed),
        check_independence(q_chain(spec, b) + [H], pts, expected=2 * n - 2, id="rank-Q-H", proposition="3(ii)",
                           paper_ref="Q-chain and H independent", seed=seed),
    ]
    for mu in range(1, n + 1):
        for nu in range(mu + 1, n + 1):
            out.append(check_cross_form(spec, integral_I(spec, b, (mu, nu)), ambient_I(spec, b, (mu, nu)), pts,
                                        id=f"cross-I{mu}{nu}", proposition="3", paper_ref="rotation integrals, ambient vs polar", seed=seed))
    return out


def _q_family(spec, b, which):
    from .observables import integral_Q

    n = spec.dim
    if which == "upper":
        return [integral_Q(spec, b, "upper", l) for l in range(2, n + 1)]
    return [integral_Q(spec, b, "lower", k) for k in range(n, 1, -1)]


def _prop4(spec, b, pts, seed, tol=BRACKET_TOL, **_):
    n = spec.dim
    H = hamiltonian(spec, SystemKind("sw"), b)
    out = []
    chain = q_chain(spec, b)
    for mu in range(1, n + 1):
        I0 = integral_I(spec, b, (0, mu))
        out.append(check_commutes(H, I0, pts, tol=tol, id=f"I0{mu}-H", proposition="4(i)", paper_ref="I_0mu commute with H_SW", seed=seed))
        out.append(check_independence(chain + [I0, H], pts, expected=2 * n - 1, id=f"rank-I0{mu}", proposition="4(ii)",
                                      paper_ref="Q-chain, I_0j and H_SW independent", seed=seed))
        out.append(check_cross_form(spec, I0, ambient_I(spec, b, (0, mu)), pts, id=f"cross-I0{mu}", proposition="4",
                                    paper_ref="translation integrals, ambient vs polar", seed=seed))
    out.append(check_involution(_q_family(spec, b, "upper") + [H], pts, tol=tol, id="upper-Q-chain", proposition="4",
                                paper_ref="upper Q-chain and H_SW in involution", seed=seed))
    return out


def _indices(i, n):
    return [i] if i else list(range(1, n + 1))


def _prop5(spec, b, pts, seed, tol=BRACKET_TOL, i=None, **_):
    n = spec.dim
    out = []
    for ii in _indices(i, n):
        bi = b.with_beta(ii, 0.0)
        H = hamiltonian(spec, SystemKind("gkc", ii), bi)
        L = integral_L(spec, ii, bi)
        out.append(check_commutes(H, L, pts, tol=tol, id=f"L{ii}-H_GKC{ii}", proposition="5(i)", paper_ref="L_i commutes with H_GKC_i", seed=seed))
        out.append(check_independence(q_chain(spec, bi) + [L, H], pts, expected=2 * n - 1, id=f"rank-L{ii}",
                                      proposition="5(ii)", paper_ref="Q-chain, L_i and H_GKC_i independent", seed=seed))
        out.append(check_cross_form(spec, L, ambient_L(spec, ii, bi), pts, id=f"cross-L{ii}", proposition="5",
                                    paper_ref="L_i, ambient vs polar", seed=seed))
    return out


def _prop6(spec, b, pts, seed, tol=BRACKET_TOL, i=None, j=None, **_):
    n = spec.dim
    out = []
    for ii in _indices(i, n):
        for jj in ([j] if j else [x for x in range(1, n + 1) if x != ii]):
            bij = b.with_beta(ii, 0.0).with_beta(jj, 0.0)
            H = hamiltonian(spec, SystemKind("gkc", ii), bij)
            chain = q_chain(spec, bij)
            for idx in (ii, jj):
                L = integral_L(spec, idx, bij)
                out.append(check_commutes(H, L, pts, tol=tol, id=f"GKC{ii}-beta{jj}=0-L{idx}", proposition="6(i)",
                                          paper_ref="L_i and L_j commute with H_GKC_i when beta_j = 0", seed=seed))
                out.append(check_independence(chain + [L, H], pts, expected=2 * n - 1, id=f"GKC{ii}-beta{jj}=0-rank-L{idx}",
                                              proposition="6(ii)", paper_ref="Q-chain, L and H_GKC_i independent", seed=seed))
    return out


def _prop7(spec, b, pts, seed, tol=BRACKET_TOL, **_):
    n = spec.dim
    b0 = Betas.zeros(n, k=b.k)
    H = hamiltonian(spec, SystemKind("kc"), b0)
    U_kc = potential_general(spec, radial_kc(spec, b.k), b0)
    out = []
    for ii in range(1, n + 1):
        out.append(check_identity(potential_gkc(spec, ii, b0), U_kc, pts, tol=1e-14, id=f"GKC{ii}-reduces",
                                  proposition="7(i)", paper_ref="GKC potentials reduce to KC when all beta vanish", seed=seed))
    chain = q_chain(spec, b0)
    for ii, L in enumerate(lrl_vector(spec, b.k), start=1):
        out.append(check_commutes(H, L, pts, tol=tol, id=f"LRL{ii}-H_KC", proposition="7(ii)", paper_ref="LRL components commute with H_KC", seed=seed))
        out.append(check_independence(chain + [L, H], pts, expected=2 * n - 1, id=f"rank-LRL{ii}", proposition="7(iii)",
                                      paper_ref="Q-chain, L_i and H_KC independent", seed=seed))
    return out


PROPOSITIONS = {1: _prop1, 2: _prop2, 3: _prop3, 4: _prop4, 5: _prop5, 6: _prop6, 7: _prop7}


def run_proposition(
    spec: SpaceSpec, prop: int, b: Betas | None, cfg: SampleConfig, i=None, j=None, tol: float = BRACKET_TOL
) -> List[VerificationReport]:
    """All sub-checks of one proposition on seeded sample points."""
    if prop not in PROPOSITIONS:
        raise ValueError(f"proposition must be 1..7, got {prop}")
    b = b or default_betas(spec, cfg.seed)
    pts = sample_points(spec, cfg)
    return PROPOSITIONS[prop](spec, b, pts, cfg.seed, tol=tol, i=i, j=j)


# negative controls ----------------------------------------------------------------


def mutated_generator_report(n: int) -> VerificationReport:
    """Exact certificate with one sign flipped inside J_12; must fail."""

    def realize(mu, nu):
        J = ep.realize_generator(n, mu, nu)
        if (mu, nu) == (1, 2):
            X, P = ep.ParamPoly.x, ep.ParamPoly.p
            J = X(n, 1) * P(n, 2) + ep.ParamPoly.k2(n) * X(n, 2) * P(n, 1)
        return J

    return exact_report(ep.verify_structure_constants(n, realize), "control-mutated-generator", "control",
                        "sign-flipped generator term must break the brackets")


def forbidden_beta_report(spec: SpaceSpec, b: Betas, i: int, pts, seed=0) -> VerificationReport:
    """H_GKC_i with beta_i switched on, against L_i; must fail."""
    bad = b.with_beta(i, b.b(i) or 0.5)
    H = kinetic(spec) + potential_general(spec, radial_kc(spec, b.k), bad)
    L = integral_L(spec, i, bad.with_beta(i, 0.0))
    return check_commutes(H, L, pts, id=f"control-beta{i}-nonzero", proposition="control",
                          paper_ref="beta_i != 0 must break the L_i integral", seed=seed)


def duplicated_rank_report(spec: SpaceSpec, pts, seed=0) -> VerificationReport:
    chain = j_chain(spec)
    T = kinetic(spec)
    J = generator_polar(spec, 0, 1)
    return check_independence(chain + [J, T, T], pts, id="control-duplicate", proposition="control",
                              paper_ref="a repeated function cannot be independent", seed=seed)


def noncommuting_pair_report(spec: SpaceSpec, pts, seed=0) -> VerificationReport:
    return check_involution([generator_polar(spec, 0, 1), generator_polar(spec, 1, 2)], pts, id="control-J01-J12",
                            proposition="control", paper_ref="{J01, J12} = -J02 is not zero", seed=seed)


# JSON --------------------------------------------------------------------------------


def report_document(spec: SpaceSpec, system: str, reports: Sequence[VerificationReport]) -> dict:
    return {
        "version": __version__,
        "prng": PRNG_ALGORITHM,
        "spec": {"dim": spec.dim, "k1": spec.kappa1, "k2": spec.kappa2},
        "system": system,
        "checks": [r.to_dict() for r in reports],
        "overall_pass": all(r.passed for r in reports),
    }


# dynamics scenarios ------------------------------------------------------------------


@dataclass(frozen=True)
class Scenario:
    """Initial data, Hamiltonian and certified integrals for one conservation run."""

    spec: SpaceSpec
    system: str
    betas: Betas
    start: PhasePoint
    hamiltonian: Observable
    monitors: tuple


def _bounded_argmin(f, lo, hi):
    from scipy.optimize import minimize_scalar

    return float(minimize_scalar(f, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12}).x)


def dynamics_scenario(spec: SpaceSpec, system: str) -> Scenario:
    """Near-equilibrium initial data for the N = 2 SW and KC conservation runs.

    The implicit midpoint rule conserves quadratic integrals only up to O(dt^2)
    oscillations, so the data sit close to a relative equilibrium (a circular
    orbit, or the bottom of the effective radial well) where those oscillations
    are small.  Lorentzian signatures (k2 < 0) make the p_theta^2 term attractive,
    hence beta_1 > 0 with a small negative beta_2 there to keep theta bounded.
    """
    if spec.dim != 2:
        raise ValueError("scenarios are defined for N = 2")
    k1, k2 = spec.kappa1, spec.kappa2
    if system == "sw":
        beta = (0.01, 0.01) if k2 > 0 else (0.2, -0.01)
        b = Betas(0.05, beta, 0.0)
        V = lambda th: beta[0] / ck(k2, th) ** 2 + beta[1] / sk(k2, th) ** 2  # noqa: E731
        th = _bounded_argmin(V, 0.05, 1.5) if k2 > 0 else _bounded_argmin(lambda t: -V(t), 0.05, 3.0)
        A = V(th)
        radial = lambda r: A / sk(k1, r) ** 2 + b.beta0 * tk(k1, r) ** 2  # noqa: E731
        r = _bounded_argmin(radial, 0.05, 1.5 if k1 > 0 else 3.0)
        start = PhasePoint((r, th), (0.03, 0.01))
        monitors = q_chain(spec, b) + [integral_I(spec, b, (0, j)) for j in (1, 2)]
    elif system == "kc":
        if k2 > 0:
            rc = 1.2
            p_theta = 0.12 * sk(k1, rc) ** 2
            b = Betas.zeros(2, k=p_theta**2 / tk(k1, rc))
            start = PhasePoint((rc, 0.15), (0.02, p_theta))
        else:
            b = Betas.zeros(2, k=0.02)
            start = PhasePoint((1.2, 0.5), (0.1, 0.02))
        monitors = q_chain(spec, b) + lrl_vector(spec, b.k)
    else:
        raise ValueError(f"no scenario for system {system!r}")
    H = hamiltonian(spec, SystemKind(system), b)
    return Scenario(spec, system, b, start, H, tuple(monitors))


def rk4_scenario(spec: SpaceSpec) -> Scenario:
    """A strongly curved SW orbit whose RK4 energy error is well above round-off."""
    b = Betas(20.0, (0.05, 0.05 * spec.kappa2), 0.0)
    H = hamiltonian(spec, SystemKind("sw"), b)
    return Scenario(spec, "sw", b, PhasePoint((0.6, 0.7), (0.5, 0.05)), H, ())


def rk4_order(spec: SpaceSpec, dts=(1e-3, 5e-4, 2.5e-4), horizon: float = 0.5) -> tuple:
    """Least-squares slope of log max|H(t) - H(0)| against log dt, and the errors."""
    from .dynamics import IntegratorConfig, integrate

    sc = rk4_scenario(spec)
    errors = []
    for dt in dts:
        steps = int(round(horizon / dt))
        tr = integrate(sc.hamiltonian, sc.start, IntegratorConfig("rk4", dt, steps), (), spec)
        h = np.asarray(tr.monitors["H"])
        errors.append(float(np.max(np.abs(h - h[0]))))
    slope = float(np.polyfit(np.log(dts), np.log(errors), 1)[0])
    return slope, errors

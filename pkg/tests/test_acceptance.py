"""Acceptance criteria, one test per criterion.

Each test appends a PASS/FAIL line that the terminal summary prints at the end
of the run.
"""

import time
from concurrent.futures import ProcessPoolExecutor

from conftest import ACCEPTANCE_LINES

from curvint import exact_poisson as ep
from curvint.cli import main
from curvint.dynamics import IntegratorConfig, integrate
from curvint.geometry import SIX_SPACES, SpaceSpec
from curvint.harness import (
    SampleConfig,
    check_bracket_relations,
    check_cross_form,
    check_identity,
    default_betas,
    duplicated_rank_report,
    dynamics_scenario,
    forbidden_beta_report,
    mutated_generator_report,
    rk4_order,
    run_proposition,
    sample_points,
)
from curvint.observables import ambient_I, ambient_L, casimir_polar, integral_I, integral_L, kinetic

DIMS = (2, 3, 4, 5)


def record(number, title, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number:2d}: {title}" + (f"  [{detail}]" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def spaces(dims=DIMS):
    return [SpaceSpec(n, k1, k2) for n in dims for k1, k2 in SIX_SPACES]


def failures(reports):
    return [f"{r.id}: res={r.max_normalized_residual:.2e} rank={r.rank} {r.reason or ''}" for r in reports if not r.passed]


def test_criterion_01_exact_structure_constants():
    t = time.perf_counter()
    ok = all(ep.verify_structure_constants(n).passed for n in range(2, 7))
    elapsed = time.perf_counter() - t
    record(1, "exact bracket certificate N=2..6", ok and elapsed < 5.0, f"{elapsed:.2f} s")


def test_criterion_02_exact_casimir():
    t = time.perf_counter()
    ok = all(ep.verify_casimir(n).passed for n in range(2, 7))
    elapsed = time.perf_counter() - t
    record(2, "exact Casimir centrality N=2..6", ok and elapsed < 5.0, f"{elapsed:.2f} s")


def test_criterion_03_polar_brackets():
    t = time.perf_counter()
    worst, bad = 0.0, []
    for spec in spaces():
        rep = check_bracket_relations(spec, sample_points(spec, SampleConfig(20, seed=3)), tol=1e-9)
        worst = max(worst, rep.max_normalized_residual)
        if not rep.passed or rep.points < 20:
            bad.append(spec)
    elapsed = time.perf_counter() - t
    record(3, "polar generator brackets, 24 space/dimension cases", not bad and elapsed < 60.0, f"max {worst:.1e}, {elapsed:.1f} s")


def test_criterion_04_casimir_kinetic():
    worst, ok = 0.0, True
    for spec in spaces():
        rep = check_identity(2 * spec.kappa2 * kinetic(spec), casimir_polar(spec), sample_points(spec, SampleConfig(100, seed=4)), tol=1e-9)
        worst = max(worst, rep.max_normalized_residual)
        ok &= rep.passed and rep.points == 100
    record(4, "2 k2 T = C at 100 points per space", ok, f"max {worst:.1e}")


def _run_props(props, seed):
    bad, worst, count = [], 0.0, 0
    for spec in spaces():
        for prop in props:
            reports = run_proposition(spec, prop, None, SampleConfig(20, seed=seed))
            count += len(reports)
            worst = max([worst] + [r.max_normalized_residual for r in reports])
            bad += [f"N={spec.dim} k=({spec.kappa1:g},{spec.kappa2:g}) prop {prop} {f}" for f in failures(reports)]
    return bad, worst, count


def test_criterion_05_free_motion():
    bad, worst, count = _run_props([2], seed=5)
    record(5, "J-chains in involution, rank 2N-1 with each J_0j", not bad, f"{count} checks, max {worst:.1e}; {bad[:2]}")


def test_criterion_06_general_central_potential():
    bad, worst, count = _run_props([3], seed=6)
    record(6, "Q-chains with H in involution, rank 2N-2", not bad, f"{count} checks, max {worst:.1e}; {bad[:2]}")


def test_criterion_07_sw():
    bad, worst, count = _run_props([4], seed=7)
    record(7, "SW translation integrals, rank 2N-1 per j", not bad, f"{count} checks, max {worst:.1e}; {bad[:2]}")


def test_criterion_08_gkc_and_kc():
    bad, worst, count = _run_props([5, 6, 7], seed=8)
    record(8, "GKC / KC integrals and LRL vector, rank 2N-1", not bad, f"{count} checks, max {worst:.1e}; {bad[:2]}")


def test_criterion_09_cross_form():
    worst, bad = 0.0, []
    for spec in spaces((2, 3, 4)):
        n = spec.dim
        b = default_betas(spec, 9)
        pts = sample_points(spec, SampleConfig(100, seed=9))
        pairs = [(mu, nu) for mu in range(n + 1) for nu in range(mu + 1, n + 1)]
        checks = [check_cross_form(spec, integral_I(spec, b, pr), ambient_I(spec, b, pr), pts, tol=1e-10) for pr in pairs]
        for i in range(1, n + 1):
            bi = b.with_beta(i, 0.0)
            checks.append(check_cross_form(spec, integral_L(spec, i, bi), ambient_L(spec, i, bi), pts, tol=1e-10))
        worst = max([worst] + [c.max_normalized_residual for c in checks])
        bad += [spec for c in checks if not c.passed or c.points != 100]
    record(9, "ambient and polar I, I_0j, L_i agree at 100 points", not bad, f"max {worst:.1e}")


def _conservation_run(args):
    system, k1, k2 = args
    spec = SpaceSpec(2, k1, k2)
    sc = dynamics_scenario(spec, system)
    traj = integrate(sc.hamiltonian, sc.start, IntegratorConfig("midpoint", 1e-3, 10_000, stride=10), sc.monitors, spec)
    return system, k1, k2, max(traj.drift(name) for name in traj.monitors)


def test_criterion_10_dynamics():
    jobs = [(system, k1, k2) for system in ("sw", "kc") for k1, k2 in SIX_SPACES]
    with ProcessPoolExecutor() as pool:
        runs = list(pool.map(_conservation_run, jobs))
    worst = max(d for *_, d in runs)
    drift_ok = all(d < 1e-8 for *_, d in runs)
    slopes = [rk4_order(SpaceSpec(2, k1, k2))[0] for k1, k2 in SIX_SPACES if k2 > 0]
    order_ok = all(3.7 <= s <= 4.3 for s in slopes)
    record(
        10,
        "midpoint drift < 1e-8 (SW, KC, six spaces) and RK4 order 4",
        drift_ok and order_ok,
        f"max drift {worst:.1e}; RK4 slopes {', '.join(f'{s:.2f}' for s in slopes)}",
    )


def test_criterion_11_negative_controls():
    spec = SpaceSpec(3, -1.0, 1.0)
    pts = sample_points(spec, SampleConfig(20, seed=11))
    b = default_betas(spec, 11).with_beta(1, 0.0)
    controls = {
        "sign-flipped generator": mutated_generator_report(3),
        "beta_i != 0 in GKC_i": forbidden_beta_report(spec, b, 1, pts),
        "duplicated observable": duplicated_rank_report(spec, pts),
    }
    caught = [name for name, rep in controls.items() if not rep.passed]
    record(11, "negative controls fail", len(caught) == len(controls), ", ".join(caught))


def test_criterion_12_determinism(tmp_path):
    args = ["verify", "--dim", "3", "--k1", "1", "--k2", "-1", "--prop", "all", "--samples", "10", "--seed", "1234"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    code_a = main(args + ["--out", str(a)])
    code_b = main(args + ["--out", str(b)])
    same = a.read_bytes() == b.read_bytes()
    record(12, "identical seeds give byte-identical JSON", same and code_a == code_b == 0, f"{len(a.read_bytes())} bytes")

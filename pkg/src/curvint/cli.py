"""Command-line entry point: ``curvint verify | simulate | brackets | map``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from typing import List, Sequence

from . import exact_poisson as ep
from . import harness
from .dynamics import IntegratorConfig, integrate
from .errors import SingularityApproach
from .generators import PhasePoint, phase_map
from .geometry import SpaceSpec, polar_to_ambient
from .observables import (
    Betas,
    SystemKind,
    hamiltonian,
    integral_I,
    integral_L,
    lrl_vector,
    q_chain,
)

log = logging.getLogger("curvint")

# propositions run by ``verify --prop all`` for each --system
SYSTEM_PROPS = {
    None: [1, 2, 3, 4, 5, 6, 7],
    "free": [1, 2],
    "central": [3],
    "sw": [3, 4],
    "gkc": [5, 6, 7],
    "kc": [7],
}


def float_list(text: str) -> List[float]:
    return [float(v) for v in text.replace(" ", "").split(",") if v]


def fmt(x: float) -> str:
    return format(x, ".17g")


def _betas(args, spec: SpaceSpec) -> Betas | None:
    if args.beta0 is None and args.beta is None and args.k is None:
        return None
    base = harness.default_betas(spec, args.seed)
    beta = tuple(args.beta) if args.beta is not None else base.beta
    if len(beta) != spec.dim:
        raise SystemExit(f"--beta needs {spec.dim} values, got {len(beta)}")
    return Betas(
        base.beta0 if args.beta0 is None else args.beta0,
        beta,
        base.k if args.k is None else args.k,
    )


def cmd_verify(args) -> int:
    spec = SpaceSpec(args.dim, args.k1, args.k2)
    cfg = harness.SampleConfig(count=args.samples, seed=args.seed)
    b = _betas(args, spec)
    props = SYSTEM_PROPS[args.system] if args.prop == "all" else [int(args.prop)]
    reports = []
    for prop in props:
        reports.extend(harness.run_proposition(spec, prop, b, cfg, i=args.i, j=args.j, tol=args.tol))
    doc = harness.report_document(spec, args.system or "all", reports)
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for r in reports:
        log.info("%-28s %s  residual=%.3e rank=%s", r.id, "PASS" if r.passed else "FAIL", r.max_normalized_residual, r.rank)
    return 0 if doc["overall_pass"] else 1


def simulation_setup(spec: SpaceSpec, system: str, b: Betas, i: int | None):
    """Hamiltonian and the integrals to monitor for ``simulate``."""
    if system == "gkc":
        i = i or 1
        b = b.with_beta(i, 0.0)
        kind = SystemKind("gkc", i)
    else:
        kind = SystemKind(system)
    H = hamiltonian(spec, kind, b)
    monitors = list(q_chain(spec, b)) if system != "free" else []
    if system == "sw":
        monitors += [integral_I(spec, b, (0, j)) for j in range(1, spec.dim + 1)]
    elif system == "gkc":
        monitors.append(integral_L(spec, i, b))
    elif system == "kc":
        monitors += lrl_vector(spec, b.k)
    return H, monitors


def cmd_simulate(args) -> int:
    spec = SpaceSpec(args.dim, args.k1, args.k2)
    if len(args.q0) != spec.dim or len(args.p0) != spec.dim:
        raise SystemExit(f"--q0 and --p0 need {spec.dim} values each")
    if args.system == "central":
        raise SystemExit("simulate supports free, sw, gkc and kc")
    b = _betas(args, spec) or Betas.zeros(spec.dim)
    if args.system == "kc":
        b = Betas.zeros(spec.dim, k=b.k)
    H, monitors = simulation_setup(spec, args.system, b, args.i)
    cfg = IntegratorConfig(args.method, args.dt, args.steps, stride=args.stride)
    status = 0
    try:
        traj = integrate(H, PhasePoint(args.q0, args.p0), cfg, monitors, spec)
    except SingularityApproach as exc:
        log.error("%s", exc)
        traj, status = exc.trajectory, 2
    n = spec.dim
    header = ["t", "r", "theta"] + [f"phi{s}" for s in range(3, n + 1)]
    header += ["p_r", "p_theta"] + [f"p_phi{s}" for s in range(3, n + 1)]
    names = list(traj.monitors)
    header += names
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for k, (t, s) in enumerate(traj.samples):
            w.writerow([fmt(v) for v in (t, *s.q, *s.p)] + [fmt(traj.monitors[m][k]) for m in names])
    finally:
        if args.out:
            out.close()
    for m in names[1:]:
        log.info("drift %-8s %.3e", m, traj.drift(m))
    return status


def cmd_brackets(args) -> int:
    reports = [ep.verify_structure_constants(args.dim), ep.verify_casimir(args.dim), ep.verify_vector_rep(args.dim)]
    labels = ["structure constants", "Casimir centrality", "vector representation"]
    for label, rep in zip(labels, reports):
        print(f"{label:22s} N={args.dim}: {rep.pairs_checked} checks, {len(rep.failures)} nonzero residuals")
    if args.golden:
        with open(args.golden, "w") as fh:
            for rep in reports:
                fh.write(rep.golden_text())
    return 0 if all(r.passed for r in reports) else 1


def cmd_map(args) -> int:
    spec = SpaceSpec(args.dim, args.k1, args.k2)
    if len(args.coords) != spec.dim:
        raise SystemExit(f"--coords needs {spec.dim} values")
    doc = {"spec": {"dim": spec.dim, "k1": spec.kappa1, "k2": spec.kappa2}, "label": spec.label.value}
    if args.with_momenta is not None:
        if len(args.with_momenta) != spec.dim:
            raise SystemExit(f"--with-momenta needs {spec.dim} values")
        a = phase_map(spec, PhasePoint(args.coords, args.with_momenta))
        doc["x"], doc["p"] = list(a.x), list(a.p)
    else:
        doc["x"] = [float(v) for v in polar_to_ambient(spec, args.coords)]
    print(json.dumps(doc, sort_keys=True))
    return 0


def _space_args(p):
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--k1", type=float, required=True)
    p.add_argument("--k2", type=float, required=True)


def _potential_args(p):
    p.add_argument("--i", type=int, default=None, help="GKC index")
    p.add_argument("--beta0", type=float, default=None)
    p.add_argument("--beta", type=float_list, default=None, help="comma-separated beta_1..beta_N")
    p.add_argument("--k", type=float, default=None, help="Kepler coupling")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true")
    parser = argparse.ArgumentParser(prog="curvint", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run proposition checks and write a JSON report")
    _space_args(v)
    v.add_argument("--prop", default="all", choices=[str(k) for k in range(1, 8)] + ["all"])
    v.add_argument("--system", choices=["free", "central", "sw", "gkc", "kc"], default=None)
    _potential_args(v)
    v.add_argument("--j", type=int, default=None, help="second vanishing barrier, with --prop 6")
    v.add_argument("--samples", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=harness.BRACKET_TOL)
    v.add_argument("--out", default=None)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("simulate", parents=[common], help="integrate a trajectory and write CSV")
    _space_args(s)
    s.add_argument("--system", choices=["free", "central", "sw", "gkc", "kc"], required=True)
    _potential_args(s)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--q0", type=float_list, required=True)
    s.add_argument("--p0", type=float_list, required=True)
    s.add_argument("--dt", type=float, default=1e-3)
    s.add_argument("--steps", type=int, default=1000)
    s.add_argument("--stride", type=int, default=1)
    s.add_argument("--method", choices=["midpoint", "rk4"], default="midpoint")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_simulate)

    br = sub.add_parser("brackets", parents=[common], help="exact polynomial certificates")
    br.add_argument("--exact", action="store_true", required=True)
    br.add_argument("--dim", type=int, required=True)
    br.add_argument("--golden", default=None)
    br.set_defaults(func=cmd_brackets)

    m = sub.add_parser("map", parents=[common], help="polar to ambient coordinates (and momenta)")
    _space_args(m)
    m.add_argument("--coords", type=float_list, required=True)
    m.add_argument("--with-momenta", type=float_list, default=None)
    m.set_defaults(func=cmd_map)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""Integrate the SW and KC scenarios on the six planar spaces and tabulate integral drift.

Also fits the RK4 order of the energy error, and shows the O(dt^2) drift of the
midpoint rule on non-equilibrium data.
"""

import argparse
import csv
from pathlib import Path

import numpy as np

from curvint.dynamics import IntegratorConfig, integrate
from curvint.generators import PhasePoint
from curvint.geometry import SIX_SPACES, SpaceSpec
from curvint.harness import dynamics_scenario, rk4_order
from curvint.observables import Betas, SystemKind, hamiltonian, integral_I


def write_csv(path, traj):
    names = list(traj.monitors)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "r", "theta", "p_r", "p_theta"] + names)
        for k, (t, s) in enumerate(traj.samples):
            w.writerow([format(v, ".17g") for v in (t, *s.q, *s.p)] + [format(traj.monitors[m][k], ".17g") for m in names])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=10_000)
    ap.add_argument("--outdir", default="trajectories")
    args = ap.parse_args()
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    print("midpoint, dt = 1e-3: max relative drift over all monitored integrals")
    for system in ("sw", "kc"):
        for k1, k2 in SIX_SPACES:
            spec = SpaceSpec(2, k1, k2)
            sc = dynamics_scenario(spec, system)
            traj = integrate(sc.hamiltonian, sc.start, IntegratorConfig("midpoint", 1e-3, args.steps, stride=10), sc.monitors, spec)
            write_csv(outdir / f"{system}_{spec.label.value}.csv", traj)
            drift = {m: traj.drift(m) for m in traj.monitors}
            worst = max(drift, key=drift.get)
            print(f"  {system:3s} {spec.label.value:13s} {drift[worst]:.2e} ({worst})")

    print("RK4 energy error order (dt = 1e-3, 5e-4, 2.5e-4)")
    for k1, k2 in SIX_SPACES[:3]:
        slope, errors = rk4_order(SpaceSpec(2, k1, k2))
        print(f"  k1={k1:+g}: slope {slope:.3f}  errors {', '.join(f'{e:.1e}' for e in errors)}")

    print("midpoint drift on generic data (I_01 of SW on the sphere)")
    spec = SpaceSpec(2, 1.0, 1.0)
    b = Betas(0.3, (0.1, 0.1))
    H, I = hamiltonian(spec, SystemKind("sw"), b), integral_I(spec, b, (0, 1))
    dts = [2e-2, 1e-2, 5e-3, 2.5e-3]
    drifts = []
    for dt in dts:
        tr = integrate(H, PhasePoint((0.6, 0.7), (0.3, 0.2)), IntegratorConfig("midpoint", dt, int(round(1 / dt))), [I], spec)
        drifts.append(tr.drift("I01"))
        print(f"  dt={dt:.1e}  drift {drifts[-1]:.2e}")
    print(f"  fitted order {np.polyfit(np.log(dts), np.log(drifts), 1)[0]:.2f}")


if __name__ == "__main__":
    main()

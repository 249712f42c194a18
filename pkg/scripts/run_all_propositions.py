"""Run every proposition on every space class and dimension; write one JSON report per case."""

import argparse
import json
import time
from pathlib import Path

from curvint.geometry import SIX_SPACES, SpaceSpec
from curvint.harness import SampleConfig, report_document, run_proposition


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dims", default="2,3,4,5")
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--outdir", default="reports")
    args = ap.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    cfg = SampleConfig(args.samples, args.seed)
    all_ok = True
    for n in map(int, args.dims.split(",")):
        for k1, k2 in SIX_SPACES:
            spec = SpaceSpec(n, k1, k2)
            t = time.perf_counter()
            reports = [r for prop in range(1, 8) for r in run_proposition(spec, prop, None, cfg)]
            doc = report_document(spec, "all", reports)
            name = f"N{n}_k1{k1:+g}_k2{k2:+g}.json"
            (outdir / name).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
            worst = max(r.max_normalized_residual for r in reports)
            status = "ok  " if doc["overall_pass"] else "FAIL"
            print(f"{status} N={n} {spec.label.value:13s} {len(reports):4d} checks  max residual {worst:.1e}  {time.perf_counter() - t:5.1f} s")
            all_ok &= doc["overall_pass"]
    raise SystemExit(0 if all_ok else 1)


if __name__ == "__main__":
    main()

"""Full report for a quartic surface with four nodes at the coordinate points."""

import argparse
import sys
import time

from nodalspec.cli import JobSpec, emit, run
from nodalspec.exactla import Arithmetic

from bench_modular import QUARTIC_SURFACE

NODES = "1:0:0:0\n0:1:0:0\n0:0:1:0\n0:0:0:1\n"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mode", choices=("rational", "modular"), default="modular")
    ap.add_argument("--emit", choices=("table", "json", "csv"), default="table")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    t = time.perf_counter()
    report = run(JobSpec(poly=QUARTIC_SURFACE, points=NODES, arith=Arithmetic(args.mode), workers=args.jobs))
    sys.stdout.buffer.write(emit(report, args.emit))
    print(f"# {time.perf_counter() - t:.1f}s, checks {'pass' if report.ok else 'FAIL'}", file=sys.stderr)


if __name__ == "__main__":
    main()
